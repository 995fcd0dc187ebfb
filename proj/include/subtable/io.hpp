#pragma once

// Text and JSON formats.
//
//   Subset grid:  m lines of n '0'/'1' characters; blank lines and '#'
//                 comments ignored.
//   Subset JSON:  {"m": int, "n": int, "cells": [[i, j], ...]}, 1-based.
//   Table CSV:    m lines of n nonnegative integers.
//   Fiber key:    {"rows": [...], "cols": [...], "s_sum": int}.
//
// Parsing failures raise ParseError.

#include <string>
#include <string_view>

#include "json.hpp"
#include "subtable/binomial_engine.hpp"
#include "subtable/fiber_lab.hpp"
#include "subtable/subtable_ideal.hpp"
#include "subtable/table_core.hpp"
#include "subtable/theorem.hpp"

namespace subtable {

using Json = nlohmann::json;

Subset parse_subset_grid(std::string_view text);
Subset parse_subset_json(const Json& j);
/// Dispatches on the first non-blank character: '{' means JSON.
Subset parse_subset(std::string_view text);
std::string format_subset_grid(const Subset& s);

CellTable parse_table_csv(std::string_view text);
std::string format_table_csv(const CellTable& t);

PiImage parse_fiber_key(const Json& j);
Json fiber_key_json(const PiImage& key);

Json to_json(const Subset& s);
Json to_json(const CellTable& t);
Json to_json(const PermPair& p);
Json to_json(const Classification& c);
Json to_json(const QuadGen& q);
Json to_json(const GeneratorSet& g);
Json to_json(const MaybeBinomial& b);
Json to_json(const std::vector<ReductionStep>& trace);
Json to_json(const BuchbergerReport& r);
Json to_json(const CensusRow& row);
Json to_json(const Fiber& f);
Json to_json(const DisconnectedFiber& d);
Json to_json(const GenerationResult& g);
Json to_json(const TheoremReport& r);
/// Summary: seed, steps, distinct tables, final table, visit counts.
Json to_json(const WalkTrace& w);

/// One-word verdict: "triangular", "block_diagonal", "both" or "neither".
std::string verdict(const Classification& c);

}  // namespace subtable
