#include "subtable/io.hpp"

#include <charconv>
#include <numeric>
#include <sstream>
#include <vector>

#include "subtable/error.hpp"

namespace subtable {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Lines with comments stripped and blanks dropped.
std::vector<std::string_view> content_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back(line);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

int parse_int(std::string_view field) {
  field = trim(field);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
    throw ParseError("not an integer: '" + std::string(field) + "'");
  return value;
}

int json_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<int> json_int_array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const Json& v : j) out.push_back(json_int(v, what));
  return out;
}

}  // namespace

Subset parse_subset_grid(std::string_view text) {
  std::vector<std::string> rows;
  for (std::string_view line : content_lines(text)) rows.emplace_back(line);
  return Subset::from_rows(rows);
}

Subset parse_subset_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("cells"))
    throw ParseError("subset JSON needs fields m, n and cells");
  const int m = json_int(j["m"], "m");
  const int n = json_int(j["n"], "n");
  if (m < 1 || n < 1) throw ParseError("subset shape must be at least 1x1");
  Subset s{TableShape(m, n)};
  if (!j["cells"].is_array()) throw ParseError("cells must be an array");
  for (const Json& cell : j["cells"]) {
    const std::vector<int> ij = json_int_array(cell, "cell");
    if (ij.size() != 2) throw ParseError("each cell must be [i, j]");
    if (!s.shape().contains(ij[0], ij[1])) throw ParseError("cell outside the table");
    s.set(ij[0], ij[1], true);
  }
  return s;
}

Subset parse_subset(std::string_view text) {
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    Json j;
    try {
      j = Json::parse(body);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("invalid subset JSON: ") + e.what());
    }
    return parse_subset_json(j);
  }
  return parse_subset_grid(text);
}

std::string format_subset_grid(const Subset& s) {
  std::string out;
  for (const std::string& row : s.to_rows()) out += row + "\n";
  return out;
}

CellTable parse_table_csv(std::string_view text) {
  std::vector<std::vector<int>> rows;
  for (std::string_view line : content_lines(text)) {
    std::vector<int> row;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      row.push_back(parse_int(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("table CSV has no rows");
  const std::size_t n = rows.front().size();
  std::vector<int> flat;
  for (const auto& row : rows) {
    if (row.size() != n) throw ParseError("table CSV rows have unequal length");
    for (int v : row) {
      if (v < 0) throw ParseError("table entries must be nonnegative");
      flat.push_back(v);
    }
  }
  return CellTable(TableShape(static_cast<int>(rows.size()), static_cast<int>(n)), std::move(flat));
}

std::string format_table_csv(const CellTable& t) {
  std::ostringstream out;
  for (int i = 1; i <= t.shape().m; ++i) {
    for (int j = 1; j <= t.shape().n; ++j) out << (j > 1 ? "," : "") << t.at(i, j);
    out << "\n";
  }
  return out.str();
}

PiImage parse_fiber_key(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("s_sum"))
    throw ParseError("fiber key needs fields rows, cols and s_sum");
  PiImage key;
  key.row_deg = json_int_array(j["rows"], "rows");
  key.col_deg = json_int_array(j["cols"], "cols");
  if (key.row_deg.empty() || key.col_deg.empty()) throw ParseError("fiber key margins must be nonempty");
  const int degree = std::accumulate(key.row_deg.begin(), key.row_deg.end(), 0);
  key.w_deg = json_int(j["s_sum"], "s_sum");
  key.t_deg = degree - key.w_deg;
  if (!key.consistent()) throw ParseError("fiber key margins and s_sum are inconsistent");
  return key;
}

Json fiber_key_json(const PiImage& key) {
  return Json{{"rows", key.row_deg}, {"cols", key.col_deg}, {"s_sum", key.w_deg}};
}

// ---------------------------------------------------------------------------

Json to_json(const Subset& s) {
  Json cells = Json::array();
  for (const Cell& c : s.members()) cells.push_back({c.i, c.j});
  return Json{{"m", s.shape().m}, {"n", s.shape().n}, {"cells", cells}};
}

Json to_json(const CellTable& t) {
  Json rows = Json::array();
  for (int i = 1; i <= t.shape().m; ++i) {
    Json row = Json::array();
    for (int j = 1; j <= t.shape().n; ++j) row.push_back(t.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const PermPair& p) { return Json{{"row_perm", p.row_perm}, {"col_perm", p.col_perm}}; }

std::string verdict(const Classification& c) {
  if (c.triangular && c.block_diagonal) return "both";
  if (c.triangular) return "triangular";
  if (c.block_diagonal) return "block_diagonal";
  return "neither";
}

Json to_json(const Classification& c) {
  Json out{{"verdict", verdict(c)}, {"triangular", nullptr}, {"block_diagonal", nullptr}};
  if (c.triangular) out["triangular"] = to_json(*c.triangular);
  if (c.block_diagonal) {
    Json b = to_json(c.block_diagonal->perms);
    b["r"] = c.block_diagonal->r;
    b["c"] = c.block_diagonal->c;
    out["block_diagonal"] = b;
  }
  return out;
}

Json to_json(const QuadGen& q) { return Json::array({q.i, q.j, q.k, q.l}); }

Json to_json(const GeneratorSet& g) {
  Json gens = Json::array();
  for (const QuadGen& q : g.gens) gens.push_back(to_json(q));
  return Json{{"subset", to_json(g.subset)}, {"count", g.gens.size()}, {"generators", gens}};
}

Json to_json(const MaybeBinomial& b) {
  if (!b) return nullptr;
  return Json{{"plus", to_json(b->plus())}, {"minus", to_json(b->minus())}};
}

Json to_json(const std::vector<ReductionStep>& trace) {
  Json out = Json::array();
  for (const ReductionStep& step : trace) {
    out.push_back({{"generator_index", step.generator_index},
                   {"term", step.term == ReductionStep::Term::Leading ? "leading" : "trailing"},
                   {"rewritten", to_json(step.rewritten)},
                   {"before", to_json(MaybeBinomial(step.before))},
                   {"after", to_json(step.after)}});
  }
  return out;
}

Json to_json(const BuchbergerReport& r) {
  Json out{{"pass", r.pass},
           {"checked_pairs", r.checked_pairs},
           {"skipped_coprime", r.skipped_coprime},
           {"failure", nullptr}};
  if (r.failure) {
    out["failure"] = {{"pair", {r.failure->first, r.failure->second}},
                      {"remainder", to_json(MaybeBinomial(r.failure->remainder))}};
  }
  return out;
}

Json to_json(const CensusRow& row) {
  return Json{{"degree", row.degree},
              {"standard_count", row.standard_count},
              {"fiber_count", row.fiber_count},
              {"balanced", row.balanced()}};
}

Json to_json(const Fiber& f) {
  Json tables = Json::array();
  for (const CellTable& t : f.tables) tables.push_back(to_json(t));
  return Json{{"key", fiber_key_json(f.key)}, {"size", f.tables.size()}, {"tables", tables}};
}

Json to_json(const DisconnectedFiber& d) {
  Json comps = Json::array();
  for (const Component& c : d.components) {
    Json tables = Json::array();
    for (const CellTable& t : c) tables.push_back(to_json(t));
    comps.push_back(tables);
  }
  return Json{{"degree", d.degree}, {"key", fiber_key_json(d.fiber.key)}, {"components", comps}};
}

Json to_json(const GenerationResult& g) {
  return Json{{"pass", g.pass},
              {"degree_bound", g.degree_bound},
              {"fibers_checked", g.fibers_checked},
              {"witness", g.witness ? to_json(*g.witness) : Json(nullptr)}};
}

namespace {

Json certificate_json(const TriangularCertificate& c) {
  Json gens = Json::array();
  for (const QuadGen& q : c.generators) gens.push_back(to_json(q));
  Json census = Json::array();
  for (const CensusRow& row : c.census) census.push_back(to_json(row));
  return Json{{"canonical", to_json(c.canonical)},
              {"perms", to_json(c.perms)},
              {"generators", gens},
              {"gb", to_json(c.gb)},
              {"census", census},
              {"leading_terms_squarefree", c.leading_terms_squarefree}};
}

}  // namespace

Json to_json(const TheoremReport& r) {
  Json out{{"subset", to_json(r.subset)},
           {"degree_bound", r.degree_bound},
           {"classification", to_json(r.classification)},
           {"gb", nullptr},
           {"census", nullptr},
           {"block_reduction", nullptr},
           {"neither_witness", nullptr}};
  if (const TriangularCertificate* cert = r.primary_certificate()) {
    const Json c = certificate_json(*cert);
    out["gb"] = c["gb"];
    out["census"] = c["census"];
    out["squarefree_initial_ideal"] = cert->leading_terms_squarefree;
    out["quadratic_generators"] = cert->generators.size();
    // Implications of a squarefree, quadratic Groebner basis; not computed.
    out["implied"] = {{"normal", true}, {"koszul", true}};
  }
  if (r.triangular) out["triangular_branch"] = certificate_json(*r.triangular);
  if (r.block_reduction) {
    const BlockReduction& b = *r.block_reduction;
    out["block_reduction"] = {{"r", b.witness.r},
                              {"c", b.witness.c},
                              {"perms", to_json(b.witness.perms)},
                              {"permuted", to_json(b.permuted)},
                              {"reduced", to_json(b.reduced)},
                              {"generators_equal", b.generators_equal},
                              {"fiber_partitions_equal", b.fiber_partitions_equal},
                              {"reduced_branch", certificate_json(b.reduced_certificate)}};
  }
  if (r.neither_witness) {
    const NeitherWitness& n = *r.neither_witness;
    out["neither_witness"] = {{"found", n.fiber.has_value()},
                              {"searched_degree", n.searched_degree},
                              {"fiber", n.fiber ? to_json(*n.fiber) : Json(nullptr)}};
  }
  return out;
}

Json to_json(const WalkTrace& w) {
  Json visits = Json::array();
  for (const auto& [table, count] : w.visit_counts) visits.push_back({{"table", to_json(table)}, {"count", count}});
  return Json{{"seed", w.seed},
              {"steps", w.steps},
              {"distinct_tables", w.visit_counts.size()},
              {"final", to_json(w.final)},
              {"visit_counts", visits}};
}

}  // namespace subtable
