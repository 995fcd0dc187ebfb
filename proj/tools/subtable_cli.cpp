// subtable: command-line front end.
//
//   subtable classify  <subset> [--oracle]
//   subtable gens      <subset>
//   subtable check-gb  <subset> [--canonical]
//   subtable verify    <subset> [--degree D] [--oracle]
//   subtable census    <subset> [--degree D]
//   subtable fiber     <subset> (--key JSON | --key-file F | --table CSV)
//   subtable walk      <subset> --table CSV [--steps N] [--seed S] [--tv]
//
// <subset> is a file path ('-' for stdin) or --subset with rows separated
// by '/', e.g. --subset 110/100. Output is text, or JSON with --json.
// Exit codes: 0 ok, 1 failed verification, 2 bad input, 3 over budget.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "subtable/error.hpp"
#include "subtable/io.hpp"

namespace {

using namespace subtable;

constexpr int kExitFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

struct Options {
  std::string input;
  std::string inline_subset;
  bool json = false;
  bool timing = false;
  bool oracle = false;
  bool canonical = false;
  bool tv = false;
  int degree = 4;
  std::uint64_t seed = 1;
  std::uint64_t steps = 10000;
  std::string key;
  std::string key_file;
  std::string table;
};

std::string read_all(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Subset load_subset(const Options& o) {
  if (!o.inline_subset.empty()) {
    std::string grid = o.inline_subset;
    for (char& ch : grid)
      if (ch == '/' || ch == ',' || ch == ';') ch = '\n';
    return parse_subset(grid);
  }
  if (o.input.empty()) throw ParseError("no subset given (pass a file or --subset)");
  return parse_subset(read_all(o.input));
}

CellTable load_table(const std::string& path, const Subset& s) {
  CellTable t = parse_table_csv(read_all(path));
  if (!(t.shape() == s.shape())) throw ParseError("table shape does not match the subset");
  return t;
}

std::string table_inline(const CellTable& t) {
  std::string out;
  for (int i = 1; i <= t.shape().m; ++i) {
    if (i > 1) out += " / ";
    for (int j = 1; j <= t.shape().n; ++j) out += (j > 1 ? " " : "") + std::to_string(t.at(i, j));
  }
  return out;
}

std::string quad_text(const QuadGen& q) {
  return "x" + std::to_string(q.i) + std::to_string(q.l) + "*x" + std::to_string(q.j) + std::to_string(q.k) + " - x" +
         std::to_string(q.i) + std::to_string(q.k) + "*x" + std::to_string(q.j) + std::to_string(q.l);
}

std::string perm_text(const std::vector<int>& p) {
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) out += (k ? " " : "") + std::to_string(k + 1) + "->" + std::to_string(p[k]);
  return out;
}

void print_classification(std::ostream& out, const Classification& c) {
  out << "classification: " << verdict(c) << "\n";
  if (c.triangular) {
    out << "  triangular witness: rows " << perm_text(c.triangular->row_perm) << "; cols "
        << perm_text(c.triangular->col_perm) << "\n";
  }
  if (c.block_diagonal) {
    out << "  block witness: r=" << c.block_diagonal->r << " c=" << c.block_diagonal->c << "; rows "
        << perm_text(c.block_diagonal->perms.row_perm) << "; cols " << perm_text(c.block_diagonal->perms.col_perm)
        << "\n";
  }
}

void print_gb(std::ostream& out, const BuchbergerReport& r) {
  out << "buchberger: " << (r.pass ? "pass" : "FAIL") << " (checked " << r.checked_pairs << " pairs, skipped "
      << r.skipped_coprime << " coprime)\n";
  if (r.failure) {
    out << "  pair (" << r.failure->first << "," << r.failure->second << ") leaves "
        << table_inline(r.failure->remainder.plus()) << "  -  " << table_inline(r.failure->remainder.minus()) << "\n";
  }
}

void print_census(std::ostream& out, const std::vector<CensusRow>& rows) {
  out << "census (degree: standard / fibers):\n";
  for (const CensusRow& row : rows) {
    out << "  " << row.degree << ": " << row.standard_count << " / " << row.fiber_count
        << (row.balanced() ? "" : "  (unbalanced)") << "\n";
  }
}

void print_disconnected(std::ostream& out, const DisconnectedFiber& d) {
  out << "  degree " << d.degree << " fiber, " << d.fiber.tables.size() << " tables in " << d.components.size()
      << " components\n";
  for (std::size_t k = 0; k < d.components.size(); ++k) {
    out << "  component " << k + 1 << ":\n";
    for (const CellTable& t : d.components[k]) out << "    " << table_inline(t) << "\n";
  }
}

struct Outcome {
  Json payload;
  std::string text;
  int exit_code = 0;
};

Outcome run_classify(const Options& o) {
  const Subset s = load_subset(o);
  const Classification c = o.oracle ? classify_oracle(s) : classify(s);
  std::ostringstream text;
  print_classification(text, c);
  return {to_json(c), text.str(), 0};
}

Outcome run_gens(const Options& o) {
  const GeneratorSet g = build_generators(load_subset(o));
  std::ostringstream text;
  text << g.gens.size() << " quadratic generators\n";
  for (const QuadGen& q : g.gens) text << "  (" << q.i << "," << q.j << "," << q.k << "," << q.l << ")  " << quad_text(q) << "\n";
  return {to_json(g), text.str(), 0};
}

Outcome run_check_gb(const Options& o) {
  Subset s = load_subset(o);
  if (o.canonical) {
    const Classification c = classify(s);
    if (!c.triangular) throw ParseError("--canonical needs a triangular subset");
    s = apply(*c.triangular, s);
  }
  const MonomialOrder ord = MonomialOrder::default_lex(s.shape());
  const GeneratorSet g = build_generators(s);
  const BuchbergerReport r = buchberger_check(g.binomials(ord), ord);
  std::ostringstream text;
  text << g.gens.size() << " generators\n";
  print_gb(text, r);
  Json payload = to_json(r);
  payload["subset"] = to_json(s);
  payload["generators"] = g.gens.size();
  return {payload, text.str(), r.pass ? 0 : kExitFailure};
}

Outcome run_verify(const Options& o) {
  const Subset s = load_subset(o);
  VerifyOptions vo;
  vo.use_oracle = o.oracle;
  const TheoremReport r = verify_theorem(s, o.degree, vo);
  std::ostringstream text;
  print_classification(text, r.classification);
  if (const TriangularCertificate* cert = r.primary_certificate()) {
    text << "quadratic generators: " << cert->generators.size() << "\n";
    print_gb(text, cert->gb);
    print_census(text, cert->census);
    text << "leading terms squarefree: " << (cert->leading_terms_squarefree ? "yes" : "no") << "\n";
  }
  if (r.block_reduction) {
    text << "block reduction: S' has " << r.block_reduction->reduced.size() << " cells; generators equal: "
         << (r.block_reduction->generators_equal ? "yes" : "no") << "; fibers equal through degree " << r.degree_bound
         << ": " << (r.block_reduction->fiber_partitions_equal ? "yes" : "no") << "\n";
  }
  if (r.neither_witness) {
    if (r.neither_witness->fiber) {
      text << "quadrics do not generate: disconnected fiber found\n";
      print_disconnected(text, *r.neither_witness->fiber);
    } else {
      text << "no disconnected fiber found up to degree " << r.degree_bound << "\n";
    }
  }
  return {to_json(r), text.str(), 0};
}

Outcome run_census(const Options& o) {
  const Subset s = load_subset(o);
  const MonomialOrder ord = MonomialOrder::default_lex(s.shape());
  const std::vector<CensusRow> rows = initial_ideal_census(s, build_generators(s), ord, o.degree);
  Json payload = Json::array();
  for (const CensusRow& row : rows) payload.push_back(to_json(row));
  std::ostringstream text;
  print_census(text, rows);
  return {payload, text.str(), 0};
}

Outcome run_fiber(const Options& o) {
  const Subset s = load_subset(o);
  PiImage key;
  if (!o.table.empty()) {
    key = pi_image(s, load_table(o.table, s));
  } else {
    const std::string raw = !o.key.empty() ? o.key : (!o.key_file.empty() ? read_all(o.key_file) : "");
    if (raw.empty()) throw ParseError("fiber needs --key, --key-file or --table");
    Json j;
    try {
      j = Json::parse(raw);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("invalid fiber key JSON: ") + e.what());
    }
    key = parse_fiber_key(j);
    if (key.row_deg.size() != static_cast<std::size_t>(s.shape().m) ||
        key.col_deg.size() != static_cast<std::size_t>(s.shape().n))
      throw ParseError("fiber key does not match the subset shape");
  }
  const Fiber f = enumerate_fiber(s, key);
  const std::vector<Component> comps = fiber_components(f, MoveSet::from(build_generators(s)));
  Json payload = to_json(f);
  payload["components"] = comps.size();
  std::ostringstream text;
  text << f.tables.size() << " tables, " << comps.size() << " component(s) under the quadratic moves\n";
  for (const CellTable& t : f.tables) text << "  " << table_inline(t) << "\n";
  return {payload, text.str(), 0};
}

Outcome run_walk(const Options& o) {
  const Subset s = load_subset(o);
  if (o.table.empty()) throw ParseError("walk needs --table");
  const CellTable start = load_table(o.table, s);
  const MoveSet moves = MoveSet::from(build_generators(s));
  const WalkTrace trace = random_walk(s, start, moves, o.steps, o.seed);
  Json payload = to_json(trace);
  std::ostringstream text;
  text << "walk: seed " << trace.seed << ", " << trace.steps << " steps, " << trace.visit_counts.size()
       << " distinct tables\n";
  for (const auto& [t, count] : trace.visit_counts) text << "  " << count << "  " << table_inline(t) << "\n";
  if (o.tv) {
    const Fiber f = enumerate_fiber(s, pi_image(s, start));
    const double tv = total_variation_to_uniform(trace, f);
    payload["tv_distance"] = tv;
    payload["fiber_size"] = f.tables.size();
    text << "TV distance to uniform on " << f.tables.size() << " tables: " << tv << "\n";
  }
  return {payload, text.str(), 0};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric ideals of two-way subtable sum problems"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "subset file (grid or JSON), '-' for stdin");
    sub->add_option("--subset", o.inline_subset, "inline subset grid, rows separated by '/'");
    sub->add_flag("--json", o.json, "emit JSON");
    sub->add_flag("--timing", o.timing, "include elapsed time in the report");
  };

  auto* classify_cmd = app.add_subcommand("classify", "triangular / block diagonal recognition");
  auto* gens_cmd = app.add_subcommand("gens", "list the quadratic generators");
  auto* gb_cmd = app.add_subcommand("check-gb", "Buchberger criterion under the default lex order");
  auto* verify_cmd = app.add_subcommand("verify", "full theorem check");
  auto* census_cmd = app.add_subcommand("census", "standard monomials vs fibers per degree");
  auto* fiber_cmd = app.add_subcommand("fiber", "enumerate one fiber");
  auto* walk_cmd = app.add_subcommand("walk", "seeded random walk on a fiber");
  for (auto* sub : {classify_cmd, gens_cmd, gb_cmd, verify_cmd, census_cmd, fiber_cmd, walk_cmd}) add_common(sub);

  classify_cmd->add_flag("--oracle", o.oracle, "exhaustive permutation search");
  gb_cmd->add_flag("--canonical", o.canonical, "permute a triangular subset to staircase form first");
  verify_cmd->add_flag("--oracle", o.oracle, "exhaustive permutation search");
  for (auto* sub : {verify_cmd, census_cmd})
    sub->add_option("--degree", o.degree, "degree bound")->check(CLI::Range(0, 64))->capture_default_str();
  fiber_cmd->add_option("--key", o.key, R"(fiber key JSON {"rows":[..],"cols":[..],"s_sum":k})");
  fiber_cmd->add_option("--key-file", o.key_file, "file holding the fiber key JSON");
  for (auto* sub : {fiber_cmd, walk_cmd}) sub->add_option("--table", o.table, "table CSV");
  walk_cmd->add_option("--steps", o.steps, "number of steps")->capture_default_str();
  walk_cmd->add_option("--seed", o.seed, "generator seed")->capture_default_str();
  walk_cmd->add_flag("--tv", o.tv, "report TV distance to the exact uniform law");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  const auto started = std::chrono::steady_clock::now();
  try {
    Outcome out;
    if (chosen == classify_cmd) out = run_classify(o);
    else if (chosen == gens_cmd) out = run_gens(o);
    else if (chosen == gb_cmd) out = run_check_gb(o);
    else if (chosen == verify_cmd) out = run_verify(o);
    else if (chosen == census_cmd) out = run_census(o);
    else if (chosen == fiber_cmd) out = run_fiber(o);
    else out = run_walk(o);

    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    if (o.json) {
      Json report{{"command", name}, {"payload", out.payload}};
      if (o.timing) report["elapsed_ms"] = elapsed_ms;
      std::cout << report.dump(2) << "\n";
    } else {
      std::cout << out.text;
      if (o.timing) std::cout << "elapsed: " << elapsed_ms << " ms\n";
    }
    return out.exit_code;
  } catch (const ParseError& e) {
    std::cerr << "subtable " << name << ": " << e.what() << "\n";
    return kExitBadInput;
  } catch (const BudgetExceeded& e) {
    std::cerr << "subtable " << name << ": " << e.what() << "\n";
    return kExitBudget;
  } catch (const TheoremViolation& e) {
    std::cerr << "subtable " << name << ": verification failed: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "subtable " << name << ": " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "subtable " << name << ": " << e.what() << "\n";
    return kExitBadInput;
  }
}
