#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <selfsim/boxoracle.hpp>
#include <selfsim/entropy.hpp>
#include <selfsim/ggdc.hpp>
#include <selfsim/kernel.hpp>
#include <selfsim/render.hpp>
#include <selfsim/saturate.hpp>
#include <selfsim/specdsl.hpp>
#include <selfsim/spectral.hpp>

namespace {

using namespace selfsim;
using ordered_json = nlohmann::ordered_json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::KernelOverflow:
    case ErrorCode::BaseOverflow:
    case ErrorCode::PathBudgetExceeded:
    case ErrorCode::BudgetExceeded:
      return 3;
    case ErrorCode::ToleranceNotReached:
      return 4;
    case ErrorCode::VerificationFailed:
      return 5;
    default:
      return 2;
  }
}

struct RunConfig {
  std::string input;    // path or "-" for stdin
  std::string builtin;  // built-in corpus name
  std::string kernel_file;
  std::string tol_text = "1e-9";
  int depth = 10;
  int element = 0;
  int resolution = 0;
  long long budget = 0;  // 0 = per-operation defaults
  std::string json_path, csv_path, dot_path, svg_path, pgm_path;

  long long cap(long long fallback) const { return budget > 0 ? budget : fallback; }
};

void apply_env_budget(RunConfig& cfg) {
  if (cfg.budget > 0) return;  // flag wins
  if (const char* env = std::getenv("SELFSIM_BUDGET")) {
    try {
      cfg.budget = std::stoll(env);
    } catch (...) {
      throw Error(ErrorCode::InvalidArgument, "SELFSIM_BUDGET is not an integer");
    }
  }
}

std::string read_input_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << content;
}

std::string file_stem(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

struct LoadedSet {
  std::string name;
  SetAutomaton raw;
  bool is_builtin = false;
};

LoadedSet load_set(const RunConfig& cfg) {
  if (!cfg.builtin.empty()) {
    GeometricSet s = builtin_set(cfg.builtin);
    return {s.name, SetAutomaton::single_state(s.k, s.d, s.branches), true};
  }
  if (cfg.input.empty())
    throw Error(ErrorCode::InvalidArgument, "no input: pass a .kss file, '-' or --builtin NAME");
  DigitSystemSpec spec = parse_spec(read_input_text(cfg.input));
  spec.name = cfg.input == "-" ? "stdin" : file_stem(cfg.input);
  LoadedSet out{spec.name, validate(spec), false};
  return out;
}

struct Pipeline {
  LoadedSet set;
  SaturatedAutomaton saturated;
  KernelPresentation kernel;
};

Pipeline run_pipeline(const RunConfig& cfg) {
  LoadedSet set = load_set(cfg);
  SaturatedAutomaton sat = saturate(set.raw, cfg.cap(100000));
  KernelOptions opts;
  opts.element_cap = cfg.cap(10000);
  KernelPresentation kp = compute_kernel(sat, opts);
  return {std::move(set), std::move(sat), std::move(kp)};
}

ordered_json log_enclosure_json(const LogEnclosure& e, const std::string& name) {
  return ordered_json::parse(to_json(e, name, -1));
}

int cmd_kernel(const RunConfig& cfg) {
  Pipeline p = run_pipeline(cfg);
  write_output(cfg.json_path, to_json(p.kernel, 2));
  return 0;
}

int cmd_dim(const RunConfig& cfg, bool as_entropy) {
  Pipeline p = run_pipeline(cfg);
  Rat tol = parse_rational(cfg.tol_text);
  LogEnclosure e = as_entropy ? entropy(p.kernel, tol) : dimension(p.kernel, tol);
  ordered_json j;
  j["set"] = p.set.name;
  j["k"] = p.kernel.k;
  j["d"] = p.kernel.d;
  j["elements"] = p.kernel.size();
  j.update(log_enclosure_json(e, as_entropy ? "entropy" : "dimension"));
  if (as_entropy && cfg.depth >= 1) {
    ordered_json table = ordered_json::array();
    CountingAutomaton ca = counting_automaton(p.kernel);
    BigInt prev = word_count(ca, 1);
    for (int depth = 1; depth <= cfg.depth; ++depth) {
      BigInt next = word_count(ca, depth + 1);
      ordered_json row;
      row["p"] = depth;
      row["words"] = prev.str();
      row["direct"] = log_base(prev, p.kernel.k) / depth;
      row["ratio"] = log_base(Rat(next, prev), p.kernel.k);
      table.push_back(row);
      prev = next;
    }
    j["estimates"] = table;
  }
  write_output(cfg.json_path, j.dump(2));
  return e.rho.certified ? 0 : 4;
}

int cmd_count(const RunConfig& cfg) {
  Pipeline p = run_pipeline(cfg);
  CountingAutomaton ca = counting_automaton(p.kernel);
  DeterministicAutomaton raw_dfa = minimize(determinize(p.set.raw));

  std::optional<BoxOracle> oracle;
  if (p.set.is_builtin) oracle.emplace(builtin_set(p.set.name));

  ordered_json rows = ordered_json::array();
  std::ostringstream csv;
  csv << "p,words,raw_words,cubes_X0";
  if (oracle) csv << ",boxes";
  csv << ",direct,ratio\n";
  for (int depth = 0; depth <= cfg.depth; ++depth) {
    BigInt words = word_count(ca, depth);
    BigInt raw_words = prefix_count(raw_dfa, depth);
    BigInt cubes = cube_count(p.kernel, 0, depth);
    ordered_json row;
    row["p"] = depth;
    row["words"] = words.str();
    row["raw_words"] = raw_words.str();
    row["cubes_X0"] = cubes.str();
    csv << depth << "," << words.str() << "," << raw_words.str() << "," << cubes.str();
    if (oracle) {
      BigInt boxes = oracle->count_boxes(depth, cfg.cap(10000000)).count;
      row["boxes"] = boxes.str();
      csv << "," << boxes.str();
    }
    if (depth >= 1) {
      EstimatePair est = entropy_estimate(p.kernel, depth);
      row["direct"] = est.direct;
      row["ratio"] = est.ratio;
      csv << "," << est.direct << "," << est.ratio;
    } else {
      csv << ",,";
    }
    csv << "\n";
    rows.push_back(row);
  }

  if (!cfg.csv_path.empty()) {
    write_output(cfg.csv_path, csv.str());
    return 0;
  }
  ordered_json j;
  j["set"] = p.set.name;
  j["k"] = p.kernel.k;
  j["d"] = p.kernel.d;
  j["elements"] = p.kernel.size();
  ordered_json per = ordered_json::array();
  for (int i = 0; i < p.kernel.size(); ++i)
    per.push_back(cube_count(p.kernel, i, cfg.depth).str());
  j["per_element_at_depth"] = per;
  j["table"] = rows;
  write_output(cfg.json_path, j.dump(2));
  return 0;
}

// re-verification of an exported kernel file: table vs matrix consistency and
// the closure property quotient(X_j, b) == X_table[j][b]
ordered_json verify_kernel_file(const KernelPresentation& kp, bool& ok) {
  ordered_json checks = ordered_json::array();
  auto record = [&](const std::string& name, bool pass, const std::string& detail = "") {
    ordered_json c;
    c["check"] = name;
    c["pass"] = pass;
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(c);
    if (!pass) ok = false;
  };

  bool matrix_ok = kp.matrix == subdivision_matrix(kp);
  record("matrix-matches-table", matrix_ok);

  bool closure_ok = true;
  std::string detail;
  for (int j = 0; j < kp.size() && closure_ok; ++j) {
    const DeterministicAutomaton& elem = kp.elements[static_cast<size_t>(j)];
    for (long long code = 0; code < alphabet_size(kp.k, kp.d) && closure_ok; ++code) {
      DigitTuple b = DigitTuple::from_code(static_cast<int>(code), kp.k, kp.d);
      int recorded = kp.transition(j, b);
      int root = elem.next(elem.initial(), static_cast<int>(code));
      if ((root < 0) != (recorded < 0)) {
        closure_ok = false;
        detail = "element " + std::to_string(j) + " digit " + std::to_string(code) +
                 ": presence mismatch";
        break;
      }
      if (root < 0) continue;
      DeterministicAutomaton quotient = digit_quotient(elem, b);
      if (!language_equal(quotient, kp.elements[static_cast<size_t>(recorded)])) {
        closure_ok = false;
        detail = "element " + std::to_string(j) + " digit " + std::to_string(code) +
                 ": quotient differs from recorded target";
      }
    }
  }
  record("kernel-closure", closure_ok, detail);
  return checks;
}

int cmd_verify(const RunConfig& cfg) {
  Rat tol = parse_rational(cfg.tol_text);
  ordered_json j;
  bool ok = true;

  if (!cfg.kernel_file.empty()) {
    KernelPresentation kp = kernel_from_json(read_input_text(cfg.kernel_file));
    j["kernel_file"] = cfg.kernel_file;
    j["checks"] = verify_kernel_file(kp, ok);
    TheoremReport rep = verify_theorem(kp, tol);
    j["theorem"] = ordered_json::parse(to_json(rep));
    if (!rep.pass) ok = false;
    j["pass"] = ok;
    write_output(cfg.json_path, j.dump(2));
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 5;
  }

  Pipeline p = run_pipeline(cfg);
  j["set"] = p.set.name;
  ordered_json checks = ordered_json::array();
  auto record = [&](const std::string& name, bool pass, ordered_json detail = {}) {
    ordered_json c;
    c["check"] = name;
    c["pass"] = pass;
    if (!detail.is_null()) c["detail"] = detail;
    checks.push_back(c);
    if (!pass) ok = false;
  };

  TheoremReport rep = verify_theorem(p.kernel, tol);
  record("theorem-dimension-equals-entropy", rep.pass, ordered_json::parse(to_json(rep)));

  GgdcGraph g = build_ggdc(p.kernel);
  GgdcValidation gv = validate_ggdc(g);
  record("ggdc-axioms", gv.pass, gv.violations);
  LogEnclosure gd = ggdc_dimension(g, tol);
  bool transfer = !(gd.rho.upper < rep.dim.rho.lower || rep.dim.rho.upper < gd.rho.lower);
  record("ggdc-spectral-transfer", transfer,
         ordered_json{{"rho_graph", to_double(gd.rho.lower)}, {"rho_matrix", to_double(rep.dim.rho.lower)}});

  if (p.set.is_builtin) {
    BoxOracle oracle(builtin_set(p.set.name));
    bool eq = true;
    ordered_json counts = ordered_json::array();
    int pmax = std::min(cfg.depth, 6);
    for (int depth = 0; depth <= pmax; ++depth) {
      BigInt boxes = oracle.count_boxes(depth, cfg.cap(10000000)).count;
      BigInt cubes = cube_count(p.kernel, 0, depth);
      counts.push_back(ordered_json{{"p", depth}, {"boxes", boxes.str()}, {"cubes", cubes.str()}});
      if (boxes != cubes) eq = false;
    }
    record("oracle-box-counts", eq, counts);
  }

  j["checks"] = checks;
  j["pass"] = ok;
  write_output(cfg.json_path, j.dump(2));
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 5;
}

int cmd_ggdc(const RunConfig& cfg) {
  Pipeline p = run_pipeline(cfg);
  GgdcGraph g = build_ggdc(p.kernel);
  if (!cfg.dot_path.empty()) write_output(cfg.dot_path, to_dot(g));
  if (!cfg.json_path.empty()) write_output(cfg.json_path, to_json(g, 2));
  if (cfg.dot_path.empty() && cfg.json_path.empty()) {
    ordered_json j;
    j["set"] = p.set.name;
    j["vertices"] = g.vertices.size();
    j["edges"] = g.edge_count();
    GgdcValidation gv = validate_ggdc(g);
    j["axioms_pass"] = gv.pass;
    j.update(log_enclosure_json(ggdc_dimension(g, parse_rational(cfg.tol_text)), "dimension"));
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_render(const RunConfig& cfg) {
  Pipeline p = run_pipeline(cfg);
  CubeList cubes = level_approximation(p.kernel, cfg.element, cfg.depth, cfg.cap(1000000));
  if (cfg.svg_path.empty() && cfg.pgm_path.empty())
    throw Error(ErrorCode::InvalidArgument, "render needs --svg PATH or --pgm PATH");
  if (!cfg.svg_path.empty()) write_output(cfg.svg_path, render_svg(cubes));
  if (!cfg.pgm_path.empty()) {
    if (cfg.resolution <= 0)
      throw Error(ErrorCode::InvalidArgument, "--pgm requires --res");
    write_output(cfg.pgm_path, render_pgm(cubes, cfg.resolution));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digit-automaton toolkit for k-self-similar subsets of [0,1]^d"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&](CLI::App* sub, bool with_input = true) {
    if (with_input) {
      sub->add_option("input", cfg.input, "input .kss file ('-' for stdin)");
      sub->add_option("--builtin", cfg.builtin, "built-in set name");
    }
    sub->add_option("--tol", cfg.tol_text, "enclosure tolerance (default 1e-9)");
    sub->add_option("-p,--depth", cfg.depth, "depth parameter");
    sub->add_option("--budget", cfg.budget, "override all budget caps");
    sub->add_option("--json", cfg.json_path, "write JSON output to PATH instead of stdout");
  };

  CLI::App* kernel = app.add_subcommand("kernel", "compute the k-kernel presentation");
  add_common(kernel);
  CLI::App* dim = app.add_subcommand("dim", "certified Hausdorff dimension log_k rho(A)");
  add_common(dim);
  CLI::App* ent = app.add_subcommand("entropy", "certified entropy with finite-depth estimators");
  add_common(ent);
  CLI::App* count = app.add_subcommand("count", "exact word and cube counts");
  add_common(count);
  count->add_option("--csv", cfg.csv_path, "write a CSV table to PATH");
  CLI::App* verify = app.add_subcommand("verify", "dimension = entropy plus construction checks");
  add_common(verify);
  verify->add_option("--kernel", cfg.kernel_file, "re-verify an exported kernel JSON file");
  CLI::App* ggdc = app.add_subcommand("ggdc", "graph-directed construction export");
  add_common(ggdc);
  ggdc->add_option("--dot", cfg.dot_path, "write graphviz DOT to PATH");
  CLI::App* render = app.add_subcommand("render", "level-p figures");
  add_common(render);
  render->add_option("--svg", cfg.svg_path, "write SVG to PATH");
  render->add_option("--pgm", cfg.pgm_path, "write binary PGM to PATH");
  render->add_option("--res", cfg.resolution, "PGM resolution (multiple of k^p)");
  render->add_option("--element", cfg.element, "kernel element index (default 0)");

  // depth defaults differ per command
  kernel->callback([&] {});
  CLI11_PARSE(app, argc, argv);

  try {
    apply_env_budget(cfg);
    if (app.got_subcommand(kernel)) return cmd_kernel(cfg);
    if (app.got_subcommand(dim)) return cmd_dim(cfg, false);
    if (app.got_subcommand(ent)) return cmd_dim(cfg, true);
    if (app.got_subcommand(count)) return cmd_count(cfg);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(ggdc)) return cmd_ggdc(cfg);
    if (app.got_subcommand(render)) return cmd_render(cfg);
  } catch (const selfsim::Error& e) {
    std::cerr << "selfsim: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "selfsim: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
