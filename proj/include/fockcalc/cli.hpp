#pragma once

// Batch front end. Every command writes one JSON document (or PASS/FAIL lines
// for `table` and `all`) to `out`; failures also write an error object to `err`.
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fockcalc/acceptance.hpp"
#include "fockcalc/json_io.hpp"

namespace fockcalc::cli {

struct Config {
  std::string command = "all";
  int n = 1;
  bool n_given = false;
  std::string input_a;  // kernel JSON for compose/project, jets JSON for c1/poisson
  std::string input_b;  // second kernel for compose
  std::string output;   // write the JSON here instead of `out`
  std::string csv;      // fock-verify convergence table
  bool literal_l2 = false;
  bool swap = false;  // c1(g, f) instead of c1(f, g)
  bool details = false;
  std::vector<int> p_list{32, 64, 128, 256};
  int D = acceptance::kFockD;
  std::vector<std::string> pairs;  // "f;g"
  double exact_tol = 1e-10;
  double ladder_tol = acceptance::kLadderTol;
  double order_min = acceptance::kOrderLo;
  double order_max = acceptance::kOrderHi;
  double ratio_min = acceptance::kRatioLo;
  double ratio_max = acceptance::kRatioHi;
  double hermitian_tol = 1e-12;
  std::uint64_t seed = kDefaultSeed;
};

/// Raised for a failed check; carries the report already emitted.
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline json read_json_file(const std::string& path, const char* what) {
  if (path.empty()) throw ParseError(std::string("missing input: ") + what);
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Jet2 load_jets(const Config& c) {
  if (c.input_a.empty()) return Jet2::symbolic(c.n);
  Jet2 jets = jet2_from_json(read_json_file(c.input_a, "jets"));
  if (c.n_given && jets.dim() != c.n) throw ParseError("--n disagrees with the jets file");
  return jets;
}

inline LKernelData l_data(const Config& c, int n) {
  return l_kernels(n, c.literal_l2 ? L2Reading::Literal : L2Reading::Standard);
}

inline json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(r, k).real(), m(r, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline Eigen::MatrixXcd numeric_value(const NCPoly& p, const Jet2& jets) {
  const auto& table = jets.numeric();
  const int rank = static_cast<int>(table.begin()->second.rows());
  auto lookup = [&](const JetSymbol& s) -> Eigen::MatrixXcd {
    if (jets.is_zero(s)) return Eigen::MatrixXcd::Zero(rank, rank);
    const auto it = table.find(s);
    if (it == table.end()) throw ParseError("no numeric value for " + jet_to_string(s));
    return it->second;
  };
  return evaluate(p, lookup, rank);
}

inline std::pair<std::string, std::string> split_pair(const std::string& text) {
  const auto cut = text.find(';');
  if (cut == std::string::npos) throw ParseError("pair must read \"f;g\": " + text);
  return {text.substr(0, cut), text.substr(cut + 1)};
}

inline const std::vector<std::string>& default_pairs() {
  static const std::vector<std::string> pairs{"z;zbar", "z+zbar;z*zbar", "z^2+zbar;zbar^2+z*zbar"};
  return pairs;
}

struct Emit {
  const Config& config;
  std::ostream& out;
  void operator()(const json& j) const {
    if (config.output.empty()) {
      out << j.dump() << '\n';
      return;
    }
    std::ofstream f(config.output);
    if (!f) throw ParseError("cannot write " + config.output);
    f << j.dump(2) << '\n';
  }
};

inline int cmd_table(const Config& c, std::ostream& out) {
  bool ok = true;
  const int lo = c.n_given ? c.n : 1;
  const int hi = c.n_given ? c.n : 3;
  for (int n = lo; n <= hi; ++n) {
    for (const auto& line : kernel_table(n)) {
      ok = ok && line.pass;
      out << (line.pass ? "PASS  " : "FAIL  ");
      if (!c.n_given) out << "n=" << n << "  ";
      out << line.identity;
      if (!line.pass) out << "  (" << line.failure << ")";
      out << '\n';
    }
  }
  if (!ok) throw CheckFailed("kernel table identity failed");
  return 0;
}

inline int cmd_compose(const Config& c, const Emit& emit) {
  const KernelPoly f = kernel_from_json(read_json_file(c.input_a, "first kernel (--a)"));
  const KernelPoly g = kernel_from_json(read_json_file(c.input_b, "second kernel (--b)"));
  if (f.dim() != g.dim()) throw ParseError("kernels differ in dimension");
  const KernelPoly k = compose(f, g);
  const bool agrees = k == wick_compose(f, g);
  emit({{"result", kernel_to_json(k)}, {"text", to_string(k)}, {"wick_agrees", agrees}});
  if (!agrees) throw CheckFailed("compose and wick_compose disagree");
  return 0;
}

inline int cmd_project(const Config& c, const Emit& emit) {
  const KernelPoly f = kernel_from_json(read_json_file(c.input_a, "kernel (--a)"));
  const KernelPoly k = project(f);
  emit({{"result", kernel_to_json(k)}, {"text", to_string(k)}});
  return 0;
}

inline json evaluation_to_json(const IEvaluation& e) {
  json routes = json::array();
  for (const auto& [w, r] : e.routes) routes.push_back({{"word", to_string(w)}, {"route", to_string(r)}});
  json cancelled = json::array();
  for (const auto& [w, coeff] : e.leibniz_cancelled) cancelled.push_back({{"word", to_string(w)}, {"coefficient", to_string(coeff)}});
  return {{"name", e.name},
          {"value", to_string(e.value)},
          {"id_multiple", e.id_multiple},
          {"tensors_in_intermediates", e.tensors_in_intermediates},
          {"tensors_in_value", e.tensors_in_value},
          {"routes", routes},
          {"leibniz_cancelled", cancelled}};
}

inline int cmd_c1(const Config& c, const Emit& emit) {
  const Jet2 jets = load_jets(c);
  const Roles roles = c.swap ? Roles::swapped() : Roles{};
  const C1Report rep = c1_report(jets, l_data(c, jets.dim()), roles);
  json j = {{"c1", to_string(rep.value)}, {"match", rep.match}};
  if (c.details) {
    j["n"] = jets.dim();
    j["l2_reading"] = to_string(c.literal_l2 ? L2Reading::Literal : L2Reading::Standard);
    j["expected"] = to_string(rep.expected);
    j["residual"] = to_string(rep.residual);
    j["residual_matches"] = rep.residual_matches;
    j["polynomial"] = ncpoly_to_json(rep.value);
    j["I"] = json::array();
    for (const auto& e : rep.I) j["I"].push_back(evaluation_to_json(e));
  }
  if (jets.has_numeric()) {
    const Eigen::MatrixXcd v = numeric_value(rep.value, jets);
    const Eigen::MatrixXcd w = numeric_value(rep.expected, jets);
    j["numeric"] = matrix_to_json(v);
    j["numeric_match"] = (v - w).norm() <= 1e-12 * std::max(1.0, w.norm());
  }
  emit(j);
  if (!rep.match) throw CheckFailed("c1 differs from -(1/pi) sum f_z g_zbar");
  return 0;
}

inline int cmd_poisson(const Config& c, const Emit& emit) {
  const Jet2 jets = load_jets(c);
  const PoissonReport rep = poisson_check(jets, l_data(c, jets.dim()));
  emit({{"lhs", to_string(rep.lhs)}, {"rhs", to_string(rep.rhs)}, {"match", rep.match}});
  if (!rep.match) throw CheckFailed("c1(f,g) - c1(g,f) differs from the Poisson bracket");
  return 0;
}

/// Mode per pair: "exact" if every |E_p| <= exact_tol, otherwise first-order
/// decay with order and ratio inside the configured bounds.
inline int cmd_fock_verify(const Config& c, const Emit& emit) {
  const int n = c.n_given ? c.n : 1;
  bool ok = true;
  json rows = json::array();
  std::vector<json> csv_rows;
  const auto& pairs = c.pairs.empty() ? default_pairs() : c.pairs;
  for (const auto& text : pairs) {
    const auto [fs, gs] = split_pair(text);
    const auto rep = expansion_check(parse_symbol(fs, n), parse_symbol(gs, n), c.p_list, c.D);
    bool exact = true;
    for (const auto& q : rep.points) exact = exact && q.max_abs_E <= c.exact_tol;
    bool pair_ok = exact;
    if (!exact) {
      pair_ok = rep.points.size() >= 2;
      for (std::size_t i = 1; i < rep.points.size(); ++i) {
        const auto& q = rep.points[i];
        pair_ok = pair_ok && q.order_estimate && q.ratio && *q.order_estimate >= c.order_min &&
                  *q.order_estimate <= c.order_max && *q.ratio >= c.ratio_min && *q.ratio <= c.ratio_max;
      }
    }
    ok = ok && pair_ok;
    for (const auto& q : rep.points) {
      json row = convergence_to_json(fs, gs, q);
      csv_rows.push_back(row);
      row["mode"] = exact ? "exact" : "first-order";
      row["c1"] = to_string(rep.c1);
      row["pass"] = pair_ok;
      rows.push_back(row);
    }
  }

  double ladder = 0.0;
  bool identity = true, hermitian = true;
  for (int p : c.p_list) {
    if (n == 1) ladder = std::max(ladder, ladder_deviation(p, c.D));
    const BargmannBasis basis(p, c.D, n);
    const Eigen::MatrixXcd one = toeplitz_matrix(SymbolPoly::constant(n, Scalar(1)), basis).matrix;
    identity = identity && (one - Eigen::MatrixXcd::Identity(one.rows(), one.cols())).norm() == 0.0;
    for (const char* h : {"z+zbar", "z*zbar", "i*(zbar-z)"})
      hermitian = hermitian && is_hermitian(toeplitz_matrix(parse_symbol(h, n), basis).matrix, c.hermitian_tol);
  }
  const bool ladder_ok = n != 1 || ladder <= c.ladder_tol;

  const auto com = commutator_check(parse_symbol("z+zbar", n), parse_symbol("i*(zbar-z)", n), c.p_list, c.D);
  double com_dev = 0.0;
  for (const auto& q : com.points) com_dev = std::max(com_dev, q.max_abs_E);
  const bool com_ok = com_dev <= c.exact_tol;

  ok = ok && identity && hermitian && ladder_ok && com_ok;
  json j = {{"pairs", rows},
            {"T1_identity", identity},
            {"hermitian", hermitian},
            {"commutator", {{"f", "z+zbar"}, {"g", "i*(zbar-z)"}, {"bracket", to_string(com.bracket)},
                            {"max_deviation", com_dev}, {"pass", com_ok}}},
            {"pass", ok}};
  if (n == 1) j["ladder"] = {{"f", "z"}, {"g", "zbar"}, {"max_deviation", ladder}, {"pass", ladder_ok}};
  emit(j);
  if (!c.csv.empty()) {
    std::ofstream f(c.csv);
    if (!f) throw ParseError("cannot write " + c.csv);
    f << convergence_csv(csv_rows);
  }
  if (!ok) throw CheckFailed("flat-model check failed");
  return 0;
}

inline int cmd_all(const Config& c, std::ostream& out) {
  bool ok = true;
  for (const auto& r : acceptance::run_all(c.seed)) {
    ok = ok && r.pass;
    out << acceptance::format_line(r) << '\n';
  }
  out << acceptance::generic_pair_info() << '\n';
  if (!ok) throw CheckFailed("acceptance criteria failed");
  return 0;
}

inline void report_error(std::ostream& err, const char* kind, const std::string& message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace detail

inline int run(const Config& c, std::ostream& out, std::ostream& err) {
  const detail::Emit emit{c, out};
  try {
    if (c.n < 1 || c.n > kMaxExteriorDim) throw ParseError("n out of range");
    if (c.command == "table") return detail::cmd_table(c, out);
    if (c.command == "compose") return detail::cmd_compose(c, emit);
    if (c.command == "project") return detail::cmd_project(c, emit);
    if (c.command == "c1") return detail::cmd_c1(c, emit);
    if (c.command == "poisson") return detail::cmd_poisson(c, emit);
    if (c.command == "fock-verify") return detail::cmd_fock_verify(c, emit);
    if (c.command == "all") return detail::cmd_all(c, out);
    throw ParseError("unknown command " + c.command);
  } catch (const CheckFailed& e) {
    detail::report_error(err, "check_failed", e.what());
    return 1;
  } catch (const ParseError& e) {
    detail::report_error(err, "parse_error", e.what());
    return 2;
  } catch (const UnavailableRestriction& e) {
    detail::report_error(err, "unavailable_restriction", e.what());
    return 1;
  } catch (const CancellationFailure& e) {
    detail::report_error(err, "cancellation_failure", e.what());
    return 1;
  } catch (const std::exception& e) {
    detail::report_error(err, "invalid_input", e.what());
    return 2;
  }
}

/// Registers subcommands and flags on `app`; after parsing, `config.command`
/// names the chosen subcommand ("all" when none).
inline void configure(CLI::App& app, Config& config) {
  app.require_subcommand(0, 1);
  app.add_option("--seed", config.seed, "seed for randomized checks (default FOCK_CALC_SEED or fixed)");
  auto dim = [&](CLI::App* sub) {
    sub->add_option_function<int>(
        "--n", [&](const int& v) {
          config.n = v;
          config.n_given = true;
        }, "complex dimension");
  };
  auto out = [&](CLI::App* sub) { sub->add_option("-o,--output", config.output, "write JSON to this file"); };
  auto l2 = [&](CLI::App* sub) {
    sub->add_flag("--literal-l2", config.literal_l2, "use the literal reading of the second L-kernel");
  };

  auto* table = app.add_subcommand("table", "check the kernel-calculus identities");
  dim(table);

  auto* comp = app.add_subcommand("compose", "compose two kernels (JSON files)");
  comp->add_option("--a", config.input_a, "first kernel")->required()->check(CLI::ExistingFile);
  comp->add_option("--b", config.input_b, "second kernel")->required()->check(CLI::ExistingFile);
  out(comp);

  auto* proj = app.add_subcommand("project", "apply the Bergman projection to a kernel");
  proj->add_option("--a,--kernel", config.input_a, "kernel")->required()->check(CLI::ExistingFile);
  out(proj);

  auto* c1cmd = app.add_subcommand("c1", "second-order coefficient from jets");
  c1cmd->add_option("--jets", config.input_a, "jets JSON (default: symbolic)")->check(CLI::ExistingFile);
  c1cmd->add_flag("--swap", config.swap, "compute c1(g, f)");
  c1cmd->add_flag("--details", config.details, "include the I-terms and the residual");
  dim(c1cmd);
  l2(c1cmd);
  out(c1cmd);

  auto* pois = app.add_subcommand("poisson", "check c1(f,g) - c1(g,f) against the Poisson bracket");
  pois->add_option("--jets", config.input_a, "jets JSON (default: symbolic)")->check(CLI::ExistingFile);
  dim(pois);
  l2(pois);
  out(pois);

  auto* fock = app.add_subcommand("fock-verify", "Toeplitz matrices on the truncated Bargmann space");
  dim(fock);
  out(fock);
  fock->add_option("--p", config.p_list, "values of p")->delimiter(',');
  fock->add_option("--D", config.D, "truncation degree");
  fock->add_option("--pair", config.pairs, "symbol pair \"f;g\", repeatable");
  fock->add_option("--csv", config.csv, "write the convergence table as CSV");
  fock->add_option("--exact-tol", config.exact_tol);
  fock->add_option("--ladder-tol", config.ladder_tol);
  fock->add_option("--order-min", config.order_min);
  fock->add_option("--order-max", config.order_max);
  fock->add_option("--ratio-min", config.ratio_min);
  fock->add_option("--ratio-max", config.ratio_max);
  fock->add_option("--hermitian-tol", config.hermitian_tol);

  app.add_subcommand("all", "run every acceptance criterion (the default)");
}

/// Parses argv and runs; CLI usage errors also come back as error JSON.
inline int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config config;
  config.seed = seed_from_env();
  CLI::App app{"fockcalc: symbolic Toeplitz-expansion calculator"};
  configure(app, config);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    detail::report_error(err, "usage", e.what());
    return 2;
  }
  const auto chosen = app.get_subcommands();
  config.command = chosen.empty() ? "all" : chosen.front()->get_name();
  return run(config, out, err);
}

}  // namespace fockcalc::cli
