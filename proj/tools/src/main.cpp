// Command-line front end: betti / heat / verify / complex subcommands over
// the exact group-ring engine, with JSON or CSV reports.
//
// Exit codes: 0 success (and, for heat, converged); 1 bad input;
// 2 unsupported request; 3 verification failure; 4 non-convergence.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cayley/complex.hpp"
#include "cayley/errors.hpp"
#include "cayley/group.hpp"
#include "cayley/io.hpp"
#include "cayley/kclass.hpp"
#include "cayley/rational.hpp"
#include "cayley/ring.hpp"
#include "cayley/spectral.hpp"

namespace {

using cayley::CochainComplex;
using cayley::GroupElement;
using cayley::GroupSpec;
using cayley::Json;
using cayley::Rational;
using cayley::RingMatrix;

struct CommonOptions {
  std::string group;
  std::string group_file;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--group", opts.group, "Group spec (grammar: Zm, Fk, '*', 'x')");
  cmd->add_option("--group-file", opts.group_file,
                  "JSON file with a finite multiplication-table group");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opts.out, "Write the report to this path instead of stdout");
}

GroupSpec resolve_group(const CommonOptions& opts) {
  if (!opts.group_file.empty()) {
    if (!opts.group.empty())
      throw std::invalid_argument("give either --group or --group-file, not both");
    return cayley::load_group_file(opts.group_file);
  }
  if (opts.group.empty()) throw std::invalid_argument("--group (or --group-file) is required");
  return cayley::parse_group_spec(opts.group);
}

void emit(const CommonOptions& opts, const std::string& text) {
  if (opts.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream file(opts.out);
  if (!file) throw std::invalid_argument("cannot write to '" + opts.out + "'");
  file << text << "\n";
}

// Split on commas outside parentheses, so tuple words "(e,e,t)" survive.
std::vector<std::string> split_list(const std::string& joined) {
  std::vector<std::string> parts;
  std::string item;
  int depth = 0;
  for (char c : joined) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (!item.empty()) parts.push_back(item);
      item.clear();
    } else {
      item.push_back(c);
    }
  }
  if (!item.empty()) parts.push_back(item);
  if (parts.empty()) throw std::invalid_argument("empty list '" + joined + "'");
  return parts;
}

// The cochain complex used for a group: the two-factor free-product
// resolution, the free-group resolution, the periodic cyclic resolution, or
// their tensor products for direct products.
CochainComplex build_complex_for(const GroupSpec& spec, int max_degree) {
  if (const auto* fc = std::get_if<cayley::FiniteCyclic>(&spec.desc))
    return cayley::finite_cyclic_complex(fc->order, max_degree);
  if (const auto* fp = std::get_if<cayley::FreeProduct>(&spec.desc)) {
    if (fp->orders.size() != 2)
      throw cayley::unsupported_error(
          "free-product complexes are implemented for exactly two factors");
    return cayley::free_product_complex(fp->orders[0], fp->orders[1], max_degree);
  }
  if (const auto* fg = std::get_if<cayley::FreeGroup>(&spec.desc))
    return cayley::free_group_complex(fg->rank);
  if (const auto* dp = std::get_if<cayley::DirectProduct>(&spec.desc)) {
    CochainComplex out = build_complex_for(dp->factors[0], max_degree);
    for (std::size_t i = 1; i < dp->factors.size(); ++i)
      out = cayley::tensor_complex(out, build_complex_for(dp->factors[i], max_degree),
                                   max_degree);
    return out;
  }
  throw cayley::unsupported_error("no canonical resolution for table groups");
}

// ---------------------------------------------------------------------------
// betti
// ---------------------------------------------------------------------------

struct BettiOptions {
  CommonOptions common;
  int degree = 0;
  std::string classes = "e";
};

int run_betti(const BettiOptions& opts) {
  const GroupSpec spec = resolve_group(opts.common);
  const cayley::KClassExpr expr = cayley::kazhdan_class(spec, opts.degree);
  cayley::validate(expr);

  struct Row {
    std::string word;
    Rational value;
  };
  std::vector<Row> rows;
  for (const std::string& word : split_list(opts.classes)) {
    const GroupElement g = cayley::parse_element(spec, word);
    rows.push_back({word, cayley::betti(expr, g)});
  }

  if (opts.common.format == "csv") {
    std::ostringstream csv;
    csv << "class,value\n";
    for (const auto& row : rows)
      csv << row.word << "," << cayley::to_fraction_string(row.value) << "\n";
    emit(opts.common, csv.str());
    return 0;
  }

  Json report;
  report["command"] = "betti";
  report["group"] = cayley::render_group_spec(spec);
  report["degree"] = opts.degree;
  Json terms = Json::array();
  for (const auto& term : expr.terms)
    terms.push_back(Json{{"coeff", cayley::to_fraction_string(term.coeff)},
                         {"size", term.projection.rows}});
  report["terms"] = std::move(terms);
  report["notes"] = expr.notes;
  Json values = Json::array();
  for (const auto& row : rows)
    values.push_back(Json{{"class", row.word},
                          {"value", cayley::to_fraction_string(row.value)},
                          {"value_double", cayley::to_double(row.value)}});
  report["values"] = std::move(values);
  emit(opts.common, report.dump(2));
  return 0;
}

// ---------------------------------------------------------------------------
// heat
// ---------------------------------------------------------------------------

struct HeatOptions {
  CommonOptions common;
  int degree = 0;
  std::string cls = "e";
  std::string ts;
  std::string radii;
  double tol = 1e-5;
  int taylor_order = -1;  // < 0: no exact supplement
};

int run_heat(const HeatOptions& opts) {
  const GroupSpec spec = resolve_group(opts.common);
  if (opts.degree < 0) throw std::invalid_argument("--degree must be >= 0");
  const GroupElement g = cayley::parse_element(spec, opts.cls);

  std::vector<Rational> ts;
  std::vector<double> ts_double;
  for (const std::string& tok : split_list(opts.ts)) {
    ts.push_back(cayley::parse_fraction(tok));
    ts_double.push_back(cayley::to_double(ts.back()));
  }
  std::vector<int> radii;
  for (const std::string& tok : split_list(opts.radii)) {
    const int r = std::stoi(tok);
    if (r < 0) throw std::invalid_argument("radii must be >= 0");
    if (!radii.empty() && r <= radii.back())
      throw std::invalid_argument("radius schedule must be strictly increasing");
    radii.push_back(r);
  }
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (!(ts[i - 1] < ts[i]))
      throw std::invalid_argument("t schedule must be strictly increasing");

  const CochainComplex complex = build_complex_for(spec, opts.degree + 1);
  if (opts.degree > complex.top_degree())
    throw std::invalid_argument("degree exceeds the top degree of the resolution");
  const RingMatrix delta = cayley::laplacian(complex, opts.degree);

  const cayley::HeatScan scan =
      cayley::heat_limit_scan(delta, g, ts_double, radii, opts.tol);

  struct ExactRow {
    Rational t;
    cayley::ExactHeatResult result;
  };
  std::vector<ExactRow> exact;
  if (opts.taylor_order >= 0)
    for (const Rational& t : ts)
      exact.push_back({t, cayley::heat_trace_exact(complex, opts.degree, t, g,
                                                   opts.taylor_order)});

  if (opts.common.format == "csv") {
    std::ostringstream csv;
    csv << "kind,t,radius_or_order,value,remainder_bound\n";
    for (std::size_t ti = 0; ti < ts.size(); ++ti)
      for (std::size_t ri = 0; ri < radii.size(); ++ri)
        csv << "numeric," << cayley::to_fraction_string(ts[ti]) << "," << radii[ri]
            << "," << scan.values[ti][ri] << ",\n";
    for (const auto& row : exact)
      csv << "exact," << cayley::to_fraction_string(row.t) << "," << row.result.order
          << "," << cayley::to_double(row.result.value) << ","
          << (row.result.bound_valid ? std::to_string(row.result.remainder_bound) : "")
          << "\n";
    emit(opts.common, csv.str());
    return scan.converged ? 0 : 4;
  }

  Json report;
  report["command"] = "heat";
  report["group"] = cayley::render_group_spec(spec);
  report["degree"] = opts.degree;
  report["class"] = opts.cls;
  Json ts_json = Json::array();
  for (const Rational& t : ts) ts_json.push_back(cayley::to_fraction_string(t));
  report["ts"] = std::move(ts_json);
  report["radii"] = radii;
  report["values"] = scan.values;
  report["status"] = scan.status;
  report["tolerance"] = opts.tol;
  if (!exact.empty()) {
    Json rows = Json::array();
    for (const auto& row : exact)
      rows.push_back(Json{{"t", cayley::to_fraction_string(row.t)},
                          {"order", row.result.order},
                          {"value", cayley::to_fraction_string(row.result.value)},
                          {"value_double", cayley::to_double(row.result.value)},
                          {"remainder_bound", row.result.remainder_bound},
                          {"bound_valid", row.result.bound_valid}});
    report["exact"] = std::move(rows);
  }
  emit(opts.common, report.dump(2));
  return scan.converged ? 0 : 4;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOptions {
  CommonOptions common;
  int max_degree = 3;
  int witness_radius = 6;
  int altproj_radius = 8;
  int altproj_iterations = 300;
};

int run_verify(const VerifyOptions& opts) {
  const GroupSpec spec = resolve_group(opts.common);

  struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
  };
  std::vector<Check> checks;

  // Structural checks shared by every family with a resolution: chain law
  // (validate) and self-adjointness of every Laplacian.
  const CochainComplex complex = build_complex_for(spec, opts.max_degree);
  {
    Check chain{"chain-law", true, ""};
    try {
      cayley::validate(complex);
    } catch (const std::invalid_argument& e) {
      chain.passed = false;
      chain.detail = e.what();
    }
    checks.push_back(chain);

    bool all_sa = true;
    for (int i = 0; i <= complex.top_degree(); ++i)
      if (!cayley::is_self_adjoint(cayley::laplacian(complex, i))) all_sa = false;
    checks.push_back({"laplacian-self-adjoint", all_sa, ""});
  }

  // Kernel-structure suite for two-factor free products.
  std::optional<cayley::KernelCheckReport> kernel;
  if (const auto* fp = std::get_if<cayley::FreeProduct>(&spec.desc);
      fp && fp->orders.size() == 2) {
    cayley::KernelCheckOptions kopts;
    kopts.witness_window_radius = opts.witness_radius;
    kopts.altproj_radius = opts.altproj_radius;
    kopts.altproj_iterations = opts.altproj_iterations;
    kernel = cayley::verify_kernel_structure(fp->orders[0], fp->orders[1], kopts);
    checks.push_back({"laplacian-splitting-identity", kernel->splitting_identity_ok, ""});
    checks.push_back({"averaging-factorization", kernel->factorization_ok, ""});
    checks.push_back({"kernel-witness", kernel->witness_ok, ""});
  }

  bool all_passed = true;
  for (const auto& c : checks) all_passed = all_passed && c.passed;

  if (opts.common.format == "csv") {
    std::ostringstream csv;
    csv << "check,passed,detail\n";
    for (const auto& c : checks)
      csv << c.name << "," << (c.passed ? "true" : "false") << "," << c.detail << "\n";
    if (kernel) {
      csv << "witness-residual," << kernel->witness_residual << ",\n";
      csv << "altproj-residual," << kernel->altproj_residual << ",diagnostic\n";
    }
    emit(opts.common, csv.str());
    return all_passed ? 0 : 3;
  }

  Json report;
  report["command"] = "verify";
  report["group"] = cayley::render_group_spec(spec);
  Json rows = Json::array();
  for (const auto& c : checks) {
    Json row{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) row["detail"] = c.detail;
    rows.push_back(std::move(row));
  }
  report["checks"] = std::move(rows);
  if (kernel) {
    report["kernel"] = Json{
        {"m", kernel->m},
        {"n", kernel->n},
        {"splitting_identity_ok", kernel->splitting_identity_ok},
        {"factorization_ok", kernel->factorization_ok},
        {"witness_ok", kernel->witness_ok},
        {"witness_window_radius", kernel->witness_window_radius},
        {"witness_norm_sq", cayley::to_fraction_string(kernel->witness_norm_sq)},
        {"witness_residual", kernel->witness_residual},
        {"altproj",
         Json{{"radius", kernel->altproj_radius},
              {"iterations", kernel->altproj_iterations},
              {"residual", kernel->altproj_residual},
              {"role", "diagnostic"}}},
    };
  }
  report["passed"] = all_passed;
  emit(opts.common, report.dump(2));
  return all_passed ? 0 : 3;
}

// ---------------------------------------------------------------------------
// complex
// ---------------------------------------------------------------------------

struct ComplexOptions {
  CommonOptions common;
  int max_degree = 2;
  int degree = -1;  // < 0: whole complex
};

void csv_matrix_rows(std::ostringstream& csv, const std::string& kind, int degree,
                     const RingMatrix& m, const GroupSpec& spec) {
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      for (const auto& [g, coeff] : m.at(r, c).coeffs)
        csv << kind << "," << degree << "," << r << "," << c << ","
            << cayley::render_element(spec, g) << ","
            << cayley::to_fraction_string(coeff) << "\n";
}

int run_complex(const ComplexOptions& opts) {
  const GroupSpec spec = resolve_group(opts.common);
  const CochainComplex complex = build_complex_for(spec, opts.max_degree);
  if (opts.degree > complex.top_degree())
    throw std::invalid_argument("degree exceeds the top degree of the resolution");

  if (opts.common.format == "csv") {
    std::ostringstream csv;
    csv << "kind,degree,row,col,word,coeff\n";
    for (std::size_t i = 0; i < complex.coboundaries.size(); ++i)
      csv_matrix_rows(csv, "coboundary", static_cast<int>(i), complex.coboundaries[i],
                      spec);
    for (int i = 0; i <= complex.top_degree(); ++i) {
      if (opts.degree >= 0 && i != opts.degree) continue;
      csv_matrix_rows(csv, "laplacian", i, cayley::laplacian(complex, i), spec);
    }
    emit(opts.common, csv.str());
    return 0;
  }

  Json report = cayley::complex_to_json(complex);
  report["command"] = "complex";
  if (opts.degree >= 0) {
    report["degree"] = opts.degree;
    report["laplacian"] = cayley::matrix_to_json(cayley::laplacian(complex, opts.degree));
  } else {
    Json lap = Json::array();
    for (int i = 0; i <= complex.top_degree(); ++i)
      lap.push_back(cayley::matrix_to_json(cayley::laplacian(complex, i)));
    report["laplacians"] = std::move(lap);
  }
  emit(opts.common, report.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact group-ring Laplacians, projection classes, and heat-trace "
      "engines for free products, free groups, and their direct products.\n"
      "Set CAYLEY_THREADS to parallelize heat scans."};
  app.require_subcommand(1);

  BettiOptions betti;
  CLI::App* cmd_betti = app.add_subcommand(
      "betti", "Exact delocalised Betti numbers from projection classes");
  add_common(cmd_betti, betti.common);
  cmd_betti->add_option("--degree", betti.degree, "Cohomological degree")->required();
  cmd_betti->add_option("--classes", betti.classes,
                        "Comma-separated conjugacy-class words (default e)");

  HeatOptions heat;
  CLI::App* cmd_heat = app.add_subcommand(
      "heat", "Heat-semigroup trace values over a (t, radius) grid");
  add_common(cmd_heat, heat.common);
  cmd_heat->add_option("--degree", heat.degree, "Laplacian degree")->required();
  cmd_heat->add_option("--class", heat.cls, "Conjugacy-class word (default e)");
  cmd_heat->add_option("--t", heat.ts, "Comma-separated times, rationals like 1/2")
      ->required();
  cmd_heat->add_option("--radius", heat.radii, "Comma-separated window radii")
      ->required();
  cmd_heat->add_option("--tol", heat.tol,
                       "Convergence tolerance on the last two radii (default 1e-5)");
  cmd_heat->add_option("--taylor-order", heat.taylor_order,
                       "Also compute exact Taylor partial sums of this order");

  VerifyOptions verify;
  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "Exact structural checks (chain law, Laplacian identities, kernel witness)");
  add_common(cmd_verify, verify.common);
  cmd_verify->add_option("--max-degree", verify.max_degree,
                         "Resolution depth for the structural checks (default 3)");
  cmd_verify->add_option("--witness-radius", verify.witness_radius,
                         "Window radius for the exact kernel witness (default 6)");
  cmd_verify->add_option("--altproj-radius", verify.altproj_radius,
                         "Window radius for the alternating-projection diagnostic");
  cmd_verify->add_option("--altproj-iterations", verify.altproj_iterations,
                         "Iterations for the alternating-projection diagnostic");

  ComplexOptions complex_opts;
  CLI::App* cmd_complex = app.add_subcommand(
      "complex", "Dump coboundaries and Laplacians of the resolution");
  add_common(cmd_complex, complex_opts.common);
  cmd_complex->add_option("--max-degree", complex_opts.max_degree,
                          "Build the resolution to this degree (default 2)");
  cmd_complex->add_option("--degree", complex_opts.degree,
                          "Restrict the report to this degree's Laplacian");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_betti->parsed()) return run_betti(betti);
    if (cmd_heat->parsed()) return run_heat(heat);
    if (cmd_verify->parsed()) return run_verify(verify);
    if (cmd_complex->parsed()) return run_complex(complex_opts);
  } catch (const cayley::unsupported_error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
