#include "cli/cli.hpp"

#include "cli/report.hpp"

#include <poincare/error.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

namespace poincare::cli {

namespace {

double parse_number(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw ValidationError("invalid " + what + " '" + text + "'");
  }
  return v;
}

}  // namespace

double parse_cell_size(const std::string& text) {
  const auto slash = text.find('/');
  double h = 0.0;
  if (slash == std::string::npos) {
    h = parse_number(text, "cell size");
  } else {
    const double num = parse_number(text.substr(0, slash), "cell size");
    const double den = parse_number(text.substr(slash + 1), "cell size");
    if (den == 0.0) throw ValidationError("invalid cell size '" + text + "'");
    h = num / den;
  }
  if (!(h > 0.0)) throw ValidationError("cell size must be positive");
  return h;
}

namespace {

struct RunConfig {
  std::optional<std::string> out;
  std::string format;
  std::uint64_t seed = 0;

  std::string domain;
  std::vector<std::string> params;
  double p = 2.0;
  std::string method = "eigen";
  std::string h = "1/64";
  double tolerance = 0.05;
  std::optional<std::string> witness;
  std::string constant = "auto";
  std::string suite = "default";
  std::string family;
  std::string values;
  std::optional<double> mu;
  std::size_t n_pairs = 400;
  int s_grid = 25;
  std::string check;
  std::size_t samples = 100000;
  int iters = 200;
  int restarts = 8;
};

Params parse_params(const std::vector<std::string>& items) {
  Params params;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("--param expects key=value, got '" + item + "'");
    params[item.substr(0, eq)] = parse_number(item.substr(eq + 1), "value for " + item.substr(0, eq));
  }
  return params;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_number(item, "sweep value"));
  if (values.empty()) throw ValidationError("--values is empty");
  return values;
}

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("--p must be >= 1");
}

Format output_format(const RunConfig& cfg, Format fallback) {
  if (cfg.format.empty()) return fallback;
  return cfg.format == "csv" ? Format::csv : Format::json;
}

EstimateSettings settings_of(const RunConfig& cfg) {
  EstimateSettings s;
  s.seed = cfg.seed;
  s.iters = cfg.iters;
  s.restarts = cfg.restarts;
  s.n_pairs = cfg.n_pairs;
  s.s_grid = cfg.s_grid;
  s.contraction = cfg.mu;
  return s;
}

Json domain_header(const DomainSpec& domain) {
  Json j;
  j["domain"] = domain.name;
  Json params = Json::object();
  for (const auto& [k, v] : domain.params) params[k] = v;
  j["params"] = std::move(params);
  return j;
}

int cmd_list_domains(const RunConfig& cfg, std::ostream& out) {
  std::vector<DomainSpec> catalog;
  for (const auto& name : catalog_names()) catalog.push_back(instantiate(name));
  if (output_format(cfg, Format::json) == Format::csv) {
    write_report(render_csv(catalog), cfg.out, out);
  } else {
    Json j = Json::array();
    for (const auto& d : catalog) j.push_back(to_json(d));
    write_report(render_json(j), cfg.out, out);
  }
  return 0;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.check.empty()) {
    if (cfg.check != "conic") throw ValidationError("--check accepts only 'conic'");
    const ConicCertificate cert = certify_cusp(cfg.samples, cfg.seed);
    Json j;
    j["check"] = "conic";
    j["map"] = "paper_cusp";
    j["seed"] = cfg.seed;
    j.update(to_json(cert));
    j["pass"] = passes(cert);
    write_report(render_json(j), cfg.out, out);
    return passes(cert) ? 0 : 1;
  }
  if (cfg.domain.empty()) throw ValidationError("constants needs --domain or --check conic");
  const DomainSpec domain = instantiate(cfg.domain, parse_params(cfg.params));
  const ArcFamily arcs = ArcFamily::build(domain, HomotopyOptions{std::nullopt, cfg.mu});
  const ArcConstants constants = estimate_constants(arcs, cfg.n_pairs, cfg.s_grid, cfg.seed);
  Json j = domain_header(domain);
  const Homotopy& hom = arcs.homotopy;
  j.update(to_json(constants));
  j["z"] = {hom.center().x(), hom.center().y()};
  j["alpha"] = hom.ball_radius();
  j["mu"] = hom.contraction();
  j["min_mu"] = hom.min_contraction();
  j["pieces"] = hom.pieces().size();
  write_report(render_json(j), cfg.out, out);
  return 0;
}

int cmd_estimate(const RunConfig& cfg, std::ostream& out) {
  check_p(cfg.p);
  const DomainSpec domain = instantiate(cfg.domain, parse_params(cfg.params));
  const Method method = method_from_name(cfg.method);
  const double h = parse_cell_size(cfg.h);
  if (cfg.witness && method == Method::constructive) {
    throw ValidationError("the constructive bound has no witness function");
  }
  const EstimateResult result = run_estimate(domain, cfg.p, method, h, settings_of(cfg));
  if (output_format(cfg, Format::json) == Format::csv) {
    write_report(render_csv(result), cfg.out, out);
  } else {
    Json j = domain_header(domain);
    j.update(to_json(result));
    write_report(render_json(j), cfg.out, out);
  }
  if (cfg.witness) write_report(render_witness_csv(*result.witness), cfg.witness, out);
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  check_p(cfg.p);
  if (cfg.suite != "default") throw ValidationError("--suite accepts only 'default'");
  const DomainSpec domain = instantiate(cfg.domain, parse_params(cfg.params));
  const GridPtr grid = build_grid(domain, parse_cell_size(cfg.h));
  double C = 0.0;
  std::string source;
  if (cfg.constant == "auto") {
    if (cfg.p == 2.0) {
      EigenOptions options;
      options.seed = cfg.seed;
      C = neumann_optimal_constant(grid, options).constant;
      source = "eigen";
    } else {
      C = run_estimate(domain, cfg.p, Method::constructive, grid->h, settings_of(cfg)).constant;
      source = "constructive";
    }
  } else {
    C = parse_number(cfg.constant, "constant");
    source = "given";
  }
  const TestFunctionSuite suite = generate_suite(domain, default_suite_spec(), cfg.seed);
  const VerificationReport report = verify_inequality(grid, cfg.p, C, suite, cfg.tolerance);
  if (output_format(cfg, Format::json) == Format::csv) {
    write_report(render_csv(report), cfg.out, out);
  } else {
    Json j = to_json(report);
    j["constant_source"] = source;
    write_report(render_json(j), cfg.out, out);
  }
  return report.pass ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  check_p(cfg.p);
  if (cfg.family.empty()) throw ValidationError("sweep needs --family");
  const SweepReport report = sweep_family(cfg.family, parse_values(cfg.values), cfg.p, method_from_name(cfg.method),
                                          parse_cell_size(cfg.h), settings_of(cfg), cfg.tolerance);
  if (output_format(cfg, Format::csv) == Format::csv) {
    write_report(render_csv(report), cfg.out, out);
  } else {
    write_report(render_json(to_json(report)), cfg.out, out);
  }
  if (!report.complete()) throw SolverError("sweep stopped early: " + *report.error);
  for (const auto& row : report.rows) {
    if (!row.pass) return 1;
  }
  return 0;
}

struct NeckDefaults {
  std::vector<double> values;
  std::string h;
};

NeckDefaults neck_defaults(Family family) {
  switch (family) {
    case Family::dumbbell: return {{0.4, 0.2, 0.1, 0.05}, "1/128"};
    case Family::rooms_passages: return {{0.2, 0.1, 0.05, 0.025}, "1/256"};
    case Family::power_cusp: return {{2.0, 4.0, 8.0}, "1/64"};
    default: return {{1.0, 2.0, 4.0}, "1/64"};
  }
}

int cmd_demo_neck(const RunConfig& cfg, bool h_given, std::ostream& out) {
  check_p(cfg.p);
  const std::string family = cfg.family.empty() ? "dumbbell" : cfg.family;
  const NeckDefaults defaults = neck_defaults(family_from_name(family));
  const std::vector<double> values = cfg.values.empty() ? defaults.values : parse_values(cfg.values);
  const double h = parse_cell_size(h_given ? cfg.h : defaults.h);
  const NeckReport report = neck_scaling_check(family, values, cfg.p, h, settings_of(cfg));
  write_report(render_json(to_json(report)), cfg.out, out);
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Poincare constant laboratory for singular planar domains", "poincare"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--out", cfg.out, "Write the report to this file instead of stdout");
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "Random seed");

  auto* list = app.add_subcommand("list-domains", "Print the domain catalog");

  auto* constants = app.add_subcommand("constants", "Measure homotopy and arc constants, or certify the cusp map");
  constants->add_option("--check", cfg.check, "Certificate to run (conic)");
  constants->add_option("--samples", cfg.samples, "Samples for --check conic");
  constants->add_option("--domain", cfg.domain, "Catalog domain");
  constants->add_option("--param", cfg.params, "Family parameter key=value");
  constants->add_option("--mu", cfg.mu, "Contraction factor in (0, 1)");
  constants->add_option("--n-pairs", cfg.n_pairs, "Random point pairs");
  constants->add_option("--s-grid", cfg.s_grid, "Arc parameter samples");

  auto* estimate = app.add_subcommand("estimate", "Estimate the Poincare constant");
  estimate->add_option("--domain", cfg.domain, "Catalog domain")->required();
  estimate->add_option("--param", cfg.params, "Family parameter key=value");
  estimate->add_option("--p", cfg.p, "Exponent p >= 1");
  estimate->add_option("--method", cfg.method, "eigen, rayleigh or constructive");
  estimate->add_option("--h", cfg.h, "Cell size, e.g. 1/64");
  estimate->add_option("--iters", cfg.iters, "Rayleigh iterations per start");
  estimate->add_option("--restarts", cfg.restarts, "Rayleigh random starts");
  estimate->add_option("--mu", cfg.mu, "Contraction factor for the constructive bound");
  estimate->add_option("--n-pairs", cfg.n_pairs, "Point pairs for the constructive bound");
  estimate->add_option("--witness", cfg.witness, "Write the witness function as CSV");

  auto* verify = app.add_subcommand("verify", "Check the inequality on a test-function suite");
  verify->add_option("--domain", cfg.domain, "Catalog domain")->required();
  verify->add_option("--param", cfg.params, "Family parameter key=value");
  verify->add_option("--p", cfg.p, "Exponent p >= 1");
  verify->add_option("--constant", cfg.constant, "Constant to check against, or auto");
  verify->add_option("--suite", cfg.suite, "Test-function suite (default)");
  verify->add_option("--h", cfg.h, "Cell size, e.g. 1/64");
  verify->add_option("--tolerance", cfg.tolerance, "Relative slack on the constant");
  verify->add_option("--mu", cfg.mu, "Contraction factor for --constant auto with p != 2");

  auto* sweep = app.add_subcommand("sweep", "Estimate across a family parameter");
  sweep->add_option("--family", cfg.family, "Catalog family")->required();
  sweep->add_option("--values", cfg.values, "Comma-separated parameter values")->required();
  sweep->add_option("--p", cfg.p, "Exponent p >= 1");
  sweep->add_option("--method", cfg.method, "eigen, rayleigh or constructive");
  sweep->add_option("--h", cfg.h, "Cell size, e.g. 1/64");
  sweep->add_option("--tolerance", cfg.tolerance, "Relative slack for the suite check");
  sweep->add_option("--iters", cfg.iters, "Rayleigh iterations per start");
  sweep->add_option("--restarts", cfg.restarts, "Rayleigh random starts");

  auto* neck = app.add_subcommand("demo-neck", "Fit the growth of the constant as a neck closes");
  neck->add_option("--family", cfg.family, "dumbbell or rooms_passages");
  neck->add_option("--values", cfg.values, "Comma-separated parameter values");
  neck->add_option("--p", cfg.p, "Exponent p >= 1");
  auto* neck_h = neck->add_option("--h", cfg.h, "Cell size, e.g. 1/128");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (list->parsed()) return cmd_list_domains(cfg, out);
    if (constants->parsed()) return cmd_constants(cfg, out);
    if (estimate->parsed()) return cmd_estimate(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out);
    if (neck->parsed()) return cmd_demo_neck(cfg, neck_h->count() > 0, out);
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CatalogError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace poincare::cli
