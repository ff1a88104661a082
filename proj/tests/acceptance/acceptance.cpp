// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Commands that go through the CLI are replayed at the end to
// check byte-identical output.
#include "cli/cli.hpp"
#include "cli/report.hpp"

#include <poincare/conic_maps.hpp>
#include <poincare/estimators.hpp>
#include <poincare/homotopy_arcs.hpp>
#include <poincare/verification.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace poincare;
using poincare::cli::Json;

namespace {

struct Invocation {
  std::vector<std::string> args;
  int code = 0;
  std::string out;
};

std::vector<Invocation> g_log;

Invocation cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Invocation inv{args, poincare::cli::run_command(args, out, err), out.str()};
  if (inv.code != 0) std::cerr << "command failed (" << inv.code << "): " << err.str();
  g_log.push_back(inv);
  return inv;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) { return poincare::cli::format12(x); }

int g_failures = 0;

void report(int id, bool ok, const std::string& title, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " | " << detail << std::endl;
  if (!ok) ++g_failures;
}

template <typename F>
void criterion(int id, const std::string& title, F&& body) {
  try {
    std::string detail;
    const bool ok = body(detail);
    report(id, ok, title, detail);
  } catch (const std::exception& e) {
    report(id, false, title, std::string("exception: ") + e.what());
  }
}

double estimate_constant(const std::string& domain, const std::vector<std::string>& extra, double* elapsed) {
  std::vector<std::string> args{"estimate", "--domain", domain};
  args.insert(args.end(), extra.begin(), extra.end());
  const auto t0 = std::chrono::steady_clock::now();
  const Invocation inv = cli_run(args);
  if (elapsed != nullptr) *elapsed = seconds_since(t0);
  if (inv.code != 0) throw std::runtime_error("estimate exited with " + std::to_string(inv.code));
  return Json::parse(inv.out)["constant"].get<double>();
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  criterion(1, "spectral oracle accuracy", [](std::string& detail) {
    struct Case {
      std::string domain;
      double expected;
      double tol;
    };
    const std::vector<Case> cases{{"unit_square", 1.0 / M_PI, 0.02}, {"rectangle", 2.0 / M_PI, 0.02},
                                  {"disk", 1.0 / 1.84118, 0.03}};
    bool ok = true;
    for (const auto& c : cases) {
      double t = 0.0;
      const double C = estimate_constant(c.domain, {"--p", "2", "--method", "eigen", "--h", "1/64"}, &t);
      const double rel = std::abs(C - c.expected) / c.expected;
      ok = ok && rel <= c.tol && t <= 60.0;
      detail += c.domain + " C=" + fmt(C) + " rel=" + fmt(rel) + " t=" + fmt(std::round(t * 100) / 100) + "s; ";
    }
    return ok;
  });

  criterion(2, "rayleigh within 5% of eigen at p=2", [](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (const auto& [domain, params] : std::vector<std::pair<std::string, std::vector<std::string>>>{
             {"unit_square", {}}, {"disk", {}}, {"power_cusp", {"--param", "k=2"}}}) {
      std::vector<std::string> common = params;
      common.insert(common.end(), {"--p", "2", "--h", "1/64"});
      auto eig_args = common;
      eig_args.insert(eig_args.end(), {"--method", "eigen"});
      auto ray_args = common;
      ray_args.insert(ray_args.end(), {"--method", "rayleigh", "--restarts", "8"});
      const double eig = estimate_constant(domain, eig_args, nullptr);
      const double ray = estimate_constant(domain, ray_args, nullptr);
      const double rel = std::abs(ray - eig) / eig;
      ok = ok && rel <= 0.05;
      detail += domain + " rel=" + fmt(rel) + "; ";
    }
    const double t = seconds_since(t0);
    detail += "total t=" + fmt(std::round(t * 100) / 100) + "s";
    return ok && t <= 300.0;
  });

  criterion(3, "conic map certification over 1e5 samples", [](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const Invocation inv = cli_run({"constants", "--check", "conic", "--samples", "100000"});
    const double t = seconds_since(t0);
    const Json j = Json::parse(inv.out);
    const double dist = j["distance_error_max"], rt = j["roundtrip_error_max"];
    const double scal = j["retraction_scaling_error_max"], spread = j["lipschitz_ratio_spread"];
    detail = "dist=" + fmt(dist) + " roundtrip=" + fmt(rt) + " scaling=" + fmt(scal) + " spread=" + fmt(spread) +
             " t=" + fmt(std::round(t * 100) / 100) + "s";
    return inv.code == 0 && j["samples"] == 100000 && dist <= 1e-12 && rt <= 1e-10 && scal <= 1e-10 &&
           spread <= 10.0 && t <= 30.0;
  });

  criterion(4, "homotopy and arc contract", [](std::string& detail) {
    const Invocation inv = cli_run({"constants", "--domain", "unit_square", "--mu", "0.8"});
    const Json sq = Json::parse(inv.out);
    const double eta = sq["eta"], cg = sq["C_gamma"];
    bool ok = inv.code == 0 && std::abs(eta - 0.01) <= 1e-6 && std::abs(cg - 3 * 0.8 * std::sqrt(0.5)) <= 1e-3;
    detail = "square eta=" + fmt(eta) + " C_gamma=" + fmt(cg) + "; ";
    for (const char* k : {"2", "3"}) {
      const Invocation c = cli_run({"constants", "--domain", "power_cusp", "--param", std::string("k=") + k});
      const Json j = Json::parse(c.out);
      const bool good = c.code == 0 && j["eta"].get<double>() > 0.0 && j["lambda"].is_number() &&
                        std::isfinite(j["lambda"].get<double>());
      ok = ok && good;
      detail += std::string("cusp k=") + k + " eta=" + fmt(j["eta"]) + " lambda=" + fmt(j["lambda"]) + "; ";
    }
    double endpoint_err = 0.0;
    std::size_t outside = 0, checked = 0;
    for (const auto& name : catalog_names()) {
      if (name == "two_squares_disjoint") continue;
      const ArcFamily arcs = ArcFamily::build(instantiate(name));
      const PointSample pts = sample_interior(arcs.domain(), 2 * 10000, 77);
      std::mt19937_64 rng(split_seed(77, checked));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (std::size_t i = 0; i < 10000; ++i) {
        const Vec2 x = pts.points[2 * i], y = pts.points[2 * i + 1];
        endpoint_err = std::max(endpoint_err, (arc_point(arcs, x, y, 0.0) - x).norm());
        endpoint_err = std::max(endpoint_err, (arc_point(arcs, x, y, 1.0) - y).norm());
        outside += !arcs.domain().contains(arc_point(arcs, x, y, unit(rng)));
      }
      checked += 10000;
    }
    ok = ok && endpoint_err <= 1e-12 && outside == 0;
    detail += "endpoint err=" + fmt(endpoint_err) + " outside=" + std::to_string(outside) + "/" + std::to_string(checked);
    return ok;
  });

  criterion(5, "constructive bound dominates rayleigh (and eigen at p=2)", [](std::string& detail) {
    bool ok = true;
    double worst = INFINITY;
    std::string worst_case;
    for (const auto& name : catalog_names()) {
      if (name == "two_squares_disjoint") continue;  // disconnected: no finite constant exists
      const DomainSpec d = instantiate(name);
      const ArcConstants constants = estimate_constants(ArcFamily::build(d), 400, 25, 0);
      const GridPtr grid = build_grid(d, 1.0 / 64);
      for (double p : {1.0, 2.0, 3.0}) {
        const double bound = constructive_bound(d, p, constants).constant;
        const double ray = rayleigh_maximize(grid, p).constant;
        double lower = ray;
        if (p == 2.0) lower = std::max(lower, neumann_optimal_constant(grid).constant);
        ok = ok && bound >= lower;
        if (bound / lower < worst) {
          worst = bound / lower;
          worst_case = name + " p=" + fmt(p);
        }
      }
    }
    detail = "6 connected domains x p in {1,2,3}; smallest bound/estimate=" + fmt(worst) + " (" + worst_case + ")";
    return ok;
  });

  criterion(6, "default suite passes on power cusps at h=1/128", [](std::string& detail) {
    bool ok = true;
    for (double k : {2.0, 3.0, 4.0}) {
      const DomainSpec d = instantiate("power_cusp", {{"k", k}});
      const GridPtr grid = build_grid(d, 1.0 / 128);
      const TestFunctionSuite suite = generate_suite(d, default_suite_spec(), 0);
      const double eig = neumann_optimal_constant(grid).constant;
      const VerificationReport vs_eigen = verify_inequality(grid, 2.0, eig, suite, 0.05);
      ok = ok && vs_eigen.pass && suite.size() >= 30;
      detail += "k=" + fmt(k) + " max/eigen=" + fmt(vs_eigen.max_ratio / eig);
      const ArcConstants constants = estimate_constants(ArcFamily::build(d), 400, 25, 0);
      for (double p : {1.0, 2.0, 3.0}) {
        const double bound = constructive_bound(d, p, constants).constant;
        const VerificationReport vs_bound = verify_inequality(grid, p, bound, suite, 0.05);
        ok = ok && vs_bound.pass;
        if (!vs_bound.pass) detail += " [p=" + fmt(p) + " failed]";
      }
      detail += "; ";
    }
    detail += "32 functions incl. 6 concentrators";
    return ok;
  });

  criterion(7, "eigenfunction saturates the constant", [](std::string& detail) {
    const EstimateResult r = neumann_optimal_constant(build_grid(instantiate("unit_square"), 1.0 / 64));
    const double ratio = poincare_ratio(*r.witness, 2.0);
    const double rel = std::abs(ratio - r.constant) / r.constant;
    detail = "witness ratio=" + fmt(ratio) + " constant=" + fmt(r.constant) + " rel=" + fmt(rel);
    return rel <= 0.01;
  });

  criterion(8, "degradation demo on necks", [](std::string& detail) {
    const Invocation db = cli_run({"demo-neck", "--family", "dumbbell"});
    const Json j = Json::parse(db.out);
    bool increasing = true;
    const auto& c = j["constants"];
    for (std::size_t i = 1; i < c.size(); ++i) increasing = increasing && c[i].get<double>() > c[i - 1].get<double>();
    const double slope = j["slope"];
    const bool dumbbell_ok = db.code == 0 && increasing && j["values"].size() == 4 && std::abs(slope + 0.5) <= 0.15;
    const Invocation rp = cli_run({"demo-neck", "--family", "rooms_passages"});
    const Json r = Json::parse(rp.out);
    bool rooms_ok = rp.code == 0 && !r["growth_factors"].empty();
    detail = "dumbbell slope=" + fmt(slope) + (increasing ? " increasing" : " NOT increasing") + "; rooms factors:";
    for (const auto& g : r["growth_factors"]) {
      const double delta = g["param"], factor = g["factor"];
      if (delta <= 0.2 + 1e-12) rooms_ok = rooms_ok && factor >= 1.5;
      detail += " C(" + fmt(delta / 4) + ")/C(" + fmt(delta) + ")=" + fmt(factor);
    }
    return dumbbell_ok && rooms_ok;
  });

  criterion(9, "determinism: replayed commands are byte-identical", [](std::string& detail) {
    const std::vector<Invocation> first = g_log;
    std::size_t same = 0;
    for (const auto& inv : first) {
      std::ostringstream out, err;
      const int code = poincare::cli::run_command(inv.args, out, err);
      same += code == inv.code && out.str() == inv.out;
    }
    detail = std::to_string(same) + "/" + std::to_string(first.size()) + " commands identical";
    return !first.empty() && same == first.size();
  });

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(g_failures) + " CRITERIA FAILED") << " in "
            << fmt(std::round(seconds_since(start))) << " s" << std::endl;
  return g_failures == 0 ? 0 : 1;
}
