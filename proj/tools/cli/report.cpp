#include "cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace poincare::cli {

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string format12(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

Json diagnostics_json(const Diagnostics& diagnostics) {
  Json out = Json::object();
  for (const auto& [key, value] : diagnostics) out[key] = number(value);
  return out;
}

Json params_json(const Params& params) {
  Json out = Json::object();
  for (const auto& [key, value] : params) out[key] = number(value);
  return out;
}

void normalize(Json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    j = std::isfinite(v) ? Json(round12(v)) : Json(nullptr);
  } else if (j.is_structured()) {
    for (auto& child : j) normalize(child);
  }
}

}  // namespace

Json to_json(const DomainSpec& domain) {
  Json j;
  j["name"] = domain.name;
  j["params"] = params_json(domain.params);
  j["area"] = number(domain.area);
  if (!domain.area_analytic) j["area_stderr"] = number(domain.area_stderr);
  return j;
}

Json to_json(const EstimateResult& result) {
  Json j;
  j["method"] = std::string(method_name(result.method));
  j["p"] = number(result.p);
  j["h"] = number(result.h);
  j["constant"] = number(result.constant);
  j["seed"] = result.seed;
  j["diagnostics"] = diagnostics_json(result.diagnostics);
  return j;
}

Json to_json(const ArcConstants& c) {
  Json j;
  j["C_gamma"] = number(c.C_gamma);
  j["eta"] = number(c.eta);
  j["lambda"] = number(c.lambda);
  j["M"] = c.M;
  j["inverse_differential_max"] = number(c.inverse_differential_max);
  j["n_pairs"] = c.n_pairs;
  j["s_grid"] = c.s_grid;
  j["seed"] = c.seed;
  return j;
}

Json to_json(const ConicCertificate& c) {
  Json j;
  j["samples"] = c.samples;
  j["distance_error_max"] = number(c.distance_error_max);
  j["roundtrip_error_max"] = number(c.roundtrip_error_max);
  j["retraction_scaling_error_max"] = number(c.retraction_scaling_error_max);
  j["lipschitz_ratio_spread"] = number(c.lipschitz_ratio_spread);
  j["membership_excess_max"] = number(c.membership_excess_max);
  j["t_derivative_bound"] = number(c.t_derivative_bound);
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["domain"] = r.domain;
  j["p"] = number(r.p);
  j["h"] = number(r.h);
  j["constant"] = number(r.constant);
  j["tolerance"] = number(r.tolerance);
  j["max_ratio"] = number(r.max_ratio);
  j["argmax"] = r.argmax;
  j["flagged"] = r.flagged;
  j["pass"] = r.pass;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"name", row.name},
                    {"dev_norm", number(row.dev_norm)},
                    {"grad_norm", number(row.grad_norm)},
                    {"ratio", number(row.ratio)},
                    {"flagged", row.flagged}});
  }
  j["functions"] = std::move(rows);
  return j;
}

Json to_json(const SweepReport& r) {
  Json j;
  j["family"] = r.family;
  j["parameter"] = r.parameter;
  j["method"] = std::string(method_name(r.method));
  j["p"] = number(r.p);
  j["h"] = number(r.h);
  j["tolerance"] = number(r.tolerance);
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"param", number(row.param)},
                    {"constant", number(row.constant)},
                    {"max_ratio", number(row.max_ratio)},
                    {"pass", row.pass}});
  }
  j["rows"] = std::move(rows);
  j["monotonicity"] = {{"nondecreasing", r.nondecreasing},
                       {"nonincreasing", r.nonincreasing},
                       {"strictly_increasing", r.strictly_increasing},
                       {"strictly_decreasing", r.strictly_decreasing}};
  j["complete"] = r.complete();
  if (r.error) j["error"] = *r.error;
  return j;
}

Json to_json(const NeckReport& r) {
  Json j;
  j["family"] = r.family;
  j["p"] = number(r.p);
  j["h"] = number(r.h);
  j["slope"] = number(r.slope);
  Json growth = Json::array();
  for (const auto& g : r.growth_factors) growth.push_back({{"param", number(g.param)}, {"factor", number(g.factor)}});
  j["growth_factors"] = std::move(growth);
  Json values = Json::array(), constants = Json::array();
  for (double v : r.values) values.push_back(number(v));
  for (double c : r.constants) constants.push_back(number(c));
  j["values"] = std::move(values);
  j["constants"] = std::move(constants);
  j["intercept"] = number(r.intercept);
  return j;
}

std::string render_json(const Json& value) {
  Json copy = value;
  normalize(copy);
  return copy.dump(2) + "\n";
}

std::string render_csv(const SweepReport& report) {
  std::ostringstream os;
  os << "param,constant,max_ratio,pass\n";
  for (const auto& row : report.rows) {
    os << format12(row.param) << ',' << format12(row.constant) << ',' << format12(row.max_ratio) << ','
       << (row.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string render_csv(const VerificationReport& report) {
  std::ostringstream os;
  os << "name,dev_norm,grad_norm,ratio,flagged\n";
  for (const auto& row : report.rows) {
    os << row.name << ',' << format12(row.dev_norm) << ',' << format12(row.grad_norm) << ','
       << format12(row.ratio) << ',' << (row.flagged ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string render_csv(const EstimateResult& result) {
  std::ostringstream os;
  os << "method,p,h,constant\n"
     << method_name(result.method) << ',' << format12(result.p) << ',' << format12(result.h) << ','
     << format12(result.constant) << '\n';
  return os.str();
}

std::string render_csv(const std::vector<DomainSpec>& catalog) {
  std::ostringstream os;
  os << "name,area\n";
  for (const auto& d : catalog) os << d.name << ',' << format12(d.area) << '\n';
  return os.str();
}

std::string render_witness_csv(const DiscreteFunction& witness) {
  std::ostringstream os;
  os << "x,y,value\n";
  const auto& nodes = witness.grid->nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    os << format12(nodes[i].x()) << ',' << format12(nodes[i].y()) << ','
       << format12(witness.values[static_cast<Eigen::Index>(i)]) << '\n';
  }
  return os.str();
}

void write_report(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError("cannot write '" + *path + "'");
  file << text;
  file.flush();
  if (!file) throw OutputError("cannot write '" + *path + "'");
}

}  // namespace poincare::cli
