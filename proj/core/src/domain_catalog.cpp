#include <poincare/domain_catalog.hpp>
#include <poincare/error.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace poincare {
namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
  Params defaults;
};

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> table = {
      {Family::unit_square, "unit_square", {}},
      {Family::rectangle, "rectangle", {{"width", 2.0}, {"height", 1.0}}},
      {Family::disk, "disk", {{"radius", 1.0}}},
      {Family::power_cusp, "power_cusp", {{"k", 2.0}}},
      {Family::dumbbell, "dumbbell", {{"delta", 0.2}}},
      {Family::rooms_passages, "rooms_passages", {{"delta", 0.2}}},
      {Family::two_squares_disjoint, "two_squares_disjoint", {}},
  };
  return table;
}

const FamilyInfo& info(Family f) {
  for (const auto& entry : families()) {
    if (entry.family == f) return entry;
  }
  throw CatalogError("unknown family");
}

Box make_box(double x0, double y0, double x1, double y1) { return Box{Vec2(x0, y0), Vec2(x1, y1)}; }

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

Box bounding_box(const std::vector<Box>& parts) {
  Box out = parts.front();
  for (const auto& b : parts) {
    out.lo = out.lo.cwiseMin(b.lo);
    out.hi = out.hi.cwiseMax(b.hi);
  }
  return out;
}

// Chain of three rooms of sides 1, 1/2, 1/4 on the line y = 1/2. Each passage
// runs between the centers of the rooms it joins and has width delta times
// the side of the larger room.
std::vector<Box> rooms_layout(double delta) {
  return {
      make_box(0.0, 0.0, 1.0, 1.0),
      make_box(1.25, 0.25, 1.75, 0.75),
      make_box(1.875, 0.375, 2.125, 0.625),
      make_box(0.5, 0.5 - delta / 2.0, 1.5, 0.5 + delta / 2.0),
      make_box(1.5, 0.5 - delta / 4.0, 2.0, 0.5 + delta / 4.0),
  };
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& entry : families()) names.emplace_back(entry.name);
  return names;
}

Family family_from_name(std::string_view name) {
  for (const auto& entry : families()) {
    if (entry.name == name) return entry.family;
  }
  throw CatalogError("unknown domain '" + std::string(name) + "'");
}

std::string_view family_name(Family f) { return info(f).name; }

std::string sweep_parameter(Family f) {
  switch (f) {
    case Family::rectangle: return "width";
    case Family::disk: return "radius";
    case Family::power_cusp: return "k";
    case Family::dumbbell:
    case Family::rooms_passages: return "delta";
    default: return {};
  }
}

double DomainSpec::param(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ValidationError("domain '" + name + "' has no parameter '" + key + "'");
  return it->second;
}

bool DomainSpec::contains(const Vec2& p) const {
  switch (family) {
    case Family::disk: {
      const double r = params.at("radius");
      return p.squaredNorm() < r * r;
    }
    case Family::power_cusp: {
      const double x = p.x();
      return x > 0.0 && x < 1.0 && std::abs(p.y()) < std::pow(x, params.at("k"));
    }
    default:
      return std::any_of(parts.begin(), parts.end(), [&](const Box& b) { return b.contains(p); });
  }
}

DomainSpec instantiate(std::string_view name, const Params& params) {
  const Family family = family_from_name(name);
  const FamilyInfo& fi = info(family);

  DomainSpec d;
  d.name = std::string(name);
  d.family = family;
  d.params = fi.defaults;
  for (const auto& [key, value] : params) {
    if (!fi.defaults.contains(key)) {
      throw ValidationError("domain '" + d.name + "' has no parameter '" + key + "'");
    }
    require(std::isfinite(value), "parameter '" + key + "' must be finite");
    d.params[key] = value;
  }

  switch (family) {
    case Family::unit_square:
      d.parts = {make_box(0, 0, 1, 1)};
      d.area = 1.0;
      break;
    case Family::rectangle: {
      const double w = d.params["width"], h = d.params["height"];
      require(w > 0.0 && h > 0.0, "rectangle: width and height must be positive");
      d.parts = {make_box(0, 0, w, h)};
      d.area = w * h;
      break;
    }
    case Family::disk: {
      const double r = d.params["radius"];
      require(r > 0.0, "disk: radius must be positive");
      d.bbox = make_box(-r, -r, r, r);
      d.area = std::numbers::pi * r * r;
      break;
    }
    case Family::power_cusp: {
      const double k = d.params["k"];
      require(k >= 1.5, "power_cusp: exponent k must be >= 1.5");
      d.bbox = make_box(0, -1, 1, 1);
      d.area = 2.0 / (k + 1.0);
      d.tip = Vec2(0.0, 0.0);
      break;
    }
    case Family::dumbbell: {
      const double delta = d.params["delta"];
      require(delta > 0.0 && delta <= 0.5, "dumbbell: delta must lie in (0, 0.5]");
      d.parts = {make_box(0, 0, 1, 1), make_box(1.5, 0, 2.5, 1),
                 make_box(0.5, 0.5 - delta / 2, 2.0, 0.5 + delta / 2)};
      d.area = 2.0 + 0.5 * delta;
      break;
    }
    case Family::rooms_passages: {
      const double delta = d.params["delta"];
      require(delta > 0.0 && delta <= 0.5, "rooms_passages: delta must lie in (0, 0.5]");
      d.parts = rooms_layout(delta);
      break;
    }
    case Family::two_squares_disjoint:
      d.parts = {make_box(0, 0, 1, 1), make_box(1.5, 0, 2.5, 1)};
      break;
  }
  if (!d.parts.empty()) d.bbox = bounding_box(d.parts);

  if (family == Family::rooms_passages || family == Family::two_squares_disjoint) {
    const AreaEstimate mc = monte_carlo_area(d, 100000, 0);
    d.area = mc.value;
    d.area_stderr = mc.stderr_;
    d.area_analytic = false;
  }
  return d;
}

double area(const DomainSpec& domain) { return domain.area; }

AreaEstimate monte_carlo_area(const DomainSpec& domain, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("monte_carlo_area: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(domain.bbox.lo.x(), domain.bbox.hi.x());
  std::uniform_real_distribution<double> uy(domain.bbox.lo.y(), domain.bbox.hi.y());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    if (domain.contains(Vec2(x, y))) ++hits;
  }
  const double q = static_cast<double>(hits) / static_cast<double>(n);
  const double box = domain.bbox.area();
  return AreaEstimate{q * box, box * std::sqrt(q * (1.0 - q) / static_cast<double>(n)), q};
}

PointSample sample_interior(const DomainSpec& domain, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("sample_interior: n must be >= 1");
  constexpr double kMinAcceptance = 1e-4;
  constexpr std::size_t kWarmup = 100000;

  PointSample out;
  out.seed = seed;
  out.count = n;
  out.points.reserve(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(domain.bbox.lo.x(), domain.bbox.hi.x());
  std::uniform_real_distribution<double> uy(domain.bbox.lo.y(), domain.bbox.hi.y());
  while (out.points.size() < n) {
    const double x = ux(rng);
    const double y = uy(rng);
    ++out.trials;
    const Vec2 p(x, y);
    if (domain.contains(p)) out.points.push_back(p);
    if (out.trials >= kWarmup &&
        static_cast<double>(out.points.size()) < kMinAcceptance * static_cast<double>(out.trials)) {
      throw DegenerateDomainError("sample_interior: acceptance rate below 1e-4 on '" + domain.name + "'");
    }
  }
  return out;
}

bool connectivity_check(const DomainSpec& domain, double resolution) {
  if (!(resolution > 0.0)) throw ValidationError("connectivity_check: resolution must be positive");
  const Box& bb = domain.bbox;
  const auto nx = static_cast<std::size_t>(std::ceil(bb.width() / resolution - 1e-9));
  const auto ny = static_cast<std::size_t>(std::ceil(bb.height() / resolution - 1e-9));

  std::vector<char> inside(nx * ny, 0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const Vec2 c = bb.lo + resolution * Vec2(static_cast<double>(i) + 0.5, static_cast<double>(j) + 0.5);
      if (domain.contains(c)) {
        inside[i * ny + j] = 1;
        ++count;
      }
    }
  }
  if (count == 0) throw ResolutionError("connectivity_check: no interior cell at this resolution");

  const auto start = static_cast<std::size_t>(std::find(inside.begin(), inside.end(), 1) - inside.begin());
  std::vector<char> seen(inside.size(), 0);
  std::vector<std::size_t> stack{start};
  seen[start] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const std::size_t idx = stack.back();
    stack.pop_back();
    ++reached;
    const std::size_t i = idx / ny, j = idx % ny;
    std::array<std::size_t, 4> nbr{};
    std::size_t m = 0;
    if (i > 0) nbr[m++] = idx - ny;
    if (i + 1 < nx) nbr[m++] = idx + ny;
    if (j > 0) nbr[m++] = idx - 1;
    if (j + 1 < ny) nbr[m++] = idx + 1;
    for (std::size_t k = 0; k < m; ++k) {
      if (inside[nbr[k]] && !seen[nbr[k]]) {
        seen[nbr[k]] = 1;
        stack.push_back(nbr[k]);
      }
    }
  }
  return reached == count;
}

}  // namespace poincare
