#include "torcap/setspec.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace torcap {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<bool> cantor_mask_1d(std::size_t m, std::size_t levels,
                                 const std::vector<double>& ratios) {
  if (ratios.size() != levels)
    throw std::invalid_argument("set spec: cantor needs one ratio per level");
  for (double r : ratios)
    if (!(r > 0.0 && r < 0.5))
      throw std::invalid_argument("set spec: cantor ratios must lie in (0, 0.5)");
  // fractional intervals within [0, 1), refined level by level
  std::vector<std::pair<double, double>> intervals{{0.0, 1.0}};
  for (std::size_t lvl = 0; lvl < levels; ++lvl) {
    std::vector<std::pair<double, double>> next;
    next.reserve(intervals.size() * 2);
    for (auto [a, b] : intervals) {
      const double len = (b - a) * ratios[lvl];
      next.emplace_back(a, a + len);
      next.emplace_back(b - len, b);
    }
    intervals = std::move(next);
  }
  std::vector<bool> mask(m, false);
  for (auto [a, b] : intervals) {
    auto piece = arc_mask_1d(m, a * kTwoPi, b * kTwoPi);
    for (std::size_t p = 0; p < m; ++p) mask[p] = mask[p] || piece[p];
  }
  return mask;
}

// Parses a spec that must describe a single axis; returns its 1-D mask.
std::vector<bool> parse_axis_spec(const json& spec, std::size_t m, std::size_t axis) {
  const std::string type = spec.at("type").get<std::string>();
  if (type == "full") return std::vector<bool>(m, true);
  if (type == "arc") {
    if (spec.contains("dim")) {
      const auto dim = spec.at("dim").get<std::size_t>();
      if (dim != axis) throw std::invalid_argument("set spec: arc dim does not match axis");
    }
    return arc_mask_1d(m, spec.at("start").get<double>(), spec.at("end").get<double>());
  }
  if (type == "cantor") {
    return cantor_mask_1d(m, spec.at("levels").get<std::size_t>(),
                          spec.at("ratios").get<std::vector<double>>());
  }
  if (type == "union") {
    std::vector<bool> mask(m, false);
    for (const auto& part : spec.at("parts")) {
      auto pm = parse_axis_spec(part, m, axis);
      for (std::size_t p = 0; p < m; ++p) mask[p] = mask[p] || pm[p];
    }
    return mask;
  }
  throw std::invalid_argument("set spec: type '" + type + "' is not valid inside a factor");
}

GridSet parse_spec_node(const TorusGrid& grid, const json& spec) {
  const std::string type = spec.at("type").get<std::string>();
  if (type == "full") {
    return GridSet(grid, std::vector<bool>(grid.total_points(), true));
  }
  if (type == "product") {
    const auto& factors = spec.at("factors");
    if (factors.size() != grid.n)
      throw std::invalid_argument("set spec: product needs one factor per dimension");
    std::vector<std::vector<bool>> facs;
    for (std::size_t ax = 0; ax < grid.n; ++ax)
      facs.push_back(parse_axis_spec(factors[ax], grid.m, ax));
    return GridSet::from_factors(grid, std::move(facs));
  }
  if (type == "union") {
    std::vector<bool> mask(grid.total_points(), false);
    for (const auto& part : spec.at("parts")) {
      GridSet ps = parse_spec_node(grid, part);
      for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = mask[i] || ps.mask[i];
    }
    return GridSet(grid, std::move(mask));
  }
  if (type == "arc" || type == "cantor") {
    const std::size_t axis = spec.contains("dim") ? spec.at("dim").get<std::size_t>() : 0;
    if (axis >= grid.n) throw std::invalid_argument("set spec: dim out of range");
    // cylinder over the named axis: full in every other dimension
    std::vector<std::vector<bool>> facs(grid.n, std::vector<bool>(grid.m, true));
    facs[axis] = parse_axis_spec(spec, grid.m, axis);
    return GridSet::from_factors(grid, std::move(facs));
  }
  throw std::invalid_argument("set spec: unknown type '" + type + "'");
}

} // namespace

std::vector<bool> arc_mask_1d(std::size_t m, double start, double end) {
  if (!(end > start)) throw std::invalid_argument("set spec: arc needs end > start");
  if (end - start >= kTwoPi) return std::vector<bool>(m, true);
  const double cell = kTwoPi / static_cast<double>(m);
  // outer cover of [start, end): floor the left edge, ceil the right
  const long lo = static_cast<long>(std::floor(start / cell));
  const long hi = static_cast<long>(std::ceil(end / cell));
  std::vector<bool> mask(m, false);
  for (long p = lo; p <= hi; ++p) {
    long q = p % static_cast<long>(m);
    if (q < 0) q += static_cast<long>(m);
    mask[static_cast<std::size_t>(q)] = true;
  }
  return mask;
}

GridSet parse_set_spec(const TorusGrid& grid, const std::string& json_text) {
  json spec;
  try {
    spec = json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("set spec: invalid JSON: ") + e.what());
  }
  return parse_spec_node(grid, spec);
}

GridSet dilate(const GridSet& set, std::size_t radius_cells) {
  if (radius_cells == 0) return set;
  const TorusGrid& grid = set.grid;
  const std::size_t m = grid.m;
  const std::size_t r = std::min(radius_cells, m / 2);

  auto dilate_1d = [&](const std::vector<bool>& in) {
    std::vector<bool> out(m, false);
    for (std::size_t p = 0; p < m; ++p) {
      if (!in[p]) continue;
      for (std::size_t k = 0; k <= 2 * r; ++k)
        out[(p + m - r + k) % m] = true;
    }
    return out;
  };

  if (set.factors) {
    std::vector<std::vector<bool>> facs;
    for (const auto& f : *set.factors) facs.push_back(dilate_1d(f));
    return GridSet::from_factors(grid, std::move(facs));
  }

  // Chebyshev ball = successive 1-D window dilations along each axis
  std::vector<bool> mask = set.mask;
  std::size_t stride = 1;
  for (std::size_t ax = grid.n; ax-- > 0;) {
    std::vector<bool> next(mask.size(), false);
    const std::size_t total = mask.size();
    for (std::size_t i = 0; i < total; ++i) {
      if (!mask[i]) continue;
      const std::size_t p = (i / stride) % m;
      const std::size_t base = i - p * stride;
      for (std::size_t k = 0; k <= 2 * r; ++k) {
        const std::size_t q = (p + m - r + k) % m;
        next[base + q * stride] = true;
      }
    }
    mask = std::move(next);
    stride *= m;
  }
  return GridSet(grid, std::move(mask));
}

} // namespace torcap
