#include "nuctrace/numerics/interpolation.hpp"

#include <cmath>

#include "nuctrace/error.hpp"

namespace nuctrace::numerics {

namespace {

constexpr double kSnap = 1e-9;

struct AxisHit {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double t = 0.0;  // weight of hi
  bool outside = false;
};

AxisHit locate_axis(const Axis& a, double x, Extension ext) {
  AxisHit hit;
  if (a.kind == AxisKind::counting) {
    const double r = std::round(x);
    if (std::abs(x - r) > kSnap) throw GridError("interpolation on a counting axis at a non-integer point");
    if (r < a.lo || r > a.hi) {
      hit.outside = true;
      return hit;
    }
    hit.lo = hit.hi = static_cast<std::size_t>(r - a.lo);
    return hit;
  }
  const double h = a.step();
  double s = (x - a.lo) / h;
  const auto n = static_cast<double>(a.count);
  if (a.kind == AxisKind::periodic) {
    s = s - n * std::floor(s / n);
  }
  const double r = std::round(s);
  if (std::abs(s - r) <= kSnap) s = r;
  if (a.kind == AxisKind::periodic) {
    if (s >= n) s -= n;
    const auto i = static_cast<std::size_t>(std::floor(s));
    hit.lo = i;
    hit.hi = (i + 1) % a.count;
    hit.t = s - std::floor(s);
    return hit;
  }
  const double last = n - 1.0;
  if (s < 0.0 || s > last) {
    if (ext == Extension::zero) {
      hit.outside = true;
      return hit;
    }
    s = s < 0.0 ? 0.0 : last;
  }
  const auto i = static_cast<std::size_t>(std::floor(s));
  hit.lo = i;
  hit.t = s - static_cast<double>(i);
  hit.hi = hit.t > 0.0 ? i + 1 : i;
  return hit;
}

}  // namespace

Stencil locate(const UniformGrid& grid, std::span<const double> point, Extension ext) {
  if (point.size() != grid.dimension()) throw DimensionError("interpolation point has the wrong dimension");
  const std::size_t n = grid.dimension();
  std::vector<AxisHit> hits(n);
  Stencil st;
  for (std::size_t d = 0; d < n; ++d) {
    hits[d] = locate_axis(grid.axis(d), point[d], ext);
    if (hits[d].outside) {
      st.outside = true;
      return st;
    }
  }
  std::vector<std::size_t> multi(n);
  const std::size_t corners = std::size_t{1} << n;
  for (std::size_t c = 0; c < corners; ++c) {
    double w = 1.0;
    bool skip = false;
    for (std::size_t d = 0; d < n; ++d) {
      const bool upper = (c >> d) & 1U;
      const double t = hits[d].t;
      if (upper) {
        if (t == 0.0) {
          skip = true;
          break;
        }
        w *= t;
        multi[d] = hits[d].hi;
      } else {
        if (t == 1.0) {
          skip = true;
          break;
        }
        w *= 1.0 - t;
        multi[d] = hits[d].lo;
      }
    }
    if (skip) continue;
    st.index.push_back(grid.flat_index(multi));
    st.weight.push_back(w);
  }
  return st;
}

bool on_boundary(const UniformGrid& grid, std::size_t flat) {
  std::vector<std::size_t> multi(grid.dimension());
  grid.multi_index(flat, multi);
  for (std::size_t d = 0; d < grid.dimension(); ++d) {
    const Axis& a = grid.axis(d);
    if (a.kind != AxisKind::closed) continue;
    if (multi[d] == 0 || multi[d] + 1 == a.count) return true;
  }
  return false;
}

}  // namespace nuctrace::numerics
