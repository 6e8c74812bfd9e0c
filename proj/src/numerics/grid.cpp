#include "nuctrace/numerics/grid.hpp"

#include <cmath>
#include <sstream>

#include "nuctrace/error.hpp"
#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::numerics {

double Axis::step() const {
  switch (kind) {
    case AxisKind::closed:
      return (hi - lo) / static_cast<double>(count - 1);
    case AxisKind::periodic:
      return (hi - lo) / static_cast<double>(count);
    case AxisKind::counting:
      return 1.0;
  }
  return 0.0;
}

double Axis::node(std::size_t i) const {
  if (kind == AxisKind::closed && i + 1 == count) return hi;
  return lo + static_cast<double>(i) * step();
}

double Axis::weight(std::size_t i) const {
  switch (kind) {
    case AxisKind::closed: {
      const double h = step();
      return (i == 0 || i + 1 == count) ? 0.5 * h : h;
    }
    case AxisKind::periodic:
      return step();
    case AxisKind::counting:
      return 1.0;
  }
  return 0.0;
}

double Axis::measure() const {
  return kind == AxisKind::counting ? static_cast<double>(count) : hi - lo;
}

namespace {

void validate_axis(const Axis& a, std::size_t d) {
  std::ostringstream msg;
  if (!std::isfinite(a.lo) || !std::isfinite(a.hi)) {
    msg << "axis " << d << ": non-finite bounds";
    throw GridError(msg.str());
  }
  if (a.kind == AxisKind::counting) {
    if (a.count < 1 || std::floor(a.lo) != a.lo ||
        a.hi - a.lo + 1.0 != static_cast<double>(a.count)) {
      msg << "axis " << d << ": counting axis must list the integers lo..hi";
      throw GridError(msg.str());
    }
    return;
  }
  if (!(a.hi > a.lo)) {
    msg << "axis " << d << ": need hi > lo, got [" << a.lo << ", " << a.hi << "]";
    throw GridError(msg.str());
  }
  if (a.count < 2) {
    msg << "axis " << d << ": need at least 2 nodes, got " << a.count;
    throw GridError(msg.str());
  }
}

}  // namespace

UniformGrid::UniformGrid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw DimensionError("grid needs at least one axis");
  std::size_t total = 1;
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    validate_axis(axes_[d], d);
    total *= axes_[d].count;
  }
  const std::size_t n = axes_.size();
  nodes_.resize(total * n);
  weights_.resize(total);
  std::vector<std::size_t> idx(n, 0);
  CompensatedSum mass;
  for (std::size_t i = 0; i < total; ++i) {
    double w = 1.0;
    for (std::size_t d = 0; d < n; ++d) {
      nodes_[i * n + d] = axes_[d].node(idx[d]);
      w *= axes_[d].weight(idx[d]);
    }
    weights_[i] = w;
    mass.add(w);
    for (std::size_t d = n; d-- > 0;) {
      if (++idx[d] < axes_[d].count) break;
      idx[d] = 0;
    }
  }
  if (std::abs(mass.value() - volume()) > 1e-12 * volume()) {
    throw InvariantError("quadrature weights do not sum to the box volume");
  }
}

UniformGrid UniformGrid::box(std::size_t dimension, double lo, double hi, std::size_t count) {
  return UniformGrid(std::vector<Axis>(dimension, Axis{lo, hi, count, AxisKind::closed}));
}

UniformGrid UniformGrid::torus(std::size_t dimension, std::size_t count) {
  return UniformGrid(std::vector<Axis>(dimension, Axis{0.0, 1.0, count, AxisKind::periodic}));
}

UniformGrid UniformGrid::lattice(std::size_t dimension, int radius) {
  if (radius < 0) throw DomainError("lattice radius must be >= 0");
  const auto count = static_cast<std::size_t>(2 * radius + 1);
  return UniformGrid(std::vector<Axis>(
      dimension, Axis{-static_cast<double>(radius), static_cast<double>(radius), count,
                      AxisKind::counting}));
}

double UniformGrid::volume() const {
  double v = 1.0;
  for (const auto& a : axes_) v *= a.measure();
  return v;
}

std::size_t UniformGrid::flat_index(std::span<const std::size_t> multi) const {
  std::size_t flat = 0;
  for (std::size_t d = 0; d < axes_.size(); ++d) flat = flat * axes_[d].count + multi[d];
  return flat;
}

void UniformGrid::multi_index(std::size_t flat, std::span<std::size_t> out) const {
  for (std::size_t d = axes_.size(); d-- > 0;) {
    out[d] = flat % axes_[d].count;
    flat /= axes_[d].count;
  }
}

UniformGrid product(const UniformGrid& a, const UniformGrid& b) {
  std::vector<Axis> axes = a.axes();
  axes.insert(axes.end(), b.axes().begin(), b.axes().end());
  return UniformGrid(std::move(axes));
}

}  // namespace nuctrace::numerics
