#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace nuctrace::numerics {

// How an axis discretizes its interval.
//   closed   - count nodes including both endpoints, composite trapezoid weights
//   periodic - count nodes lo + i*h with h = (hi-lo)/count, equal weights h
//   counting - the integers lo..hi with unit weights (a window of Z)
enum class AxisKind { closed, periodic, counting };

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t count = 2;
  AxisKind kind = AxisKind::closed;

  double step() const;
  double node(std::size_t i) const;
  double weight(std::size_t i) const;
  // Lebesgue measure of [lo, hi] (closed/periodic) or the number of points
  // (counting).
  double measure() const;

  bool operator==(const Axis&) const = default;
};

// Tensor-product grid with product quadrature weights. Nodes are stored
// row-major: the last axis varies fastest.
class UniformGrid {
 public:
  explicit UniformGrid(std::vector<Axis> axes);

  static UniformGrid box(std::size_t dimension, double lo, double hi, std::size_t count);
  static UniformGrid torus(std::size_t dimension, std::size_t count);
  static UniformGrid lattice(std::size_t dimension, int radius);

  std::size_t dimension() const { return axes_.size(); }
  std::size_t size() const { return weights_.size(); }
  const Axis& axis(std::size_t d) const { return axes_[d]; }
  const std::vector<Axis>& axes() const { return axes_; }

  std::span<const double> node(std::size_t i) const {
    return {nodes_.data() + i * axes_.size(), axes_.size()};
  }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  // Product of the axis measures.
  double volume() const;

  std::size_t flat_index(std::span<const std::size_t> multi) const;
  void multi_index(std::size_t flat, std::span<std::size_t> out) const;

  bool operator==(const UniformGrid& other) const { return axes_ == other.axes_; }

 private:
  std::vector<Axis> axes_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const UniformGrid>;

inline GridPtr make_grid(UniformGrid g) { return std::make_shared<const UniformGrid>(std::move(g)); }

// Cartesian product grid (axes of a followed by axes of b).
UniformGrid product(const UniformGrid& a, const UniformGrid& b);

}  // namespace nuctrace::numerics
