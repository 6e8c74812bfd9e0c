#pragma once

#include "nuctrace/euclid/fio.hpp"
#include "nuctrace/numerics/interpolation.hpp"

namespace nuctrace::quantize {

using euclid::EuclideanSymbol;
using numerics::Extension;
using numerics::GridPtr;
using numerics::SampledField;

class TauParameter {
 public:
  explicit TauParameter(double tau);
  double value() const { return tau_; }

 private:
  double tau_;
};

inline const TauParameter kWeyl{0.5};
inline const TauParameter kKohnNirenberg{1.0};

// Smallest s <= 8 with s*t an integer, else 1. Integration grids with spacing
// s*h keep x + t*z on the nodes of a grid of spacing h.
std::size_t alignment_stride(double t);

// Integration grid for the auxiliary variable z: spacing stride * x-step on
// every axis, extent twice the x-box, centred at 0.
GridPtr z_grid_for(const numerics::UniformGrid& x_grid, std::size_t stride);

// Discretization of sigma^tau(x,D) on f_grid:
// M[i][j] = w(y_j) sum_xi w(xi) e^{2 pi i (x_i - y_j).xi} sigma(tau x_i + (1-tau) y_j, xi).
numerics::DenseComplexMatrix tau_matrix(const EuclideanSymbol& sigma, TauParameter tau, const GridPtr& f_grid,
                                        Extension ext = Extension::zero);

SampledField tau_apply(const EuclideanSymbol& sigma, TauParameter tau, const SampledField& f,
                       Extension ext = Extension::zero);

// a(x,xi) = sum_z sum_eta w e^{-2 pi i (xi - eta).z} b(x + (tau' - tau) z, eta), so
// that a^tau = b^{tau'}.
EuclideanSymbol tau_convert(const EuclideanSymbol& b, TauParameter tau, TauParameter tau_prime,
                            Extension ext = Extension::zero);

// W(h,g)(x,xi) = sum_z w(z) e^{-2 pi i z.xi} h(x + z/2) conj(g(x - z/2))
EuclideanSymbol wigner(const SampledField& h, const SampledField& g, const GridPtr& xi_grid);

// a(x,xi) = sum_k sum_z w(z) e^{-2 pi i z.xi} h_k(x + (1-tau) z) g_k(x - tau z)
EuclideanSymbol weyl_symbol_from_decomposition(const nuclear::RankOneSequence& d, TauParameter tau,
                                               const GridPtr& xi_grid);

// sum_x sum_xi w(x) w(xi) a(x,xi)
cplx phase_space_integral(const EuclideanSymbol& a);

}  // namespace nuctrace::quantize
