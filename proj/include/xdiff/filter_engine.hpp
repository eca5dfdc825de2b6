#pragma once

// Linear cross-diffusion filtering of a two-component image (u, v):
//   (u_hat, v_hat)(xi, t) = exp(-t |xi|^p d) (u_hat, v_hat)(xi, 0),
// evaluated in closed form per Fourier mode, plus the scalar multiplier
// oracles it is checked against.

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include "xdiff/errors.hpp"
#include "xdiff/grid_transform.hpp"
#include "xdiff/spectral_core.hpp"

namespace xdiff {

/// How a grey image f is split into (u0, v0).
enum class InitialKind {
  Plain = 0,              // (f, 0)
  Gradient = 1,           // (f, |grad f|)
  GradientLaplacian = 2,  // (f, -|grad f| * Laplacian f)
};

inline InitialKind initial_kind_from_int(int k) {
  if (k < 0 || k > 2) throw UnknownKind("initial distribution kind must be 0, 1 or 2");
  return static_cast<InitialKind>(k);
}

template <typename Scalar>
struct FilterConfigT {
  DiffusionMatrix<Scalar> d;
  Scalar p;
  InitialKind initial_kind;
  GridT<Scalar> grid;

  FilterConfigT(DiffusionMatrix<Scalar> d_, Scalar p_, InitialKind kind, GridT<Scalar> g)
      : d(std::move(d_)), p(p_), initial_kind(kind), grid(std::move(g)) {
    using std::isfinite;
    if (!isfinite(p) || !(p > Scalar(0))) throw std::invalid_argument("p must be > 0");
    grid.require_spectral();
  }
};

using FilterConfig = FilterConfigT<double>;

template <typename Scalar>
struct FieldPairT {
  FieldT<Scalar> u;
  FieldT<Scalar> v;

  FieldPairT(FieldT<Scalar> u_, FieldT<Scalar> v_) : u(std::move(u_)), v(std::move(v_)) {
    if (!(u.grid == v.grid)) throw std::invalid_argument("field pair components differ in grid");
  }

  const GridT<Scalar>& grid() const { return u.grid; }
};

using FieldPair = FieldPairT<double>;

template <typename Scalar>
FieldPairT<Scalar> initial_distribution(const FieldT<Scalar>& f, InitialKind kind) {
  if (!f.all_finite()) throw std::invalid_argument("initial_distribution: non-finite input");
  switch (kind) {
    case InitialKind::Plain:
      return {f, FieldT<Scalar>::zeros(f.grid)};
    case InitialKind::Gradient:
      return {f, spectral_gradient_magnitude(f)};
    case InitialKind::GradientLaplacian: {
      const auto grad = spectral_gradient_magnitude(f);
      const auto lap = spectral_laplacian(f);
      return {f, FieldT<Scalar>(f.grid, -grad.values * lap.values)};
    }
  }
  throw UnknownKind("unknown initial distribution kind");
}

/// Holds the transformed initial pair so that u(t) can be evaluated at any
/// number of times without re-transforming the input. Each evaluation uses
/// the exact symbol at t; no time stepping is involved.
template <typename Scalar>
class CrossDiffusionFilter {
 public:
  CrossDiffusionFilter(const FieldPairT<Scalar>& pair0, DiffusionMatrix<Scalar> d, Scalar p)
      : d_(std::move(d)),
        p_(p),
        grid_(pair0.grid()),
        u_hat_(forward_dft(pair0.u).coefficients),
        v_hat_(forward_dft(pair0.v).coefficients),
        xi_pow_(frequency_magnitudes(grid_).pow(p)) {
    if (!(p > Scalar(0))) throw std::invalid_argument("p must be > 0");
  }

  FieldPairT<Scalar> at(Scalar t) const {
    using std::isfinite;
    if (!isfinite(t) || t < Scalar(0)) throw std::invalid_argument("evolve: t must be >= 0");
    ComplexArray2<Scalar> u_t(grid_.ny, grid_.nx), v_t(grid_.ny, grid_.nx);
    for (Index c = 0; c < grid_.nx; ++c) {
      for (Index r = 0; r < grid_.ny; ++r) {
        const Matrix2<Scalar> k = matrix_exponent(d_, t * xi_pow_(r, c));
        const auto uh = u_hat_(r, c), vh = v_hat_(r, c);
        u_t(r, c) = k(0, 0) * uh + k(0, 1) * vh;
        v_t(r, c) = k(1, 0) * uh + k(1, 1) * vh;
      }
    }
    return {inverse_dft(SpectralFieldT<Scalar>{grid_, std::move(u_t)}),
            inverse_dft(SpectralFieldT<Scalar>{grid_, std::move(v_t)})};
  }

  const GridT<Scalar>& grid() const { return grid_; }
  const DiffusionMatrix<Scalar>& d() const { return d_; }
  Scalar p() const { return p_; }

 private:
  DiffusionMatrix<Scalar> d_;
  Scalar p_;
  GridT<Scalar> grid_;
  ComplexArray2<Scalar> u_hat_;
  ComplexArray2<Scalar> v_hat_;
  Array2<Scalar> xi_pow_;
};

template <typename Scalar>
FieldPairT<Scalar> evolve(const FieldPairT<Scalar>& pair0, const FilterConfigT<Scalar>& cfg, Scalar t) {
  if (!(pair0.grid() == cfg.grid)) throw std::invalid_argument("evolve: pair grid differs from config grid");
  return CrossDiffusionFilter<Scalar>(pair0, cfg.d, cfg.p).at(t);
}

/// D (u, v) = -(-Delta)^{p/2} (d11 u + d12 v, d21 u + d22 v).
template <typename Scalar>
FieldPairT<Scalar> apply_generator(const FieldPairT<Scalar>& pair, const DiffusionMatrix<Scalar>& d, Scalar p) {
  const auto& g = pair.grid();
  FieldT<Scalar> mixed_u(g, d.d11() * pair.u.values + d.d12() * pair.v.values);
  FieldT<Scalar> mixed_v(g, d.d21() * pair.u.values + d.d22() * pair.v.values);
  return {fractional_laplacian(mixed_u, p), fractional_laplacian(mixed_v, p)};
}

/// v(., t) / d21 for the evolution of (f, 0): the edge channel.
template <typename Scalar>
FieldT<Scalar> edge_map(const FieldT<Scalar>& f, const FilterConfigT<Scalar>& cfg, Scalar t) {
  if (cfg.d.d21() == Scalar(0)) throw ZeroCouplingError("edge_map needs d21 != 0");
  if (cfg.initial_kind != InitialKind::Plain) {
    throw std::invalid_argument("edge_map is defined for the (f, 0) initial distribution");
  }
  if (!(t > Scalar(0))) throw std::invalid_argument("edge_map: t must be > 0");
  auto v = evolve(initial_distribution(f, InitialKind::Plain), cfg, t).v;
  v.values /= cfg.d.d21();
  return v;
}

/// Scalar smoothing e^{(q/2) t A} f, multiplier exp(-(q/2) t |xi|^p).
template <typename Scalar>
FieldT<Scalar> smoothing_oracle(const FieldT<Scalar>& f, Scalar q, Scalar p, Scalar t) {
  using std::exp;
  using std::pow;
  return apply_radial_multiplier(f, [&](Scalar xi) { return exp(-q / Scalar(2) * t * pow(xi, p)); });
}

/// t A e^{(q/2) t A} f, multiplier -t |xi|^p exp(-(q/2) t |xi|^p).
template <typename Scalar>
FieldT<Scalar> small_theta_oracle(const FieldT<Scalar>& f, Scalar q, Scalar p, Scalar t) {
  using std::exp;
  using std::pow;
  return apply_radial_multiplier(f, [&](Scalar xi) {
    const Scalar a = t * pow(xi, p);
    return -a * exp(-q / Scalar(2) * a);
  });
}

/// Linear complex diffusion I_t = c Laplacian I with c = nu + i mu from
/// I(0) = f, returned as (Re I, Im I). Uses the complex scalar multiplier
/// exp(-c t |xi|^2) directly, independent of the matrix symbol.
template <typename Scalar>
FieldPairT<Scalar> complex_diffusion_oracle(const FieldT<Scalar>& f, Scalar nu, Scalar mu, Scalar t) {
  if (!(nu > Scalar(0))) throw std::invalid_argument("complex diffusion needs nu > 0");
  auto F = forward_dft(f);
  const auto mags = frequency_magnitudes(f.grid);
  const std::complex<Scalar> c(nu, mu);
  for (Index col = 0; col < mags.cols(); ++col) {
    for (Index row = 0; row < mags.rows(); ++row) {
      const Scalar xi = mags(row, col);
      F.coefficients(row, col) *= std::exp(-c * t * xi * xi);
    }
  }
  const auto data = inverse_dft_complex(F);
  return {FieldT<Scalar>(f.grid, data.real()), FieldT<Scalar>(f.grid, data.imag())};
}

/// Semigroup time for scale sigma: t = sigma^p.
template <typename Scalar>
Scalar scale_to_time(Scalar sigma, Scalar p) {
  using std::pow;
  if (sigma < Scalar(0) || !(p > Scalar(0))) {
    throw std::invalid_argument("scale_to_time: need sigma >= 0 and p > 0");
  }
  return pow(sigma, p);
}

}  // namespace xdiff
