#pragma once

// Uniform periodic grids on (-L, L) (1D) or (-Lx, Lx) x (-Ly, Ly) (2D),
// discrete Fourier transforms and radial Fourier multipliers.
//
// Storage convention: Field values are an Eigen array with one row per y
// sample and one column per x sample; 1D fields are a single row.
// Sample j sits at x_j = -L + j h = (j - N/2) h. Mode index k maps to the
// signed index j(k) = k for k < N/2 and k - N otherwise, with wavenumber
// pi j / L.

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "xdiff/errors.hpp"

namespace xdiff {

using Eigen::Index;

template <typename Scalar>
using Array2 = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexArray2 = Array2<std::complex<Scalar>>;

template <typename Scalar>
struct GridT {
  int dims = 1;
  Scalar lx = Scalar(1);
  Scalar ly = Scalar(0);
  Index nx = 4;
  Index ny = 1;

  /// Spectral 1D grid on (-L, L) with N samples.
  static GridT line(Scalar L, Index N) {
    GridT g{1, L, Scalar(0), N, 1};
    g.require_spectral();
    return g;
  }

  /// Spectral 2D grid on (-Lx, Lx) x (-Ly, Ly).
  static GridT plane(Scalar Lx, Scalar Ly, Index Nx, Index Ny) {
    GridT g{2, Lx, Ly, Nx, Ny};
    g.require_spectral();
    return g;
  }

  static GridT square(Scalar L, Index N) { return plane(L, L, N, N); }

  /// Unit-spacing pixel grid. No spectral requirements are checked, so odd
  /// or tiny sizes are allowed (image files, CSV signals).
  static GridT pixels(Index width, Index height) {
    if (width < 1 || height < 1) throw InvalidGrid("pixel grid needs positive size");
    if (height == 1) return GridT{1, Scalar(width) / Scalar(2), Scalar(0), width, 1};
    return GridT{2, Scalar(width) / Scalar(2), Scalar(height) / Scalar(2), width, height};
  }

  Scalar hx() const { return Scalar(2) * lx / Scalar(nx); }
  Scalar hy() const { return dims == 2 ? Scalar(2) * ly / Scalar(ny) : Scalar(1); }
  Scalar x(Index j) const { return Scalar(j - nx / 2) * hx(); }
  Scalar y(Index k) const { return dims == 2 ? Scalar(k - ny / 2) * hy() : Scalar(0); }
  Index size() const { return nx * ny; }
  /// Area (2D) or length (1D) element of one sample.
  Scalar cell() const { return dims == 2 ? hx() * hy() : hx(); }

  bool is_spectral() const {
    auto axis_ok = [](Scalar L, Index n) { return L > Scalar(0) && n >= 4 && n % 2 == 0; };
    if (dims == 1) return ny == 1 && axis_ok(lx, nx);
    return dims == 2 && axis_ok(lx, nx) && axis_ok(ly, ny);
  }

  void require_spectral() const {
    if (!is_spectral()) {
      throw InvalidGrid("grid must have L > 0 and an even number (>= 4) of samples per axis");
    }
  }

  bool is_square() const { return dims == 2 && nx == ny && lx == ly; }

  bool operator==(const GridT&) const = default;
};

using Grid = GridT<double>;

template <typename Scalar>
struct FieldT {
  GridT<Scalar> grid;
  Array2<Scalar> values;

  FieldT() = default;
  FieldT(const GridT<Scalar>& g, Array2<Scalar> v) : grid(g), values(std::move(v)) {
    if (values.rows() != grid.ny || values.cols() != grid.nx) {
      throw std::invalid_argument("field values do not match grid shape");
    }
  }

  static FieldT zeros(const GridT<Scalar>& g) {
    return FieldT(g, Array2<Scalar>::Zero(g.ny, g.nx));
  }

  static FieldT constant(const GridT<Scalar>& g, Scalar c) {
    return FieldT(g, Array2<Scalar>::Constant(g.ny, g.nx, c));
  }

  /// Samples fn(x, y) at every grid point (y = 0 in 1D).
  template <typename Fn>
  static FieldT sample(const GridT<Scalar>& g, Fn&& fn) {
    Array2<Scalar> v(g.ny, g.nx);
    for (Index k = 0; k < g.ny; ++k) {
      for (Index j = 0; j < g.nx; ++j) v(k, j) = fn(g.x(j), g.y(k));
    }
    return FieldT(g, std::move(v));
  }

  /// Field on a unit-spacing pixel grid; rows are y.
  static FieldT from_values(Array2<Scalar> v) {
    const auto g = GridT<Scalar>::pixels(v.cols(), v.rows());
    return FieldT(g, std::move(v));
  }

  bool all_finite() const { return values.isFinite().all(); }
};

using Field = FieldT<double>;

template <typename Scalar>
struct SpectralFieldT {
  GridT<Scalar> grid;
  ComplexArray2<Scalar> coefficients;
};

using SpectralField = SpectralFieldT<double>;

namespace detail {

// Unnormalized forward / 1/N-normalized inverse DFT along every axis of
// length > 1.
template <typename Scalar>
void dft_axes(ComplexArray2<Scalar>& data, bool inverse) {
  Eigen::FFT<Scalar> fft;
  std::vector<std::complex<Scalar>> in, out;
  auto run = [&](Index n, auto&& load, auto&& store) {
    in.resize(static_cast<size_t>(n));
    load();
    if (inverse) {
      fft.inv(out, in);
    } else {
      fft.fwd(out, in);
    }
    store();
  };
  if (data.rows() > 1) {
    for (Index c = 0; c < data.cols(); ++c) {
      run(data.rows(),
          [&] { for (Index r = 0; r < data.rows(); ++r) in[r] = data(r, c); },
          [&] { for (Index r = 0; r < data.rows(); ++r) data(r, c) = out[r]; });
    }
  }
  if (data.cols() > 1) {
    for (Index r = 0; r < data.rows(); ++r) {
      run(data.cols(),
          [&] { for (Index c = 0; c < data.cols(); ++c) in[c] = data(r, c); },
          [&] { for (Index c = 0; c < data.cols(); ++c) data(r, c) = out[c]; });
    }
  }
}

inline Index signed_mode(Index k, Index n) { return k < n / 2 ? k : k - n; }

}  // namespace detail

/// Angular wavenumbers pi j / L in DFT storage order.
template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> wavenumbers(Scalar L, Index n) {
  Eigen::Array<Scalar, Eigen::Dynamic, 1> w(n);
  const Scalar pi = Scalar(EIGEN_PI);
  for (Index k = 0; k < n; ++k) w(k) = pi * Scalar(detail::signed_mode(k, n)) / L;
  return w;
}

template <typename Scalar>
SpectralFieldT<Scalar> forward_dft(const FieldT<Scalar>& f) {
  f.grid.require_spectral();
  SpectralFieldT<Scalar> out{f.grid, f.values.template cast<std::complex<Scalar>>()};
  detail::dft_axes(out.coefficients, false);
  return out;
}

/// Inverse DFT keeping the complex result.
template <typename Scalar>
ComplexArray2<Scalar> inverse_dft_complex(const SpectralFieldT<Scalar>& F) {
  F.grid.require_spectral();
  ComplexArray2<Scalar> data = F.coefficients;
  detail::dft_axes(data, true);
  return data;
}

/// Real part of a complex sample array. Throws NonRealResult when the
/// imaginary residue exceeds 1e-12 of the RMS magnitude of the data.
template <typename Scalar>
Array2<Scalar> checked_real(const ComplexArray2<Scalar>& data) {
  using std::sqrt;
  const Scalar rms = sqrt(data.abs2().mean());
  const Scalar residue = data.imag().abs().maxCoeff();
  if (residue > Scalar(1e-12) * rms) {
    throw NonRealResult("inverse transform is not real (imaginary residue " +
                        std::to_string(static_cast<double>(residue)) + ")");
  }
  return data.real();
}

template <typename Scalar>
FieldT<Scalar> inverse_dft(const SpectralFieldT<Scalar>& F) {
  return FieldT<Scalar>(F.grid, checked_real(inverse_dft_complex(F)));
}

/// |xi| for every mode, laid out like the DFT coefficients.
template <typename Scalar>
Array2<Scalar> frequency_magnitudes(const GridT<Scalar>& g) {
  g.require_spectral();
  const auto wx = wavenumbers(g.lx, g.nx);
  Array2<Scalar> out(g.ny, g.nx);
  if (g.dims == 1) {
    out.row(0) = wx.abs().transpose();
    return out;
  }
  const auto wy = wavenumbers(g.ly, g.ny);
  for (Index c = 0; c < g.nx; ++c) {
    for (Index r = 0; r < g.ny; ++r) out(r, c) = std::hypot(wx(c), wy(r));
  }
  return out;
}

/// Applies a real multiplier m(|xi|) to f in Fourier space.
template <typename Scalar, typename Fn>
FieldT<Scalar> apply_radial_multiplier(const FieldT<Scalar>& f, Fn&& multiplier) {
  auto F = forward_dft(f);
  const auto mags = frequency_magnitudes(f.grid);
  F.coefficients *= mags.unaryExpr([&](Scalar xi) { return Scalar(multiplier(xi)); })
                        .template cast<std::complex<Scalar>>();
  return inverse_dft(F);
}

/// scale * (-(-Delta)^{p/2}) f, i.e. multiplier -scale |xi|^p.
template <typename Scalar>
FieldT<Scalar> fractional_laplacian(const FieldT<Scalar>& f, Scalar p, Scalar scale = Scalar(1)) {
  if (!(p > Scalar(0))) throw std::invalid_argument("fractional_laplacian: p must be > 0");
  return apply_radial_multiplier(f, [&](Scalar xi) { return -scale * std::pow(xi, p); });
}

template <typename Scalar>
FieldT<Scalar> spectral_laplacian(const FieldT<Scalar>& f) {
  return fractional_laplacian(f, Scalar(2), Scalar(1));
}

/// Spectral partial derivative along x (axis 0) or y (axis 1); real part of
/// the inverse transform of i*omega*f_hat.
template <typename Scalar>
FieldT<Scalar> spectral_derivative(const FieldT<Scalar>& f, int axis) {
  auto F = forward_dft(f);
  const auto& g = f.grid;
  const std::complex<Scalar> i(0, 1);
  if (axis == 0) {
    const auto wx = wavenumbers(g.lx, g.nx);
    for (Index c = 0; c < g.nx; ++c) F.coefficients.col(c) *= i * wx(c);
  } else {
    if (g.dims != 2) throw std::invalid_argument("y derivative needs a 2D grid");
    const auto wy = wavenumbers(g.ly, g.ny);
    for (Index r = 0; r < g.ny; ++r) F.coefficients.row(r) *= i * wy(r);
  }
  return FieldT<Scalar>(g, inverse_dft_complex(F).real());
}

template <typename Scalar>
FieldT<Scalar> spectral_gradient_magnitude(const FieldT<Scalar>& f) {
  const auto gx = spectral_derivative(f, 0);
  if (f.grid.dims == 1) return FieldT<Scalar>(f.grid, gx.values.abs());
  const auto gy = spectral_derivative(f, 1);
  return FieldT<Scalar>(f.grid, (gx.values.square() + gy.values.square()).sqrt());
}

/// Counter-clockwise quarter turn about the origin x = y = 0 of a square
/// grid: g(x, y) = f(y, -x), exact on the periodic sample lattice.
template <typename Scalar>
FieldT<Scalar> rot90(const FieldT<Scalar>& f) {
  const auto& g = f.grid;
  if (g.dims != 2 || g.nx != g.ny) throw std::invalid_argument("rot90 needs a square 2D grid");
  const Index n = g.nx;
  Array2<Scalar> out(n, n);
  for (Index iy = 0; iy < n; ++iy) {
    for (Index ix = 0; ix < n; ++ix) out(iy, ix) = f.values((n - ix) % n, iy);
  }
  return FieldT<Scalar>(g, std::move(out));
}

}  // namespace xdiff
