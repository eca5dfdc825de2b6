#pragma once

// 2x2 diffusion-matrix algebra: validation, Jordan-type reduction and the
// closed-form exponential exp(-a d) that forms the filter's Fourier symbol.

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include "xdiff/errors.hpp"

namespace xdiff {

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;
using Matrix2d = Matrix2<double>;

namespace detail {

// (1 - e^{-x}) / x, accurate down to x = 0.
template <typename Scalar>
Scalar one_minus_exp_ratio(Scalar x) {
  using std::expm1;
  if (x == Scalar(0)) return Scalar(1);
  return -expm1(-x) / x;
}

// sin(x) / x, accurate down to x = 0.
template <typename Scalar>
Scalar sinc(Scalar x) {
  using std::abs;
  using std::sin;
  if (abs(x) < Scalar(1e-4)) {
    const Scalar x2 = x * x;
    return Scalar(1) - x2 / Scalar(6) * (Scalar(1) - x2 / Scalar(20));
  }
  return sin(x) / x;
}

}  // namespace detail

/// Positive-definite (not necessarily symmetric) 2x2 matrix d together with
/// the derived quantities r = d22 - d11, s = r^2 + 4 d12 d21, q = tr d.
///
/// Construction validates d11 > 0 and 4 d11 d22 - (d12 + d21)^2 > 0 and
/// throws PositiveDefinitenessViolation otherwise.
template <typename Scalar>
class DiffusionMatrix {
 public:
  DiffusionMatrix(Scalar d11, Scalar d12, Scalar d21, Scalar d22)
      : d_((Matrix2<Scalar>() << d11, d12, d21, d22).finished()) {
    using std::isfinite;
    if (!isfinite(d11) || !isfinite(d12) || !isfinite(d21) || !isfinite(d22)) {
      throw std::invalid_argument("diffusion matrix entries must be finite");
    }
    const Scalar sym = d12 + d21;
    if (!(d11 > Scalar(0)) || !(Scalar(4) * d11 * d22 - sym * sym > Scalar(0))) {
      throw PositiveDefinitenessViolation(
          "diffusion matrix is not positive definite: need d11 > 0 and "
          "4*d11*d22 - (d12 + d21)^2 > 0");
    }
  }

  explicit DiffusionMatrix(const Matrix2<Scalar>& d)
      : DiffusionMatrix(d(0, 0), d(0, 1), d(1, 0), d(1, 1)) {}

  const Matrix2<Scalar>& matrix() const { return d_; }
  Scalar d11() const { return d_(0, 0); }
  Scalar d12() const { return d_(0, 1); }
  Scalar d21() const { return d_(1, 0); }
  Scalar d22() const { return d_(1, 1); }

  Scalar r() const { return d22() - d11(); }
  Scalar s() const { return r() * r() + Scalar(4) * d12() * d21(); }
  Scalar q() const { return d11() + d22(); }
  Scalar det() const { return d11() * d22() - d12() * d21(); }

  /// sqrt(|s|) / 2: half the eigenvalue gap (s > 0) or the imaginary part of
  /// the eigenvalues (s < 0).
  Scalar m() const {
    using std::abs;
    using std::sqrt;
    return sqrt(abs(s())) / Scalar(2);
  }

  /// Eigenvalues (q +- sqrt(s)) / 2. For s >= 0 the smaller one is formed as
  /// det / lambda_+ to avoid cancellation.
  std::pair<std::complex<Scalar>, std::complex<Scalar>> eigenvalues() const {
    const Scalar half_q = q() / Scalar(2);
    if (s() < Scalar(0)) {
      return {{half_q, m()}, {half_q, -m()}};
    }
    const Scalar plus = half_q + m();
    return {{plus, Scalar(0)}, {det() / plus, Scalar(0)}};
  }

  bool operator==(const DiffusionMatrix& other) const { return d_ == other.d_; }

 private:
  Matrix2<Scalar> d_;
};

using DiffusionMatrixd = DiffusionMatrix<double>;

template <typename Scalar>
DiffusionMatrix<Scalar> validate_matrix(Scalar d11, Scalar d12, Scalar d21, Scalar d22) {
  return DiffusionMatrix<Scalar>(d11, d12, d21, d22);
}

enum class SpectralCase {
  RealDistinct,    // (i)   s > 0
  ScalarDiagonal,  // (ii)  s = 0, d = alpha I
  Jordan,          // (iii) s = 0, not diagonalizable
  ComplexPair,     // (iv)  s < 0
};

inline const char* to_string(SpectralCase c) {
  switch (c) {
    case SpectralCase::RealDistinct: return "(i) real distinct eigenvalues";
    case SpectralCase::ScalarDiagonal: return "(ii) scalar matrix";
    case SpectralCase::Jordan: return "(iii) Jordan block";
    case SpectralCase::ComplexPair: return "(iv) complex conjugate pair";
  }
  return "unknown";
}

/// d = P * Lambda * P^{-1} with Lambda one of diag(l+, l-), alpha I,
/// [[alpha, 1], [0, alpha]] or [[nu, -mu], [mu, nu]].
template <typename Scalar>
struct SpectralDecomposition {
  SpectralCase spectral_case;
  Matrix2<Scalar> P;
  Matrix2<Scalar> Lambda;
  Scalar m;

  Matrix2<Scalar> reconstruct() const { return P * Lambda * P.inverse(); }
};

/// Reduction of d to canonical form. The columns of P are (generalized)
/// eigenvectors; for the complex case they span the real invariant subspace.
template <typename Scalar>
SpectralDecomposition<Scalar> decompose(const DiffusionMatrix<Scalar>& d) {
  using std::sqrt;
  const Scalar zero(0), one(1), two(2);
  const Scalar d12 = d.d12(), d21 = d.d21(), r = d.r(), s = d.s();
  SpectralDecomposition<Scalar> out;
  out.m = d.m();
  out.Lambda.setZero();
  out.P.setIdentity();

  if (s > zero) {
    out.spectral_case = SpectralCase::RealDistinct;
    const auto [lp, lm] = d.eigenvalues();
    out.Lambda(0, 0) = lp.real();
    out.Lambda(1, 1) = lm.real();
    const Scalar root = sqrt(s);
    if (d12 != zero) {
      // (r +- sqrt s)/2 = lambda_+- - d11; their product is -d12 d21.
      Scalar plus, minus;
      if (r >= zero) {
        plus = (r + root) / two;
        minus = -d12 * d21 / plus;
      } else {
        minus = (r - root) / two;
        plus = -d12 * d21 / minus;
      }
      out.P << d12, d12, plus, minus;
    } else if (d21 != zero) {
      out.P << (-r + root) / two, (-r - root) / two, d21, d21;
    } else if (d.d11() < d.d22()) {
      out.P << zero, one, one, zero;
    }
  } else if (s == zero) {
    const Scalar alpha = d.q() / two;
    if (d12 == zero && d21 == zero) {
      out.spectral_case = SpectralCase::ScalarDiagonal;
      out.Lambda << alpha, zero, zero, alpha;
    } else {
      out.spectral_case = SpectralCase::Jordan;
      out.Lambda << alpha, one, zero, alpha;
      if (d12 != zero) {
        out.P << d12, zero, r / two, one;
      } else {
        out.P << -r / two, one, d21, zero;
      }
    }
  } else {
    out.spectral_case = SpectralCase::ComplexPair;
    const Scalar nu = d.q() / two, mu = out.m;
    out.Lambda << nu, -mu, mu, nu;
    if (d12 != zero) {
      out.P << d12, zero, r / two, -mu;
    } else {
      out.P << -r / two, -mu, d21, zero;
    }
  }
  return out;
}

/// exp(-a d) for a >= 0.
///
/// With d = (q/2) I + B and B^2 = (s/4) I the exponential collapses to
///   exp(-a d) = e^{-aq/2} [ g(am) I - (h(am)/m) B ],
/// (g, h) = (cosh, sinh) for s > 0 and (cos, sin) for s < 0. For s > 0 the
/// product e^{-aq/2} cosh(am) is evaluated as e^{-a l-}(1 + e^{-2am})/2 so
/// nothing overflows; h(am)/m is evaluated through a*(sinhc|sinc)(.) so the
/// s -> 0 limit I - aB is reached continuously.
template <typename Scalar>
Matrix2<Scalar> matrix_exponent(const DiffusionMatrix<Scalar>& d, Scalar a) {
  using std::cos;
  using std::exp;
  using std::isfinite;
  if (!isfinite(a) || a < Scalar(0)) {
    throw std::invalid_argument("matrix_exponent: a must be finite and >= 0");
  }
  const Scalar s = d.s(), m = d.m(), r = d.r();
  Scalar diag_coeff, b_coeff;
  if (s > Scalar(0)) {
    const Scalar lambda_minus = d.eigenvalues().second.real();
    const Scalar slow = exp(-a * lambda_minus);
    const Scalar x = Scalar(2) * a * m;
    diag_coeff = slow * (Scalar(1) + exp(-x)) / Scalar(2);
    b_coeff = a * slow * detail::one_minus_exp_ratio(x);
  } else {
    const Scalar damp = exp(-a * d.q() / Scalar(2));
    const Scalar y = a * m;
    diag_coeff = damp * cos(y);
    b_coeff = a * damp * detail::sinc(y);
  }
  Matrix2<Scalar> out;
  out << diag_coeff + b_coeff * r / Scalar(2), -b_coeff * d.d12(),
         -b_coeff * d.d21(), diag_coeff - b_coeff * r / Scalar(2);
  return out;
}

/// Fourier symbol exp(-t |xi|^p d) at radial frequency xi_mag.
template <typename Scalar>
Matrix2<Scalar> symbol(const DiffusionMatrix<Scalar>& d, Scalar p, Scalar t, Scalar xi_mag) {
  using std::isfinite;
  using std::pow;
  if (!isfinite(p) || !(p > Scalar(0))) throw std::invalid_argument("symbol: p must be > 0");
  if (!isfinite(t) || t < Scalar(0)) throw std::invalid_argument("symbol: t must be >= 0");
  if (!isfinite(xi_mag) || xi_mag < Scalar(0)) {
    throw std::invalid_argument("symbol: |xi| must be >= 0");
  }
  return matrix_exponent(d, t * pow(xi_mag, p));
}

}  // namespace xdiff
