#pragma once

#include <Eigen/Core>

#include <array>

#include "xdiff/filter_engine.hpp"
#include "xdiff/grid_transform.hpp"

namespace xdiff {

/// Whether PSNR divides the squared residual norm by the sample count.
enum class PsnrMode { Literal, MeanSquare };

/// 10 log10(var(test) / var(ref - test)) with population variances.
/// Throws DegenerateResidual when the residual variance vanishes (up to
/// round-off of the inputs).
double snr(const Array2<double>& ref, const Array2<double>& test);

/// 10 log10(l^2 / ||ref - test||^2); MeanSquare divides the norm by the
/// sample count. Throws DegenerateResidual when ref == test.
double psnr(const Array2<double>& ref, const Array2<double>& test, double l,
            PsnrMode mode = PsnrMode::Literal);

/// Shannon entropy in bits of the 256-bin grey-level histogram. Values are
/// clamped to [0, 255] and rounded half away from zero.
double entropy(const Array2<double>& f);

/// Entropy of the normalized 256x256 co-occurrence matrix for the
/// horizontal neighbour offset (1, 0), non-periodic.
double cooccurrence_entropy(const Array2<double>& f);

inline double snr(const Field& ref, const Field& test) { return snr(ref.values, test.values); }
inline double psnr(const Field& ref, const Field& test, double l, PsnrMode mode = PsnrMode::Literal) {
  return psnr(ref.values, test.values, l, mode);
}
inline double entropy(const Field& f) { return entropy(f.values); }
inline double cooccurrence_entropy(const Field& f) { return cooccurrence_entropy(f.values); }

/// Discrete integrals (sum * cell size) of both components.
std::array<double, 2> average_grey(const FieldPair& pair);

struct MetricsReport {
  double time = 0.0;
  double snr = 0.0;   // dB, +inf when the residual is degenerate
  double psnr = 0.0;  // dB, +inf when the residual is degenerate
  double entropy = 0.0;
  std::array<double, 2> avg_grey{0.0, 0.0};
};

/// Metrics of the first component of `pair` against `ref`. `ref` may cover
/// only a window of the pair's grid: rows [row0, row0 + ref.rows()) and
/// columns [col0, col0 + ref.cols()) of u are compared. average_grey is
/// always taken over the full grid.
MetricsReport measure(double time, const Array2<double>& ref, const FieldPair& pair,
                      Index row0 = 0, Index col0 = 0, double l = 255.0,
                      PsnrMode mode = PsnrMode::Literal);

}  // namespace xdiff
