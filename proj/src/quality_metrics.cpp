#include "xdiff/quality_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace xdiff {
namespace {

void require_same_shape(const Array2<double>& a, const Array2<double>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("metric inputs must have the same shape");
  }
  if (a.size() == 0) throw std::invalid_argument("metric inputs must be non-empty");
}

double population_variance(const Array2<double>& x) {
  const double mean = x.mean();
  return (x - mean).square().mean();
}

int quantize(double value) {
  const double clamped = std::clamp(value, 0.0, 255.0);
  return static_cast<int>(std::round(clamped));
}

double entropy_of_counts(const std::vector<long long>& counts, long long total) {
  double en = 0.0;
  for (const long long c : counts) {
    if (c == 0) continue;
    const double prob = static_cast<double>(c) / static_cast<double>(total);
    en -= prob * std::log2(prob);
  }
  return en;
}

}  // namespace

double snr(const Array2<double>& ref, const Array2<double>& test) {
  require_same_shape(ref, test);
  const Array2<double> residual = ref - test;
  const double residual_var = population_variance(residual);
  // A constant residual computed in floating point is only constant up to
  // the rounding of ref and test themselves.
  const double scale = std::max(ref.abs().maxCoeff(), test.abs().maxCoeff());
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  if (residual_var <= floor * floor) {
    throw DegenerateResidual("SNR undefined: residual has zero variance");
  }
  return 10.0 * std::log10(population_variance(test) / residual_var);
}

double psnr(const Array2<double>& ref, const Array2<double>& test, double l, PsnrMode mode) {
  require_same_shape(ref, test);
  double norm2 = (ref - test).square().sum();
  if (norm2 == 0.0) throw DegenerateResidual("PSNR undefined: inputs are identical");
  if (mode == PsnrMode::MeanSquare) norm2 /= static_cast<double>(ref.size());
  return 10.0 * std::log10(l * l / norm2);
}

double entropy(const Array2<double>& f) {
  if (f.size() == 0) throw std::invalid_argument("entropy of an empty field");
  std::vector<long long> hist(256, 0);
  for (Index c = 0; c < f.cols(); ++c) {
    for (Index r = 0; r < f.rows(); ++r) ++hist[quantize(f(r, c))];
  }
  return entropy_of_counts(hist, f.size());
}

double cooccurrence_entropy(const Array2<double>& f) {
  if (f.cols() < 2) throw std::invalid_argument("co-occurrence needs at least two columns");
  std::vector<long long> pairs(256 * 256, 0);
  for (Index r = 0; r < f.rows(); ++r) {
    for (Index c = 0; c + 1 < f.cols(); ++c) {
      ++pairs[quantize(f(r, c)) * 256 + quantize(f(r, c + 1))];
    }
  }
  return entropy_of_counts(pairs, f.rows() * (f.cols() - 1));
}

std::array<double, 2> average_grey(const FieldPair& pair) {
  const double cell = pair.grid().cell();
  return {pair.u.values.sum() * cell, pair.v.values.sum() * cell};
}

MetricsReport measure(double time, const Array2<double>& ref, const FieldPair& pair, Index row0,
                      Index col0, double l, PsnrMode mode) {
  const Array2<double> u = pair.u.values.block(row0, col0, ref.rows(), ref.cols());
  constexpr double inf = std::numeric_limits<double>::infinity();
  MetricsReport rep;
  rep.time = time;
  try {
    rep.snr = snr(ref, u);
  } catch (const DegenerateResidual&) {
    rep.snr = inf;
  }
  try {
    rep.psnr = psnr(ref, u, l, mode);
  } catch (const DegenerateResidual&) {
    rep.psnr = inf;
  }
  rep.entropy = entropy(u);
  rep.avg_grey = average_grey(pair);
  return rep;
}

}  // namespace xdiff
