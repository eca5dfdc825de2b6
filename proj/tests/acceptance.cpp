// Acceptance suite: one [PASS]/[FAIL] line per check, nonzero exit on any
// failure. Every reference value comes from tests/oracles.hpp or closed-form
// arithmetic done here, never from the code under test.

#include <Eigen/SVD>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "xdiff/cli.hpp"
#include "xdiff/errors.hpp"
#include "xdiff/filter_engine.hpp"
#include "xdiff/quality_metrics.hpp"
#include "xdiff/signal_io.hpp"

using namespace xdiff;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel_max(const Array2<double>& got, const Array2<double>& want) {
  const double scale = std::max(want.abs().maxCoeff(), 1e-300);
  return (got - want).abs().maxCoeff() / scale;
}

// Noisy synthetic pattern shared by the denoising checks.
constexpr std::uint64_t kNoiseSeed = 20240611;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "xdiff_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int rc = cli::run(args, out, err);
  if (rc != 0) std::cerr << err.str();
  return rc;
}

Outcome matrix_exponential_oracle() {
  oracle::MatrixSampler rng(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto d = rng.next();
    const double a = rng.uniform(0.0, 50.0);
    const auto want = oracle::expm_series(-a * d.matrix());
    worst = std::max(worst, oracle::rel_frobenius(matrix_exponent(d, a), want));
  }
  return {worst < 1e-10, "max rel Frobenius error " + fmt(worst)};
}

Outcome semigroup() {
  oracle::MatrixSampler rng(2);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto d = rng.next();
    const double p = rng.uniform(0.5, 3.0), xi = rng.uniform(0.0, 5.0);
    const double t1 = rng.uniform(0.0, 0.2), t2 = rng.uniform(0.0, 0.2);
    const Matrix2d both = symbol(d, p, t1 + t2, xi);
    worst = std::max(worst, oracle::rel_frobenius(symbol(d, p, t1, xi) * symbol(d, p, t2, xi), both));
  }

  const Grid grid = Grid::square(64.0, 128);
  const Field f(grid, rng.image(128, 128));
  const auto d = validate_matrix(1.0, 0.9, 1.0, 1.0);
  const FilterConfig cfg(d, 2.0, InitialKind::Gradient, grid);
  const auto pair0 = initial_distribution(f, InitialKind::Gradient);
  const auto once = evolve(pair0, cfg, 1.5);
  const auto twice = evolve(evolve(pair0, cfg, 0.5), cfg, 1.0);
  const double image_err =
      std::max(rel_max(twice.u.values, once.u.values), rel_max(twice.v.values, once.v.values));
  return {worst < 1e-10 && image_err < 1e-8,
          "symbol " + fmt(worst) + ", 128^2 image " + fmt(image_err)};
}

Outcome mean_preservation() {
  oracle::MatrixSampler rng(3);
  const Grid grid = Grid::square(64.0, 128);
  const Field f(grid, rng.image(128, 128));
  const auto pair0 = initial_distribution(f, InitialKind::Gradient);
  const CrossDiffusionFilter<double> filter(pair0, validate_matrix(1.0, 0.9, 1.0, 1.0), 2.0);
  const double mu = pair0.u.values.mean(), mv = pair0.v.values.mean();
  double worst = 0.0;
  for (const double t : {0.1, 1.0, 10.0}) {
    const auto pair = filter.at(t);
    worst = std::max(worst, std::abs(pair.u.values.mean() - mu) / std::abs(mu));
    worst = std::max(worst, std::abs(pair.v.values.mean() - mv) / std::abs(mv));
  }
  return {worst < 1e-10, "max rel drift of means " + fmt(worst)};
}

Outcome rotation_invariance() {
  oracle::MatrixSampler rng(4);
  const Grid grid = Grid::square(64.0, 128);
  const Field f(grid, rng.image(128, 128));
  const FilterConfig cfg(validate_matrix(1.0, 0.9, 1.0, 1.0), 2.0, InitialKind::Gradient, grid);
  const auto a = evolve(initial_distribution(rot90(f), InitialKind::Gradient), cfg, 2.0);
  const auto b = evolve(initial_distribution(f, InitialKind::Gradient), cfg, 2.0);
  const double err = std::max(rel_max(a.u.values, rot90(b.u).values), rel_max(a.v.values, rot90(b.v).values));
  return {err < 1e-10, "max rel difference " + fmt(err)};
}

Outcome shift_invariance() {
  oracle::MatrixSampler rng(5);
  const Grid grid = Grid::square(64.0, 128);
  const Field f(grid, rng.image(128, 128));
  const Field shifted(grid, f.values + 40.0);
  const FilterConfig cfg(validate_matrix(1.0, 0.9, 1.0, 1.0), 2.0, InitialKind::Plain, grid);
  const auto a = evolve(initial_distribution(shifted, InitialKind::Plain), cfg, 3.0);
  const auto b = evolve(initial_distribution(f, InitialKind::Plain), cfg, 3.0);
  const double err = rel_max(a.u.values, b.u.values + 40.0);
  return {err < 1e-10, "u channel rel difference " + fmt(err)};
}

Outcome complex_diffusion() {
  const double nu = 1.0, mu = 0.5, t = 1.0;
  const Grid grid = Grid::square(32.0, 256);
  const Field f = Field::sample(grid, [](double x, double y) {
    return std::exp(-((x - 1.5) * (x - 1.5) + (y + 0.5) * (y + 0.5)) / 18.0);
  });
  const FilterConfig cfg(validate_matrix(nu, -mu, mu, nu), 2.0, InitialKind::Plain, grid);
  const auto pair = evolve(initial_distribution(f, InitialKind::Plain), cfg, t);
  const auto ref = complex_diffusion_oracle(f, nu, mu, t);
  const double spectral_err =
      std::max(rel_max(pair.u.values, ref.u.values), rel_max(pair.v.values, ref.v.values));

  // Effective Gaussian width of the complex kernel.
  const double sigma = std::sqrt(2.0 * t * (nu * nu + mu * mu) / nu);
  const bool resolved = sigma >= 4.0 * grid.hx();
  double quad_err = 0.0;
  for (Index r = 64; r < 192; r += 9) {
    for (Index c = 64; c < 192; c += 11) {
      const auto want = oracle::complex_kernel_quadrature(f, nu, mu, t, r, c);
      quad_err = std::max({quad_err, std::abs(pair.u.values(r, c) - want.real()),
                           std::abs(pair.v.values(r, c) - want.imag())});
    }
  }
  quad_err /= f.values.abs().maxCoeff();
  return {resolved && spectral_err < 1e-10 && quad_err < 1e-6,
          "multiplier " + fmt(spectral_err) + ", quadrature " + fmt(quad_err) + " (sigma/h " +
              fmt(sigma / grid.hx()) + ")"};
}

Field band_limited(const Grid& grid) {
  const double k = M_PI / grid.lx;
  return Field::sample(grid, [k](double x, double y) {
    return 3.0 + std::sin(2 * k * x) * std::cos(3 * k * y) + 0.5 * std::cos(5 * k * x + k * y) -
           0.25 * std::sin(7 * k * y);
  });
}

Outcome exact_small_theta() {
  const Grid grid = Grid::square(8.0, 64);
  const Field f = band_limited(grid);
  const auto d = validate_matrix(1.0, 0.0, 1.99, 1.0);
  double worst = 0.0;
  for (const double p : {2.0, 3.0}) {
    const double t = 0.05;
    const FilterConfig cfg(d, p, InitialKind::Plain, grid);
    const auto v = evolve(initial_distribution(f, InitialKind::Plain), cfg, t).v;
    const Array2<double> want = 1.99 * small_theta_oracle(f, 2.0, p, t).values;
    worst = std::max(worst, rel_max(v.values, want));
  }
  return {worst < 1e-10, "max rel error " + fmt(worst)};
}

Outcome small_theta_rate() {
  const Grid grid = Grid::square(64.0, 128);
  const Field f = make_test_pattern(Pattern::Shapes, grid);
  const double t = 0.1;
  auto error_at = [&](double eps) {
    const FilterConfig cfg(validate_matrix(1.0, eps, 1.99, 1.0), 2.0, InitialKind::Plain, grid);
    const Field e = edge_map(f, cfg, t);
    const Field ref = small_theta_oracle(f, 2.0, 2.0, t);
    return (e.values - ref.values).matrix().norm() / ref.values.matrix().norm();
  };
  // The admissible pair is reported for diagnosis only.
  const double diag_ratio = error_at(5e-3) / error_at(1.25e-3);
  double coarse = 0.0;
  try {
    coarse = error_at(1e-2);
  } catch (const PositiveDefinitenessViolation&) {
    // 4 d11 d22 - (d12 + d21)^2 = 4 - 2^2 = 0 at eps = 1e-2.
    return {false, "d(1e-2) is only positive semi-definite and is rejected; ratio on eps {5e-3, 1.25e-3} is " +
                       fmt(diag_ratio)};
  }
  const double fine = error_at(2.5e-3);
  const double ratio = coarse / fine;
  return {ratio >= 3.0 && ratio <= 5.0,
          "errors " + fmt(coarse) + " / " + fmt(fine) + ", ratio " + fmt(ratio)};
}

Outcome contraction() {
  std::vector<Matrix2d> forms;
  for (const auto& [lp, lm] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {10.0, 0.01}, {0.3, 0.2}}) {
    forms.push_back((Matrix2d() << lp, 0, 0, lm).finished());
  }
  for (const auto& [al, be] : {std::pair{1.0, 1.0}, {1.0, 0.3}, {0.05, 0.05}, {4.0, 1.0}}) {
    forms.push_back((Matrix2d() << al, be, 0, al).finished());
  }
  for (const auto& [nu, mu] : {std::pair{1.0, 0.5}, {0.01, 3.0}, {2.0, -1.0}, {0.5, 10.0}}) {
    forms.push_back((Matrix2d() << nu, -mu, mu, nu).finished());
  }
  double sup = 0.0;
  for (const auto& m : forms) {
    const DiffusionMatrixd d(m);
    for (int i = 0; i <= 20000; ++i) {
      const double a = 100.0 * i / 20000.0;
      const Eigen::JacobiSVD<Matrix2d> svd(matrix_exponent(d, a));
      sup = std::max(sup, svd.singularValues()(0));
    }
  }
  return {sup <= 1.0 + 1e-12, "sup of 2-norm - 1 = " + fmt(sup - 1.0)};
}

Outcome generator_locality() {
  const auto d = validate_matrix(1.0, 0.4, -0.3, 0.8);
  auto error_at = [&](Index n) {
    const Grid grid = Grid::square(M_PI, n);
    const Field u = Field::sample(grid, [](double x, double y) { return std::exp(std::sin(x)) * std::cos(y); });
    const Field v = Field::sample(grid, [](double x, double y) { return std::sin(x + std::cos(y)); });
    const auto gen = apply_generator(FieldPair(u, v), d, 2.0);
    const Array2<double> lu = oracle::fd_laplacian(u), lv = oracle::fd_laplacian(v);
    const Array2<double> fd_u = d.d11() * lu + d.d12() * lv;
    const Array2<double> fd_v = d.d21() * lu + d.d22() * lv;
    return std::max((gen.u.values - fd_u).abs().maxCoeff(), (gen.v.values - fd_v).abs().maxCoeff());
  };
  const double coarse = error_at(16), fine = error_at(32);
  const double ratio = coarse / fine;
  return {ratio >= 3.5 && ratio <= 4.5, "errors " + fmt(coarse) + " / " + fmt(fine) + ", ratio " + fmt(ratio)};
}

Outcome denoising(const fs::path& dir) {
  const Field clean = make_test_pattern(Pattern::Shapes, Grid::pixels(256, 256));
  write_image(clean, dir / "shapes.pgm");
  const fs::path out = dir / "denoise";
  const int rc = run_cli({"filter", "--input", (dir / "shapes.pgm").string(), "--output-dir", out.string(),
                          "--d", "1,0.9,1,1", "--p", "2", "--kind", "0", "--sigma", "25", "--seed",
                          std::to_string(kNoiseSeed), "--times",
                          "0.001,0.25,0.5,1,1.5,2,3,4,5,7.5,10,15,20"});
  if (rc != 0) return {false, "filter command exited with " + std::to_string(rc)};
  const auto rows = read_csv(out / "metrics.csv");
  if (rows.size() != 14 || rows[0][1] != "snr" || rows[0][2] != "psnr") {
    return {false, "metrics.csv has unexpected shape"};
  }
  const double base = std::stod(rows[1][1]);
  double best = -std::numeric_limits<double>::infinity(), best_t = 0.0;
  for (size_t i = 2; i < rows.size(); ++i) {
    const double t = std::stod(rows[i][0]), s = std::stod(rows[i][1]);
    if (t > 0.0 && t <= 20.0 && s > best) best = s, best_t = t;
    if (!std::isfinite(std::stod(rows[i][2]))) return {false, "non-finite PSNR at t=" + rows[i][0]};
  }
  return {best - base >= 3.0, "SNR(0+) " + fmt(base) + " dB, best " + fmt(best) + " dB at t=" + fmt(best_t)};
}

Outcome profile_antisymmetry() {
  const double L = 128.0;
  const Index n = 2048;
  const Grid grid = Grid::line(L, n);
  const Field box = make_test_pattern(Pattern::Box, grid);
  // Last sample inside the box on the right edge.
  Index edge = n / 2;
  while (box.values(0, edge + 1) == 1.0) ++edge;
  const Index left_edge = n - edge;  // first sample inside on the left

  const CrossDiffusionFilter<double> coupled(initial_distribution(box, InitialKind::Plain),
                                             validate_matrix(1.0, 0.1, 1.0, 1.1), 2.0);
  double worst = 0.0, v_scale = 0.0;
  for (const double t : {0.25, 2.5, 25.0}) {
    const auto v = coupled.at(t).v.values;
    v_scale = std::max(v_scale, v.abs().maxCoeff());
    for (Index k = 0; k < 64; ++k) {
      worst = std::max(worst, std::abs(v(0, edge + 1 + k) + v(0, edge - k)));
      worst = std::max(worst, std::abs(v(0, left_edge + k) + v(0, left_edge - 1 - k)));
    }
  }
  const CrossDiffusionFilter<double> decoupled(initial_distribution(box, InitialKind::Plain),
                                               validate_matrix(1.0, 0.0, 0.0, 1.1), 2.0);
  double leak = 0.0;
  for (const double t : {0.25, 2.5, 25.0}) leak = std::max(leak, decoupled.at(t).v.values.abs().maxCoeff());
  return {worst < 1e-8 && leak == 0.0 && v_scale > 1e-3,
          "antisymmetry defect " + fmt(worst) + " (max |v| " + fmt(v_scale) + "), decoupled max |v| " + fmt(leak)};
}

Outcome metric_values() {
  Array2<double> a(1, 3), b(1, 3);
  a << 1, 2, 3;
  b << 1, 2, 4;
  const double s = snr(a, b);
  bool psnr_zero = false;
  try {
    psnr(a, a, 255.0);
  } catch (const DegenerateResidual&) {
    psnr_zero = true;
  }
  const double flat = entropy(Array2<double>::Constant(16, 16, 77.0));
  Array2<double> ramp(16, 16);
  for (Index i = 0; i < 256; ++i) ramp(i % 16, i / 16) = static_cast<double>(i);
  const double uniform = entropy(ramp);
  const bool pass = std::abs(s - 8.4510) <= 1e-3 && psnr_zero && flat == 0.0 && uniform == 8.0;
  return {pass, "SNR " + std::to_string(s) + " dB, PSNR(ref,ref) degenerate " + (psnr_zero ? "yes" : "no") +
                    ", entropy " + fmt(flat) + " / " + fmt(uniform)};
}

Outcome kind_ordering(const fs::path& dir) {
  const fs::path out = dir / "kinds";
  const int rc = run_cli({"sweep", "--input", (dir / "shapes.pgm").string(), "--output-dir", out.string(),
                          "--d", "1,0.9,1,1", "--p", "2", "--t", "5", "--sigmas", "25", "--seed",
                          std::to_string(kNoiseSeed), "--kinds", "0,1,2"});
  if (rc != 0) return {false, "sweep command exited with " + std::to_string(rc)};
  const auto rows = read_csv(out / "sweep.csv");
  double snr_by_kind[3] = {0, 0, 0};
  for (size_t i = 1; i < rows.size(); ++i) snr_by_kind[std::stoi(rows[i][2])] = std::stod(rows[i][10]);
  return {rows.size() == 4 && snr_by_kind[0] >= snr_by_kind[2],
          "SNR kind0 " + fmt(snr_by_kind[0]) + ", kind1 " + fmt(snr_by_kind[1]) + ", kind2 " + fmt(snr_by_kind[2]) +
              " dB"};
}

}  // namespace

int main() {
  const fs::path dir = scratch_dir();
  struct Check {
    int id;
    const char* name;
    double budget_s;  // 0 = no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Check> checks = {
      {1, "matrix exponential vs series oracle", 5.0, matrix_exponential_oracle},
      {2, "semigroup, symbol and image", 0.0, semigroup},
      {3, "mean preservation", 0.0, mean_preservation},
      {4, "rotation invariance", 0.0, rotation_invariance},
      {5, "grey-level shift invariance", 0.0, shift_invariance},
      {6, "complex diffusion equivalence", 10.0, complex_diffusion},
      {7, "exact small-theta identity", 0.0, exact_small_theta},
      {8, "small-theta convergence rate", 0.0, small_theta_rate},
      {9, "contraction of reduced forms", 0.0, contraction},
      {10, "generator vs finite differences", 0.0, generator_locality},
      {11, "denoising gain", 30.0, [&] { return denoising(dir); }},
      {12, "1D profile antisymmetry", 0.0, profile_antisymmetry},
      {13, "metric unit values", 0.0, metric_values},
      {14, "initial distribution ordering", 0.0, [&] { return kind_ordering(dir); }},
  };

  int failures = 0;
  for (const auto& c : checks) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += ", over the " + fmt(c.budget_s) + " s budget";
    }
    failures += !o.pass;
    std::printf("[%s] %2d %-38s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
  }
  std::printf("%d/%zu passed\n", static_cast<int>(checks.size()) - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
