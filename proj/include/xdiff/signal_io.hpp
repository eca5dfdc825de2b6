#pragma once

// File formats, seeded noise, synthetic patterns and the Prewitt baseline.
// Format details live in docs/formats.md.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "xdiff/grid_transform.hpp"

namespace xdiff {

enum class PgmEncoding { Ascii /* P2 */, Binary /* P5 */ };

/// Reads a P2 or P5 grey-scale PGM with maxval <= 255 onto a unit-spacing
/// pixel grid. Throws MalformedFile or IoFailure.
Field read_image(const std::filesystem::path& path);

/// Writes maxval-255 PGM; values are clamped to [0, 255] and rounded half
/// away from zero.
void write_image(const Field& f, const std::filesystem::path& path,
                 PgmEncoding encoding = PgmEncoding::Binary);

/// Single-column CSV of reals (one value per line) on a 1D pixel grid.
Field read_signal(const std::filesystem::path& path);
/// Writes one value per line with 17 significant digits.
void write_signal(const Field& f, const std::filesystem::path& path);

/// Full-precision 2D matrix CSV (one image row per line). Used for raw,
/// unquantized outputs.
Field read_matrix(const std::filesystem::path& path);
void write_matrix(const Field& f, const std::filesystem::path& path);

/// .pgm -> read_image, anything else -> read_matrix.
Field read_field(const std::filesystem::path& path);

struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// xoshiro256** seeded through splitmix64, with Box-Muller producing
/// standard normals in pairs.
class GaussianNoise {
 public:
  explicit GaussianNoise(std::uint64_t seed);
  std::uint64_t next_u64();
  /// Uniform in (0, 1].
  double next_uniform();
  double next_normal();

 private:
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// f + sigma Z with Z drawn in column-major sample order.
Field add_gaussian_noise(const Field& f, const NoiseSpec& spec);

/// sqrt(Gx^2 + Gy^2) with the unnormalized 3x3 Prewitt kernels and periodic
/// borders. Throws Requires2D for 1D input.
Field prewitt(const Field& f);

enum class Pattern { Box, Step, Disk, Checkerboard, Gaussian, Shapes };

/// Throws UnknownKind.
Pattern parse_pattern(std::string_view name);
const char* to_string(Pattern p);

/// Deterministic synthetic inputs, all centred on the origin:
///   box          1 for |x| <= L/4 (1D), else 0
///   step         1 for x >= 0 (1D)
///   disk         1 inside radius min(Lx, Ly)/2 (2D)
///   checkerboard 8 x 8 cells of 0/1 (2D)
///   gaussian     exp(-r^2 / (2 w^2)), w = min(L)/8 (1D or 2D)
///   shapes       grey levels in [0, 255]: background, disk, square, bar (2D)
Field make_test_pattern(Pattern kind, const Grid& grid);
Field make_test_pattern(std::string_view kind, const Grid& grid);

/// Affine map of f onto [0, 255]. Nearly constant fields (spread below
/// 1e-9 of their magnitude) map to 0.
struct DisplayImage {
  Field image;
  double min = 0.0;
  double max = 0.0;
};
DisplayImage display_normalize(const Field& f);

}  // namespace xdiff
