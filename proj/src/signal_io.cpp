#include "xdiff/signal_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

#include "xdiff/errors.hpp"

namespace xdiff {
namespace {

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoFailure("read error on " + path.string());
  return buf.str();
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoFailure("write error on " + path.string());
}

// Header tokenizer for PNM: whitespace separated, '#' starts a comment.
class PnmCursor {
 public:
  explicit PnmCursor(const std::string& data) : data_(data) {}

  std::string token() {
    skip_space_and_comments();
    const size_t start = pos_;
    while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_])) &&
           data_[pos_] != '#') {
      ++pos_;
    }
    if (start == pos_) throw MalformedFile("PGM: unexpected end of data");
    return data_.substr(start, pos_ - start);
  }

  long integer() {
    const std::string tok = token();
    long value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw MalformedFile("PGM: expected an integer, got '" + tok + "'");
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from P5 raster data.
  size_t raster_start() {
    if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      throw MalformedFile("PGM: missing whitespace before raster");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& data_;
  size_t pos_ = 0;
};

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::round(std::clamp(v, 0.0, 255.0)));
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

double parse_real(std::string_view text, const std::filesystem::path& path) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw MalformedFile(path.string() + ": not a finite real: '" + std::string(text) + "'");
  }
  return value;
}

void write_real(std::ostream& out, double v) {
  out << std::setprecision(17) << v;
}

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Field read_image(const std::filesystem::path& path) {
  const std::string data = read_all(path);
  PnmCursor cur(data);
  const std::string magic = cur.token();
  if (magic != "P2" && magic != "P5") throw MalformedFile(path.string() + ": not a P2/P5 PGM");
  const long width = cur.integer();
  const long height = cur.integer();
  const long maxval = cur.integer();
  if (width <= 0 || height <= 0) throw MalformedFile(path.string() + ": bad dimensions");
  if (maxval <= 0 || maxval > 255) throw MalformedFile(path.string() + ": maxval must be in 1..255");

  Array2<double> values(height, width);
  if (magic == "P5") {
    const size_t start = cur.raster_start();
    const size_t needed = static_cast<size_t>(width) * static_cast<size_t>(height);
    if (data.size() < start + needed) throw MalformedFile(path.string() + ": truncated raster");
    for (long r = 0; r < height; ++r) {
      for (long c = 0; c < width; ++c) {
        const auto byte = static_cast<unsigned char>(data[start + r * width + c]);
        if (byte > maxval) throw MalformedFile(path.string() + ": sample exceeds maxval");
        values(r, c) = byte;
      }
    }
  } else {
    for (long r = 0; r < height; ++r) {
      for (long c = 0; c < width; ++c) {
        const long v = cur.integer();
        if (v < 0 || v > maxval) throw MalformedFile(path.string() + ": sample out of range");
        values(r, c) = static_cast<double>(v);
      }
    }
  }
  return Field(Grid::pixels(width, height), std::move(values));
}

void write_image(const Field& f, const std::filesystem::path& path, PgmEncoding encoding) {
  auto out = open_for_write(path);
  const Index h = f.values.rows(), w = f.values.cols();
  out << (encoding == PgmEncoding::Binary ? "P5" : "P2") << '\n' << w << ' ' << h << "\n255\n";
  if (encoding == PgmEncoding::Binary) {
    std::vector<char> row(static_cast<size_t>(w));
    for (Index r = 0; r < h; ++r) {
      for (Index c = 0; c < w; ++c) row[c] = static_cast<char>(to_byte(f.values(r, c)));
      out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
  } else {
    for (Index r = 0; r < h; ++r) {
      for (Index c = 0; c < w; ++c) {
        out << static_cast<int>(to_byte(f.values(r, c))) << (c + 1 < w ? ' ' : '\n');
      }
    }
  }
  finish_write(out, path);
}

Field read_signal(const std::filesystem::path& path) {
  const auto lines = split_lines(read_all(path));
  if (lines.empty()) throw MalformedFile(path.string() + ": empty signal");
  Array2<double> values(1, static_cast<Index>(lines.size()));
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find(',') != std::string::npos) {
      throw MalformedFile(path.string() + ": signal CSV must have a single column");
    }
    values(0, static_cast<Index>(i)) = parse_real(lines[i], path);
  }
  return Field::from_values(std::move(values));
}

void write_signal(const Field& f, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  for (Index c = 0; c < f.values.cols(); ++c) {
    for (Index r = 0; r < f.values.rows(); ++r) {
      write_real(out, f.values(r, c));
      out << '\n';
    }
  }
  finish_write(out, path);
}

Field read_matrix(const std::filesystem::path& path) {
  const auto lines = split_lines(read_all(path));
  if (lines.empty()) throw MalformedFile(path.string() + ": empty matrix");
  std::vector<std::vector<double>> rows;
  for (const auto& line : lines) {
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const size_t comma = rest.find(',');
      row.push_back(parse_real(rest.substr(0, comma), path));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw MalformedFile(path.string() + ": ragged matrix");
    }
    rows.push_back(std::move(row));
  }
  Array2<double> values(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c) values(r, c) = rows[r][c];
  }
  return Field::from_values(std::move(values));
}

void write_matrix(const Field& f, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  for (Index r = 0; r < f.values.rows(); ++r) {
    for (Index c = 0; c < f.values.cols(); ++c) {
      if (c) out << ',';
      write_real(out, f.values(r, c));
    }
    out << '\n';
  }
  finish_write(out, path);
}

Field read_field(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm" ? read_image(path) : read_matrix(path);
}

GaussianNoise::GaussianNoise(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t GaussianNoise::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double GaussianNoise::next_uniform() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double GaussianNoise::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * EIGEN_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Field add_gaussian_noise(const Field& f, const NoiseSpec& spec) {
  if (!std::isfinite(spec.sigma) || spec.sigma < 0.0) {
    throw std::invalid_argument("noise sigma must be finite and >= 0");
  }
  Field out = f;
  if (spec.sigma == 0.0) return out;
  GaussianNoise rng(spec.seed);
  for (Index c = 0; c < out.values.cols(); ++c) {
    for (Index r = 0; r < out.values.rows(); ++r) out.values(r, c) += spec.sigma * rng.next_normal();
  }
  return out;
}

Field prewitt(const Field& f) {
  if (f.grid.dims != 2 || f.values.rows() < 2) throw Requires2D("prewitt needs a 2D field");
  const Index h = f.values.rows(), w = f.values.cols();
  auto at = [&](Index r, Index c) { return f.values((r + h) % h, (c + w) % w); };
  Array2<double> out(h, w);
  for (Index r = 0; r < h; ++r) {
    for (Index c = 0; c < w; ++c) {
      double gx = 0.0, gy = 0.0;
      for (Index k = -1; k <= 1; ++k) {
        gx += at(r + k, c + 1) - at(r + k, c - 1);
        gy += at(r + 1, c + k) - at(r - 1, c + k);
      }
      out(r, c) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return Field(f.grid, std::move(out));
}

Pattern parse_pattern(std::string_view name) {
  if (name == "box") return Pattern::Box;
  if (name == "step") return Pattern::Step;
  if (name == "disk") return Pattern::Disk;
  if (name == "checkerboard") return Pattern::Checkerboard;
  if (name == "gaussian") return Pattern::Gaussian;
  if (name == "shapes") return Pattern::Shapes;
  throw UnknownKind("unknown test pattern '" + std::string(name) + "'");
}

const char* to_string(Pattern p) {
  switch (p) {
    case Pattern::Box: return "box";
    case Pattern::Step: return "step";
    case Pattern::Disk: return "disk";
    case Pattern::Checkerboard: return "checkerboard";
    case Pattern::Gaussian: return "gaussian";
    case Pattern::Shapes: return "shapes";
  }
  return "unknown";
}

Field make_test_pattern(Pattern kind, const Grid& grid) {
  const bool two_d = grid.dims == 2;
  auto need_1d = [&] {
    if (two_d) throw UnknownKind(std::string(to_string(kind)) + " pattern is 1D only");
  };
  auto need_2d = [&] {
    if (!two_d) throw Requires2D(std::string(to_string(kind)) + " pattern is 2D only");
  };
  const double half_min = two_d ? std::min(grid.lx, grid.ly) : grid.lx;
  switch (kind) {
    case Pattern::Box: {
      need_1d();
      // Index-based distance keeps the pattern exactly symmetric.
      const double w = grid.lx / 4.0;
      return Field::sample(grid, [&](double x, double) { return std::abs(x) <= w ? 1.0 : 0.0; });
    }
    case Pattern::Step:
      need_1d();
      return Field::sample(grid, [](double x, double) { return x >= 0.0 ? 1.0 : 0.0; });
    case Pattern::Disk: {
      need_2d();
      const double r2 = half_min * half_min / 4.0;
      return Field::sample(grid, [&](double x, double y) { return x * x + y * y <= r2 ? 1.0 : 0.0; });
    }
    case Pattern::Checkerboard: {
      need_2d();
      const Index cx = std::max<Index>(grid.nx / 8, 1), cy = std::max<Index>(grid.ny / 8, 1);
      Array2<double> v(grid.ny, grid.nx);
      for (Index r = 0; r < grid.ny; ++r) {
        for (Index c = 0; c < grid.nx; ++c) v(r, c) = ((r / cy + c / cx) % 2) ? 1.0 : 0.0;
      }
      return Field(grid, std::move(v));
    }
    case Pattern::Gaussian: {
      const double w = half_min / 8.0;
      return Field::sample(grid, [&](double x, double y) {
        return std::exp(-(x * x + y * y) / (2.0 * w * w));
      });
    }
    case Pattern::Shapes: {
      need_2d();
      return Field::sample(grid, [&](double x, double y) {
        const double sx = x / grid.lx, sy = y / grid.ly;
        if (std::abs(sx) < 0.7 && std::abs(sy - 0.6) < 0.08) return 230.0;
        const double dx = sx + 0.35, dy = sy + 0.3;
        if (dx * dx + dy * dy < 0.09) return 200.0;
        if (std::abs(sx - 0.4) < 0.25 && std::abs(sy + 0.25) < 0.25) return 120.0;
        return 40.0;
      });
    }
  }
  throw UnknownKind("unknown test pattern");
}

Field make_test_pattern(std::string_view kind, const Grid& grid) {
  return make_test_pattern(parse_pattern(kind), grid);
}

DisplayImage display_normalize(const Field& f) {
  DisplayImage out{Field::zeros(f.grid), f.values.minCoeff(), f.values.maxCoeff()};
  const double spread = out.max - out.min;
  const double magnitude = std::max(std::abs(out.min), std::abs(out.max));
  if (spread <= 1e-9 * std::max(magnitude, 1.0)) return out;
  out.image.values = 255.0 * (f.values - out.min) / spread;
  return out;
}

}  // namespace xdiff
