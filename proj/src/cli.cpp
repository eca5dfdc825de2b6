#include "xdiff/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "xdiff/errors.hpp"
#include "xdiff/filter_engine.hpp"
#include "xdiff/quality_metrics.hpp"
#include "xdiff/spectral_core.hpp"

namespace xdiff::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

std::array<double, 4> parse_d(const std::string& text) {
  const auto values = parse_real_list(text);
  if (values.size() != 4) throw UsageError("--d expects four values d11,d12,d21,d22");
  return {values[0], values[1], values[2], values[3]};
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const double v : parse_real_list(text)) {
    if (v != std::floor(v)) throw UsageError("expected integers in '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string num(double v, int precision = 12) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

DiffusionMatrixd to_matrix(const std::array<double, 4>& d) {
  return validate_matrix(d[0], d[1], d[2], d[3]);
}

std::vector<double> times_or(const RunManifest& m, std::vector<double> fallback) {
  auto times = m.times.value_or(std::move(fallback));
  validate_time_grid(times);
  return times;
}

double single_time(const RunManifest& m, double fallback) {
  const auto times = times_or(m, {fallback});
  if (times.size() != 1) throw UsageError("this command takes a single time (--t)");
  return times.front();
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  return out;
}

fs::path prepare_output_dir(const RunManifest& m) {
  fs::path dir(m.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

// Places an image inside a zero-padded periodic grid with unit spacing.
struct Embedding {
  Grid grid;
  Index row0 = 0, col0 = 0, rows = 0, cols = 0;

  Field embed(const Field& f) const {
    Field out = Field::zeros(grid);
    out.values.block(row0, col0, rows, cols) = f.values;
    return out;
  }

  Field crop(const Field& f) const {
    return Field::from_values(f.values.block(row0, col0, rows, cols));
  }
};

Embedding make_embedding(const Field& image, double pad) {
  if (!(pad >= 0.0) || !std::isfinite(pad)) throw UsageError("--pad must be >= 0");
  Embedding e;
  e.rows = image.values.rows();
  e.cols = image.values.cols();
  auto padded = [&](Index n, Index& margin) {
    margin = static_cast<Index>(std::ceil(pad * static_cast<double>(n)));
    Index total = n + 2 * margin;
    if (total % 2) ++total;
    return std::max<Index>(total, 4);
  };
  const Index total_c = padded(e.cols, e.col0);
  if (e.rows == 1) {
    e.grid = Grid::line(total_c / 2.0, total_c);
  } else {
    const Index total_r = padded(e.rows, e.row0);
    e.grid = Grid::plane(total_c / 2.0, total_r / 2.0, total_c, total_r);
  }
  return e;
}

PsnrMode psnr_mode(const RunManifest& m) {
  return m.mse_psnr ? PsnrMode::MeanSquare : PsnrMode::Literal;
}

void require_input(const RunManifest& m) {
  if (m.input.empty()) throw UsageError("--input is required");
}

// Noisy input and the clean reference used for the metrics.
struct Inputs {
  Field noisy;
  Field reference;
};

Inputs load_inputs(const RunManifest& m) {
  require_input(m);
  const Field clean = read_field(m.input);
  if (m.noise) return {add_gaussian_noise(clean, *m.noise), clean};
  Field reference = m.reference.empty() ? clean : read_field(m.reference);
  if (reference.values.rows() != clean.values.rows() || reference.values.cols() != clean.values.cols()) {
    throw UsageError("--reference must have the same size as --input");
  }
  return {clean, std::move(reference)};
}

int cmd_decompose(const RunManifest& m, std::ostream& out) {
  const auto d = to_matrix(m.d);
  const auto dec = decompose(d);
  const auto [l1, l2] = d.eigenvalues();
  auto print_matrix = [&](const char* name, const Matrix2d& a) {
    out << name << ": [[" << num(a(0, 0)) << ", " << num(a(0, 1)) << "], [" << num(a(1, 0)) << ", "
        << num(a(1, 1)) << "]]\n";
  };
  out << "case: " << to_string(dec.spectral_case) << '\n';
  out << "q: " << num(d.q()) << "\nr: " << num(d.r()) << "\ns: " << num(d.s()) << "\nm: " << num(dec.m)
      << '\n';
  if (l1.imag() != 0.0) {
    out << "eigenvalues: " << num(l1.real()) << " +- " << num(std::abs(l1.imag())) << "i\n";
  } else {
    out << "eigenvalues: " << num(l1.real()) << ", " << num(l2.real()) << '\n';
  }
  print_matrix("P", dec.P);
  print_matrix("Lambda", dec.Lambda);
  out << "reconstruction_error: " << num((dec.reconstruct() - d.matrix()).norm() / d.matrix().norm(), 3)
      << '\n';
  return kOk;
}

int cmd_filter(const RunManifest& m, std::ostream& out) {
  const auto times = times_or(m, {0.0});
  const auto d = to_matrix(m.d);
  const Inputs in = load_inputs(m);
  const Embedding emb = make_embedding(in.noisy, m.pad);
  const Field u0 = emb.embed(in.noisy);
  FieldPair pair0 = m.input_v.empty()
                        ? initial_distribution(u0, initial_kind_from_int(m.kind))
                        : FieldPair(u0, emb.embed(read_field(m.input_v)));
  const CrossDiffusionFilter<double> filter(pair0, d, m.p);
  const fs::path dir = prepare_output_dir(m);
  if (m.noise) write_image(in.noisy, dir / "input_noisy.pgm");

  auto csv = open_output(dir / "metrics.csv");
  csv << "t,snr,psnr,entropy,avg_grey_u,avg_grey_v,v_min,v_max\n";
  for (const double t : times) {
    const FieldPair pair = filter.at(t);
    const auto rep = measure(t, in.reference.values, pair, emb.row0, emb.col0, 255.0, psnr_mode(m));
    const Field u = emb.crop(pair.u), v = emb.crop(pair.v);
    const auto v_display = display_normalize(v);
    const std::string label = num(t, 10);
    write_image(u, dir / ("u_t" + label + ".pgm"));
    write_image(v_display.image, dir / ("v_t" + label + ".pgm"));
    if (m.raw) {
      write_matrix(u, dir / ("u_t" + label + ".csv"));
      write_matrix(v, dir / ("v_t" + label + ".csv"));
    }
    csv << num(t) << ',' << num(rep.snr) << ',' << num(rep.psnr) << ',' << num(rep.entropy) << ','
        << num(rep.avg_grey[0]) << ',' << num(rep.avg_grey[1]) << ',' << num(v_display.min) << ','
        << num(v_display.max) << '\n';
    out << "t=" << num(t) << " snr=" << num(rep.snr, 6) << " psnr=" << num(rep.psnr, 6) << '\n';
  }
  return kOk;
}

int cmd_edges(const RunManifest& m, std::ostream& out) {
  const double t = single_time(m, 0.1);
  const auto d = to_matrix(m.d);
  const Inputs in = load_inputs(m);
  if (in.noisy.grid.dims != 2) throw Requires2D("edges needs a 2D image");
  const Embedding emb = make_embedding(in.noisy, m.pad);
  const FilterConfig cfg(d, m.p, InitialKind::Plain, emb.grid);
  const Field edges = emb.crop(edge_map(emb.embed(in.noisy), cfg, t));
  const Field baseline = prewitt(in.noisy);
  const auto edges_display = display_normalize(edges);
  const auto baseline_display = display_normalize(baseline);

  const fs::path dir = prepare_output_dir(m);
  write_image(edges_display.image, dir / "edges.pgm");
  write_image(baseline_display.image, dir / "prewitt.pgm");
  if (m.raw) {
    write_matrix(edges, dir / "edges.csv");
    write_matrix(baseline, dir / "prewitt.csv");
  }
  auto csv = open_output(dir / "edges_range.csv");
  csv << "map,min,max\n";
  csv << "edges," << num(edges_display.min) << ',' << num(edges_display.max) << '\n';
  csv << "prewitt," << num(baseline_display.min) << ',' << num(baseline_display.max) << '\n';
  out << "edges range [" << num(edges_display.min, 6) << ", " << num(edges_display.max, 6) << "]\n";
  return kOk;
}

int cmd_sweep(const RunManifest& m, std::ostream& out) {
  const int axes = !m.p_values.empty() + !m.d_list.empty() + !m.sigmas.empty();
  if (axes != 1) throw UsageError("sweep needs exactly one non-empty axis: --p-values, --d-list or --sigmas");
  const double t = single_time(m, 5.0);
  std::vector<int> kinds = m.kinds.empty() ? std::vector<int>{m.kind} : m.kinds;
  for (const int k : kinds) initial_kind_from_int(k);
  require_input(m);
  const Field clean = read_field(m.input);
  const Embedding emb = make_embedding(clean, m.pad);
  const std::uint64_t base_seed = m.noise ? m.noise->seed : 0;

  const fs::path dir = prepare_output_dir(m);
  auto csv = open_output(dir / "sweep.csv");
  csv << "# seed policy: seed = base_seed + index (sigma axis); base_seed = " << base_seed << '\n';
  csv << "axis,value,kind,d11,d12,d21,d22,p,sigma,seed,snr,psnr\n";

  auto run_point = [&](const std::string& axis, double value, const std::array<double, 4>& dv, double p,
                       const Inputs& in, double sigma, std::uint64_t seed) {
    const auto d = to_matrix(dv);
    const Field u0 = emb.embed(in.noisy);
    for (const int kind : kinds) {
      const FieldPair pair = evolve(initial_distribution(u0, initial_kind_from_int(kind)),
                                    FilterConfig(d, p, initial_kind_from_int(kind), emb.grid), t);
      const auto rep = measure(t, in.reference.values, pair, emb.row0, emb.col0, 255.0, psnr_mode(m));
      csv << axis << ',' << num(value) << ',' << kind << ',' << num(dv[0]) << ',' << num(dv[1]) << ','
          << num(dv[2]) << ',' << num(dv[3]) << ',' << num(p) << ',' << num(sigma) << ',' << seed << ','
          << num(rep.snr) << ',' << num(rep.psnr) << '\n';
    }
  };

  if (!m.sigmas.empty()) {
    for (size_t i = 0; i < m.sigmas.size(); ++i) {
      const NoiseSpec spec{m.sigmas[i], base_seed + i};
      const Inputs in{add_gaussian_noise(clean, spec), clean};
      run_point("sigma", spec.sigma, m.d, m.p, in, spec.sigma, spec.seed);
    }
  } else {
    const Inputs in = load_inputs(m);
    const double sigma = m.noise ? m.noise->sigma : 0.0;
    if (!m.p_values.empty()) {
      for (const double p : m.p_values) {
        if (!(p > 0.0)) throw UsageError("p values must be > 0");
        run_point("p", p, m.d, p, in, sigma, base_seed);
      }
    } else {
      for (size_t i = 0; i < m.d_list.size(); ++i) {
        run_point("d", static_cast<double>(i), m.d_list[i], m.p, in, sigma, base_seed);
      }
    }
  }
  out << "wrote " << (dir / "sweep.csv").string() << '\n';
  return kOk;
}

int cmd_demo1d(const RunManifest& m, std::ostream& out) {
  const auto times = times_or(m, {0.0, 0.25, 2.5, 25.0});
  const auto d = to_matrix(m.d);
  const Grid grid = Grid::line(m.L, m.N);
  Field f;
  try {
    f = make_test_pattern(m.pattern, grid);
  } catch (const Requires2D&) {
    throw UsageError("demo1d needs a 1D pattern (box, step, gaussian)");
  }
  const CrossDiffusionFilter<double> filter(initial_distribution(f, initial_kind_from_int(m.kind)), d, m.p);
  std::vector<FieldPair> profiles;
  profiles.reserve(times.size());
  for (const double t : times) profiles.push_back(filter.at(t));

  const fs::path dir = prepare_output_dir(m);
  auto csv = open_output(dir / "profiles.csv");
  csv << 'x';
  for (const double t : times) csv << ",u_t" << num(t, 10) << ",v_t" << num(t, 10);
  csv << '\n';
  for (Index j = 0; j < grid.nx; ++j) {
    csv << num(grid.x(j), 17);
    for (const auto& pr : profiles) csv << ',' << num(pr.u.values(0, j), 17) << ',' << num(pr.v.values(0, j), 17);
    csv << '\n';
  }
  out << "wrote " << (dir / "profiles.csv").string() << '\n';
  return kOk;
}

// Raw flag storage shared by all subcommands; only the parsed one writes.
struct Flags {
  std::string config, d, times, input, input_v, reference, output_dir, p_values, d_list, sigmas, kinds,
      pattern;
  double p = 0, t = 0, sigma = 0, pad = 0, L = 0;
  long N = 0;
  int kind = 0;
  std::uint64_t seed = 0;
  bool raw = false, mse_psnr = false;
};

using OptionMap = std::map<std::string, CLI::Option*>;

void apply_flags(const OptionMap& opts, const Flags& f, RunManifest& m) {
  auto has = [&](const std::string& name) {
    const auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  };
  if (has("--d")) m.d = parse_d(f.d);
  if (has("--p")) m.p = f.p;
  if (has("--kind")) m.kind = f.kind;
  if (has("--times")) m.times = parse_real_list(f.times);
  if (has("--t")) m.times = std::vector<double>{f.t};
  if (has("--input")) m.input = f.input;
  if (has("--input-v")) m.input_v = f.input_v;
  if (has("--reference")) m.reference = f.reference;
  if (has("--output-dir")) m.output_dir = f.output_dir;
  if (has("--pad")) m.pad = f.pad;
  if (has("--raw")) m.raw = f.raw;
  if (has("--mse-psnr")) m.mse_psnr = f.mse_psnr;
  if (has("--sigma") || has("--seed")) {
    NoiseSpec spec = m.noise.value_or(NoiseSpec{});
    if (has("--sigma")) spec.sigma = f.sigma;
    if (has("--seed")) spec.seed = f.seed;
    m.noise = spec;
  }
  if (has("--p-values")) m.p_values = parse_real_list(f.p_values);
  if (has("--sigmas")) m.sigmas = parse_real_list(f.sigmas);
  if (has("--kinds")) m.kinds = parse_int_list(f.kinds);
  if (has("--d-list")) {
    m.d_list.clear();
    for (const auto& item : split(f.d_list, ';')) m.d_list.push_back(parse_d(item));
  }
  if (has("--pattern")) m.pattern = f.pattern;
  if (has("--L")) m.L = f.L;
  if (has("--N")) m.N = f.N;
  if (m.noise && (!(m.noise->sigma >= 0.0) || !std::isfinite(m.noise->sigma))) {
    throw UsageError("--sigma must be >= 0");
  }
}

int run_parsed(CLI::App& app, const std::map<CLI::App*, OptionMap>& options, Flags& flags, std::ostream& out) {
  for (const auto& [sub, opts] : options) {
    if (!sub->parsed()) continue;
    RunManifest m;
    if (opts.count("--config") && opts.at("--config")->count() > 0) {
      std::ifstream in(flags.config);
      if (!in) throw IoFailure("cannot open config " + flags.config);
      std::ostringstream text;
      text << in.rdbuf();
      m = manifest_from_json(text.str());
    }
    apply_flags(opts, flags, m);
    const std::string name = sub->get_name();
    if (name == "decompose") return cmd_decompose(m, out);
    if (name == "filter") return cmd_filter(m, out);
    if (name == "edges") return cmd_edges(m, out);
    if (name == "sweep") return cmd_sweep(m, out);
    if (name == "demo1d") return cmd_demo1d(m, out);
  }
  throw UsageError(app.help());
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) continue;
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
  }
  return values;
}

void validate_time_grid(const std::vector<double>& times) {
  if (times.empty()) throw UsageError("time grid is empty");
  for (size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) throw UsageError("times must be finite and >= 0");
    if (i > 0 && !(times[i] > times[i - 1])) throw UsageError("times must be strictly increasing");
  }
}

RunManifest manifest_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  RunManifest m;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "d") {
        const auto v = value.get<std::vector<double>>();
        if (v.size() != 4) throw UsageError("config d must have four entries");
        m.d = {v[0], v[1], v[2], v[3]};
      } else if (key == "p") {
        m.p = value.get<double>();
      } else if (key == "kind") {
        m.kind = value.get<int>();
      } else if (key == "times") {
        m.times = value.get<std::vector<double>>();
      } else if (key == "t") {
        m.times = std::vector<double>{value.get<double>()};
      } else if (key == "noise") {
        m.noise = NoiseSpec{value.value("sigma", 0.0), value.value("seed", std::uint64_t{0})};
      } else if (key == "input") {
        m.input = value.get<std::string>();
      } else if (key == "input_v") {
        m.input_v = value.get<std::string>();
      } else if (key == "reference") {
        m.reference = value.get<std::string>();
      } else if (key == "output_dir") {
        m.output_dir = value.get<std::string>();
      } else if (key == "pad") {
        m.pad = value.get<double>();
      } else if (key == "raw") {
        m.raw = value.get<bool>();
      } else if (key == "mse_psnr") {
        m.mse_psnr = value.get<bool>();
      } else if (key == "p_values") {
        m.p_values = value.get<std::vector<double>>();
      } else if (key == "sigmas") {
        m.sigmas = value.get<std::vector<double>>();
      } else if (key == "kinds") {
        m.kinds = value.get<std::vector<int>>();
      } else if (key == "d_list") {
        for (const auto& item : value) {
          const auto v = item.get<std::vector<double>>();
          if (v.size() != 4) throw UsageError("config d_list entries must have four values");
          m.d_list.push_back({v[0], v[1], v[2], v[3]});
        }
      } else if (key == "pattern") {
        m.pattern = value.get<std::string>();
      } else if (key == "L") {
        m.L = value.get<double>();
      } else if (key == "N") {
        m.N = value.get<long>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  return m;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear cross-diffusion filtering of signals and grey-scale images", "xdiff"};
  app.require_subcommand(1);
  Flags f;
  std::map<CLI::App*, OptionMap> options;

  auto add = [&](CLI::App* sub, const std::string& name, auto& var, const std::string& help) {
    options[sub][name] = sub->add_option(name, var, help);
  };
  auto add_flag = [&](CLI::App* sub, const std::string& name, bool& var, const std::string& help) {
    options[sub][name] = sub->add_flag(name, var, help);
  };
  auto add_matrix = [&](CLI::App* sub) {
    add(sub, "--config", f.config, "JSON run manifest; flags override its keys");
    add(sub, "--d", f.d, "diffusion matrix \"d11,d12,d21,d22\"");
  };
  auto add_filter_common = [&](CLI::App* sub) {
    add_matrix(sub);
    add(sub, "--p", f.p, "symbol exponent p > 0");
    add(sub, "--input", f.input, "input image (.pgm) or raw matrix (.csv)");
    add(sub, "--output-dir", f.output_dir, "directory for outputs");
    add(sub, "--sigma", f.sigma, "add Gaussian noise with this standard deviation");
    add(sub, "--seed", f.seed, "noise seed");
    add(sub, "--pad", f.pad, "zero-padding margin as a fraction of the image size");
  };

  auto* decompose_cmd = app.add_subcommand("decompose", "spectral reduction of a diffusion matrix");
  add_matrix(decompose_cmd);

  auto* filter_cmd = app.add_subcommand("filter", "filter an image at a list of times");
  add_filter_common(filter_cmd);
  add(filter_cmd, "--kind", f.kind, "initial distribution 0: (f,0) 1: (f,|grad f|) 2: (f,-|grad f| lap f)");
  add(filter_cmd, "--times", f.times, "comma separated, strictly increasing times");
  add(filter_cmd, "--t", f.t, "single time");
  add(filter_cmd, "--input-v", f.input_v, "second component; overrides --kind");
  add(filter_cmd, "--reference", f.reference, "clean reference image for the metrics");
  add_flag(filter_cmd, "--raw", f.raw, "also write unquantized CSV matrices");
  add_flag(filter_cmd, "--mse-psnr", f.mse_psnr, "PSNR with mean-square normalization");

  auto* edges_cmd = app.add_subcommand("edges", "edge channel v/d21 and Prewitt baseline");
  add_filter_common(edges_cmd);
  add(edges_cmd, "--t", f.t, "time");
  add_flag(edges_cmd, "--raw", f.raw, "also write unquantized CSV matrices");

  auto* sweep_cmd = app.add_subcommand("sweep", "SNR/PSNR over p, d or noise level");
  add_filter_common(sweep_cmd);
  add(sweep_cmd, "--kind", f.kind, "initial distribution kind");
  add(sweep_cmd, "--kinds", f.kinds, "comma separated kinds, one row each");
  add(sweep_cmd, "--t", f.t, "time");
  add(sweep_cmd, "--reference", f.reference, "clean reference image for the metrics");
  add(sweep_cmd, "--p-values", f.p_values, "p axis, e.g. 2,3,4,5,6");
  add(sweep_cmd, "--d-list", f.d_list, "d axis, e.g. \"1,0.9,1,1;1,-0.9,1,1\"");
  add(sweep_cmd, "--sigmas", f.sigmas, "noise axis, e.g. 15,25,35");
  add_flag(sweep_cmd, "--mse-psnr", f.mse_psnr, "PSNR with mean-square normalization");

  auto* demo_cmd = app.add_subcommand("demo1d", "1D profiles of u and v");
  add_matrix(demo_cmd);
  add(demo_cmd, "--p", f.p, "symbol exponent p > 0");
  add(demo_cmd, "--kind", f.kind, "initial distribution kind");
  add(demo_cmd, "--times", f.times, "comma separated, strictly increasing times");
  add(demo_cmd, "--pattern", f.pattern, "box, step or gaussian");
  add(demo_cmd, "--L", f.L, "half width of the interval (-L, L)");
  add(demo_cmd, "--N", f.N, "number of samples (even)");
  add(demo_cmd, "--output-dir", f.output_dir, "directory for outputs");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    return run_parsed(app, options, f, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const PositiveDefinitenessViolation& e) {
    err << "error: " << e.what() << '\n';
    return kNotPositiveDefinite;
  } catch (const ZeroCouplingError& e) {
    err << "error: " << e.what() << '\n';
    return kZeroCoupling;
  } catch (const IoFailure& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const MalformedFile& e) {
    err << "malformed input: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace xdiff::cli
