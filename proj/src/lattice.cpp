#include "aotoc/lattice.hpp"

#include "aotoc/parallel.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace aotoc {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, int line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("csv line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  return v;
}

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  if (v.empty()) return m;
  m.mean = pairwise_sum(v) / static_cast<double>(v.size());
  if (v.size() < 2) return m;
  std::vector<double> dev(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) dev[i] = (v[i] - m.mean) * (v[i] - m.mean);
  m.stddev = std::sqrt(pairwise_sum(dev) / static_cast<double>(v.size() - 1));
  return m;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

Lattice build_lattice(const LatticeSpec& spec) {
  const int rows = spec.rows, cols = spec.cols;
  if (rows < 1 || cols < 1) throw std::invalid_argument("lattice: rows and cols must be positive");
  if (rows * cols > kMaxLatticeSites) throw std::invalid_argument("lattice: at most 400 sites");
  if (spec.periodic && (rows < 3 || cols < 3))
    throw std::invalid_argument("lattice: periodic lattices need rows, cols >= 3 (smaller tori create repeated edges)");
  if (rows * cols < 2) throw std::invalid_argument("lattice: need at least two sites");
  auto site = [cols](int r, int c) { return r * cols + c; };
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols || spec.periodic) edges.push_back({site(r, c), site(r, (c + 1) % cols), 0.0, spec.pauli_pair});
      if (r + 1 < rows || spec.periodic) edges.push_back({site(r, c), site((r + 1) % rows, c), 0.0, spec.pauli_pair});
    }
  const std::size_t nn = edges.size();
  if (spec.nnn)
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        const bool down = r + 1 < rows || spec.periodic;
        if (down && (c + 1 < cols || spec.periodic))
          edges.push_back({site(r, c), site((r + 1) % rows, (c + 1) % cols), 0.0, spec.pauli_pair});
        if (down && (c >= 1 || spec.periodic))
          edges.push_back({site(r, c), site((r + 1) % rows, (c + cols - 1) % cols), 0.0, spec.pauli_pair});
      }
  return {InteractionGraph(rows * cols, std::move(edges)), nn};
}

InteractionGraph sample_couplings(const Lattice& lattice, double nn_sigma, double x, Seed seed) {
  std::mt19937_64 rng(mix_seed(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  InteractionGraph g = lattice.graph;
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const double z = normal(rng);
    g.set_coupling(k, (k < lattice.nn_edges ? nn_sigma : x) * z);
  }
  return g;
}

void validate(const SweepConfig& cfg) {
  (void)build_lattice(cfg.lattice);
  if (cfg.samples_per_x < 1) throw std::invalid_argument("samples_per_x must be positive");
  if (cfg.x_grid.empty()) throw std::invalid_argument("x_grid must not be empty");
  for (std::size_t k = 0; k < cfg.x_grid.size(); ++k) {
    if (!(cfg.x_grid[k] >= 0.0) || !std::isfinite(cfg.x_grid[k]))
      throw std::invalid_argument("x_grid entries must be finite and nonnegative");
    if (k > 0 && !(cfg.x_grid[k] > cfg.x_grid[k - 1])) throw std::invalid_argument("x_grid must be ascending");
  }
  if (!(cfg.nn_sigma >= 0.0) || !std::isfinite(cfg.nn_sigma)) throw std::invalid_argument("nn_sigma must be nonnegative");
}

Seed sample_seed(Seed base, std::size_t x_index, std::size_t sample) { return derive_seed(base, x_index, sample); }

CutResult sweep_sample(const Lattice& lattice, const SweepConfig& cfg, std::size_t x_index, std::size_t sample) {
  const InteractionGraph g =
      sample_couplings(lattice, cfg.nn_sigma, cfg.x_grid[x_index], sample_seed(cfg.base_seed, x_index, sample));
  return stoer_wagner(g);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, int threads) {
  validate(cfg);
  const Lattice lattice = build_lattice(cfg.lattice);
  const std::size_t per_x = static_cast<std::size_t>(cfg.samples_per_x);
  const std::size_t total = cfg.x_grid.size() * per_x;
  std::vector<double> rates(total), sizes(total);
  parallel_for(total, threads, [&](std::size_t idx) {
    const CutResult r = sweep_sample(lattice, cfg, idx / per_x, idx % per_x);
    rates[idx] = r.rate;
    sizes[idx] = static_cast<double>(r.S.size());
  });
  std::vector<SweepRecord> out;
  for (std::size_t xi = 0; xi < cfg.x_grid.size(); ++xi) {
    const auto first = static_cast<std::ptrdiff_t>(xi * per_x), last = first + static_cast<std::ptrdiff_t>(per_x);
    const Moments mr = moments({rates.begin() + first, rates.begin() + last});
    const Moments ms = moments({sizes.begin() + first, sizes.begin() + last});
    out.push_back({cfg.x_grid[xi], mr.mean, mr.stddev, ms.mean, ms.stddev, cfg.samples_per_x});
  }
  return out;
}

std::vector<double> x_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("x_grid: need step > 0 and hi >= lo");
  const long count = std::lround((hi - lo) / step);
  std::vector<double> g;
  for (long k = 0; k <= count; ++k) g.push_back(lo + static_cast<double>(k) * step);
  return g;
}

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : records)
    out += format_double(r.x) + "," + format_double(r.mean_rate) + "," + format_double(r.std_rate) + "," +
           format_double(r.mean_S_size) + "," + format_double(r.std_S_size) + "," + std::to_string(r.n_samples) + "\n";
  return out;
}

std::vector<SweepRecord> from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("csv: missing or wrong header");
  std::vector<SweepRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1))
      fields.push_back(rest.substr(0, pos));
    fields.push_back(rest);
    if (fields.size() != 6) throw std::invalid_argument("csv line " + std::to_string(lineno) + ": expected 6 fields");
    SweepRecord r;
    r.x = parse_double(fields[0], lineno);
    r.mean_rate = parse_double(fields[1], lineno);
    r.std_rate = parse_double(fields[2], lineno);
    r.mean_S_size = parse_double(fields[3], lineno);
    r.std_S_size = parse_double(fields[4], lineno);
    r.n_samples = static_cast<int>(parse_double(fields[5], lineno));
    out.push_back(r);
  }
  return out;
}

void write_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << to_csv(records);
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<SweepRecord> read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return from_csv(ss.str());
}

std::string to_svg(const std::vector<SweepRecord>& records, const std::string& y_field) {
  const bool rate = y_field == "mean_rate";
  if (!rate && y_field != "mean_S_size") throw std::invalid_argument("svg: y field must be mean_rate or mean_S_size");
  auto y_of = [&](const SweepRecord& r) { return rate ? r.mean_rate : r.mean_S_size; };
  auto s_of = [&](const SweepRecord& r) { return rate ? r.std_rate : r.std_S_size; };
  constexpr double W = 640, H = 400, M = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!records.empty()) {
    x0 = x1 = records.front().x;
    y0 = y1 = y_of(records.front());
    for (const auto& r : records) {
      x0 = std::min(x0, r.x);
      x1 = std::max(x1, r.x);
      y0 = std::min(y0, y_of(r) - s_of(r));
      y1 = std::max(y1, y_of(r) + s_of(r));
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
  }
  auto px = [&](double x) { return format_double(M + (x - x0) / (x1 - x0) * (W - 2 * M)); };
  auto py = [&](double y) { return format_double(H - M - (y - y0) / (y1 - y0) * (H - 2 * M)); };
  std::string band, line;
  for (const auto& r : records) band += px(r.x) + "," + py(y_of(r) + s_of(r)) + " ";
  for (auto it = records.rbegin(); it != records.rend(); ++it) band += px(it->x) + "," + py(y_of(*it) - s_of(*it)) + " ";
  for (const auto& r : records) line += px(r.x) + "," + py(y_of(r)) + " ";
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << " " << H << "\">\n"
      << "  <rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
      << "  <line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
      << "\" stroke=\"black\"/>\n"
      << "  <line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n"
      << "  <text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">x</text>\n"
      << "  <text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2 << ")\" text-anchor=\"middle\">"
      << escape_xml(y_field) << "</text>\n"
      << "  <text x=\"" << M << "\" y=\"" << M - 10 << "\">" << format_double(y1) << "</text>\n"
      << "  <text x=\"" << M << "\" y=\"" << H - M + 15 << "\">" << format_double(x0) << "</text>\n"
      << "  <text x=\"" << W - M << "\" y=\"" << H - M + 15 << "\" text-anchor=\"end\">" << format_double(x1)
      << "</text>\n";
  if (!records.empty()) {
    out << "  <polygon points=\"" << band << "\" fill=\"steelblue\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
    out << "  <polyline points=\"" << line << "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void render_svg(const std::vector<SweepRecord>& records, const std::string& path, const std::string& y_field) {
  const std::string svg = to_svg(records, y_field);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << svg;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

QuadraticFit fit_quadratic(const std::vector<double>& x, const std::vector<double>& y, bool even_only) {
  if (x.size() != y.size() || x.size() < 3) throw std::invalid_argument("fit_quadratic: need >= 3 matching points");
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  const Eigen::Index cols = even_only ? 2 : 3;
  Eigen::MatrixXd design(n, cols);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    if (even_only) {
      design(i, 1) = xi * xi;
    } else {
      design(i, 1) = xi;
      design(i, 2) = xi * xi;
    }
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  QuadraticFit f;
  f.a = coef(0);
  if (even_only) {
    f.c = coef(1);
  } else {
    f.b = coef(1);
    f.c = coef(2);
  }
  const Eigen::VectorXd resid = rhs - design * coef;
  const double mean = rhs.mean();
  const double ss_tot = (rhs.array() - mean).square().sum();
  f.r_squared = ss_tot > 0.0 ? 1.0 - resid.squaredNorm() / ss_tot : 1.0;
  return f;
}

}  // namespace aotoc
