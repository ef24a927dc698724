#include "aotoc/lattice.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace aotoc;

namespace {

SweepConfig torus(int rows, int cols, std::vector<double> xs, int samples, bool nnn = true) {
  SweepConfig cfg;
  cfg.lattice = {rows, cols, true, nnn, "ZZ"};
  cfg.x_grid = std::move(xs);
  cfg.samples_per_x = samples;
  cfg.base_seed = 2024;
  return cfg;
}

double se(const SweepRecord& r) { return r.std_S_size / std::sqrt(static_cast<double>(r.n_samples)); }

// Minimal XML check: balanced tags, counts of a given element.
bool balanced_xml(const std::string& s, int& polylines) {
  std::vector<std::string> stack;
  polylines = 0;
  for (std::size_t i = s.find('<'); i != std::string::npos; i = s.find('<', i + 1)) {
    const std::size_t end = s.find('>', i);
    if (end == std::string::npos) return false;
    std::string tag = s.substr(i + 1, end - i - 1);
    if (tag.empty() || tag[0] == '?' || tag[0] == '!') continue;
    const bool closing = tag[0] == '/';
    const bool self = tag.back() == '/';
    std::string name = tag.substr(closing ? 1 : 0);
    name = name.substr(0, name.find_first_of(" /"));
    if (name == "polyline" && !closing) ++polylines;
    if (self) continue;
    if (closing) {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else {
      stack.push_back(name);
    }
  }
  return stack.empty();
}

}  // namespace

TEST_CASE("build_lattice edge counts") {
  CHECK(build_lattice({1, 7, false, false, "ZZ"}).graph.edges().size() == 6);
  CHECK(build_lattice({4, 4, false, false, "ZZ"}).graph.edges().size() == 24);
  const Lattice t = build_lattice({4, 4, true, true, "ZZ"});
  CHECK(t.nn_edges == 32);
  CHECK(t.graph.edges().size() == 64);
  CHECK_THROWS(build_lattice({2, 4, true, false, "ZZ"}));
  CHECK_THROWS(build_lattice({21, 20, false, false, "ZZ"}));
  // Row-major numbering, horizontal edge first.
  const Lattice g = build_lattice({2, 2, false, false, "ZZ"});
  CHECK(g.graph.edges()[0].i == 0);
  CHECK(g.graph.edges()[0].j == 1);
  CHECK(g.graph.edges()[1].j == 2);
}

TEST_CASE("sample_couplings") {
  const Lattice t = build_lattice({4, 4, true, true, "ZZ"});
  const InteractionGraph g0 = sample_couplings(t, 1.0, 0.0, 5);
  for (std::size_t k = t.nn_edges; k < g0.edges().size(); ++k) CHECK(g0.edges()[k].J == 0.0);

  const InteractionGraph a = sample_couplings(t, 1.0, 0.7, 9), b = sample_couplings(t, 1.0, 0.7, 9);
  for (std::size_t k = 0; k < a.edges().size(); ++k) CHECK(a.edges()[k].J == b.edges()[k].J);

  // Sample variance of the NN couplings over 1e5 draws; SE of s^2 is sqrt(2/(n-1)).
  const Lattice chain = build_lattice({1, 101, false, false, "ZZ"});
  double s1 = 0.0, s2 = 0.0;
  long n = 0;
  for (Seed seed = 0; n < 100000; ++seed)
    for (const auto& e : sample_couplings(chain, 1.0, 0.0, seed).edges()) {
      s1 += e.J;
      s2 += e.J * e.J;
      ++n;
    }
  const double mean = s1 / n, var = (s2 - n * mean * mean) / (n - 1);
  CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / (n - 1)));
}

TEST_CASE("x = 0 matches a nearest-neighbor run") {
  const auto with = run_sweep(torus(4, 4, {0.0}, 200, true));
  const auto without = run_sweep(torus(4, 4, {0.0}, 200, false));
  CHECK(with[0].mean_rate == without[0].mean_rate);
  CHECK(with[0].mean_S_size == without[0].mean_S_size);
}

TEST_CASE("sweep determinism across threads") {
  const SweepConfig cfg = torus(4, 4, x_grid(0.0, 2.0, 0.5), 100);
  CHECK(to_csv(run_sweep(cfg, 1)) == to_csv(run_sweep(cfg, 3)));
  CHECK(sample_seed(1, 2, 3) == sample_seed(1, 2, 3));
  CHECK(sample_seed(1, 2, 3) != sample_seed(1, 3, 2));
}

TEST_CASE("1xN chain has mean |S| near N/4") {
  SweepConfig cfg;
  cfg.lattice = {1, 20, false, false, "ZZ"};
  cfg.x_grid = {0.0};
  cfg.samples_per_x = 500;
  cfg.base_seed = 2024;
  const auto r = run_sweep(cfg);
  CHECK(std::abs(r[0].mean_S_size - 5.0) < 0.5);
}

TEST_CASE("non-monotone |S| on the 4x4 torus") {
  const auto r = run_sweep(torus(4, 4, x_grid(0.0, 5.0, 0.1), 500));
  const SweepRecord& at0 = r.front();
  std::size_t dip = 0;
  for (std::size_t k = 1; k < r.size(); ++k)
    if (r[k].x <= 1.5 && r[k].mean_S_size < r[dip].mean_S_size) dip = k;
  const SweepRecord& lo = r[dip];
  const SweepRecord& end = r.back();
  CHECK(at0.mean_S_size - lo.mean_S_size > 3.0 * std::hypot(se(at0), se(lo)));
  CHECK(end.mean_S_size - lo.mean_S_size > 3.0 * std::hypot(se(end), se(lo)));
}

TEST_CASE("larger lattices do not raise |S| in the dip") {
  const std::vector<double> xs = {0.6, 1.0, 1.4};
  const auto small = run_sweep(torus(4, 4, xs, 500));
  const auto large = run_sweep(torus(6, 6, xs, 500));
  for (std::size_t k = 0; k < xs.size(); ++k) {
    CAPTURE(xs[k]);
    CHECK(large[k].mean_S_size <= small[k].mean_S_size + 3.0 * std::hypot(se(large[k]), se(small[k])));
  }
}

TEST_CASE("strips approach the square value") {
  // n x N tori, n >= 4; see the notes for n = 3.
  for (int big : {6, 8}) {
    const double square = run_sweep(torus(big, big, {0.0}, 500, false))[0].mean_S_size;
    for (int n = 4; n < big; ++n) {
      CAPTURE(n);
      CAPTURE(big);
      const double strip = run_sweep(torus(n, big, {0.0}, 500, false))[0].mean_S_size;
      CHECK(std::abs(strip - square) <= 0.15 * square);
    }
  }
}

TEST_CASE("CSV") {
  CHECK(to_csv({}) == std::string(kCsvHeader) + "\n");
  const auto r = run_sweep(torus(3, 3, {0.0, 0.3, 1.0 / 3.0}, 20));
  const auto back = from_csv(to_csv(r));
  REQUIRE(back.size() == r.size());
  for (std::size_t k = 0; k < r.size(); ++k) CHECK(back[k] == r[k]);
  CHECK_THROWS(from_csv("x,y\n1,2\n"));
}

TEST_CASE("SVG") {
  const auto r = run_sweep(torus(3, 3, {0.0, 0.5, 1.0}, 20));
  int polylines = 0;
  CHECK(balanced_xml(to_svg(r, "mean_S_size"), polylines));
  CHECK(polylines == 1);
  CHECK(balanced_xml(to_svg(r, "mean_rate"), polylines));
  CHECK(polylines == 1);
  CHECK_THROWS(to_svg(r, "median"));
}

TEST_CASE("fit_quadratic") {
  std::vector<double> x, y;
  for (int k = 0; k <= 10; ++k) {
    x.push_back(0.5 * k);
    y.push_back(1.5 - 0.25 * x.back() + 0.75 * x.back() * x.back());
  }
  const QuadraticFit f = fit_quadratic(x, y);
  CHECK(std::abs(f.a - 1.5) < 1e-10);
  CHECK(std::abs(f.b + 0.25) < 1e-10);
  CHECK(std::abs(f.c - 0.75) < 1e-10);
  CHECK(std::abs(f.r_squared - 1.0) < 1e-12);
  const QuadraticFit e = fit_quadratic(x, y, true);
  CHECK(e.b == 0.0);
  CHECK(e.r_squared < 1.0);
}

TEST_CASE("validate") {
  SweepConfig cfg = torus(4, 4, {0.0}, 10);
  CHECK_NOTHROW(validate(cfg));
  cfg.samples_per_x = 0;
  CHECK_THROWS(validate(cfg));
  cfg = torus(4, 4, {}, 10);
  CHECK_THROWS(validate(cfg));
  cfg = torus(4, 4, {-1.0}, 10);
  CHECK_THROWS(validate(cfg));
}
