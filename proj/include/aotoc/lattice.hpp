#pragma once

// Random Ising couplings on square lattices and sweeps of the minimum-cut
// statistics over the relative next-nearest-neighbor strength x.

#include "aotoc/operator_space.hpp"
#include "aotoc/partition.hpp"

#include <string>
#include <vector>

namespace aotoc {

struct LatticeSpec {
  int rows = 1;
  int cols = 1;
  bool periodic = false;  // torus; needs rows, cols >= 3
  bool nnn = false;       // diagonal next-nearest-neighbor edges
  std::string pauli_pair = "ZZ";
};

inline constexpr int kMaxLatticeSites = 400;

/// Row-major vertices; NN edges first (horizontal, vertical per site), then
/// the diagonals (r+1, c+1) and (r+1, c-1). All couplings are 0.
struct Lattice {
  InteractionGraph graph;
  std::size_t nn_edges = 0;  // edges [0, nn_edges) are nearest neighbors
};

Lattice build_lattice(const LatticeSpec& spec);

/// NN couplings ~ nn_sigma N(0,1), drawn first in edge order, then NNN
/// couplings x N(0,1).
InteractionGraph sample_couplings(const Lattice& lattice, double nn_sigma, double x, Seed seed);

struct SweepConfig {
  LatticeSpec lattice;
  std::vector<double> x_grid;
  int samples_per_x = 500;
  Seed base_seed = 0;
  double nn_sigma = 1.0;
};

struct SweepRecord {
  double x = 0.0;
  double mean_rate = 0.0;
  double std_rate = 0.0;  // sample standard deviation
  double mean_S_size = 0.0;
  double std_S_size = 0.0;
  int n_samples = 0;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Throws std::invalid_argument on an invalid configuration.
void validate(const SweepConfig& cfg);

/// Seed of sample `sample` at grid index `x_index`.
Seed sample_seed(Seed base, std::size_t x_index, std::size_t sample);

/// Rate and |S| of one sample: the Stoer-Wagner cut of a fresh coupling draw.
CutResult sweep_sample(const Lattice& lattice, const SweepConfig& cfg, std::size_t x_index, std::size_t sample);

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, int threads = 1);

/// x in [lo, hi] with the given step, endpoints included.
std::vector<double> x_grid(double lo, double hi, double step);

inline constexpr const char* kCsvHeader = "x,mean_rate,std_rate,mean_S_size,std_S_size,n_samples";

std::string to_csv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> from_csv(const std::string& text);
void write_csv(const std::vector<SweepRecord>& records, const std::string& path);
std::vector<SweepRecord> read_csv(const std::string& path);

/// y_field is "mean_rate" or "mean_S_size"; band is +-1 std.
std::string to_svg(const std::vector<SweepRecord>& records, const std::string& y_field);
void render_svg(const std::vector<SweepRecord>& records, const std::string& path, const std::string& y_field);

struct QuadraticFit {
  double a = 0.0, b = 0.0, c = 0.0;  // y ~ a + b x + c x^2
  double r_squared = 0.0;
};

/// Least squares; with even_only the linear term is fixed at 0.
QuadraticFit fit_quadratic(const std::vector<double>& x, const std::vector<double>& y, bool even_only = false);

}  // namespace aotoc
