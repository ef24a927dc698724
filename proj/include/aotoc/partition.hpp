#pragma once

// Interaction graphs of two-body spin Hamiltonians and minimum-weight
// bipartitions. Edge weights are J^2; the rate of a spatial cut of an Ising
// graph is sqrt(sum over the boundary of J^2).

#include "aotoc/pauli.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aotoc {

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Edge {
  int i = 0;
  int j = 0;
  double J = 0.0;
  /// Two Pauli letters (e.g. "ZZ") for Ising edges; any other label marks a
  /// generic two-body term that only the dense path can handle.
  std::string paulis = "ZZ";

  double weight() const { return J * J; }
  bool is_ising() const;
};

class InteractionGraph {
 public:
  InteractionGraph() = default;
  /// Normalizes every edge to i < j (swapping the Pauli letters) and validates.
  InteractionGraph(int n_vertices, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  void set_coupling(std::size_t edge, double J);
  bool all_ising() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

struct CutResult {
  std::vector<int> S;  // ascending; the lower-cardinality side
  std::vector<Edge> boundary;
  double weight = 0.0;
  double rate = 0.0;
};

/// Vertex subset as a bitmask (n <= 64).
std::uint64_t subset_mask(const std::vector<int>& S);
/// Bitmask order on subsets of any size: compares the highest differing vertex.
bool mask_less(const std::vector<int>& a, const std::vector<int>& b);
/// The side of the cut {S, complement} reported in CutResult: the smaller one,
/// and on equal sizes the one with the lower bitmask.
std::vector<int> canonical_side(int n, const std::vector<int>& S);

/// Boundary edges in edge-list order. S must be a proper nonempty subset.
std::vector<Edge> boundary(const InteractionGraph& g, const std::vector<int>& S);
/// Cut of S with weights summed in edge-list order; accepts any edge labels.
CutResult cut(const InteractionGraph& g, const std::vector<int>& S);
/// Same as cut() but refuses non-Ising edges.
CutResult ising_rate(const InteractionGraph& g, const std::vector<int>& S);

/// Global minimum cut. Maximum-adjacency ties go to the lowest vertex index; if
/// the nonzero-weight edges leave the graph disconnected, the result is the
/// lowest-bitmask component of size <= n/2 with weight 0.
CutResult stoer_wagner(const InteractionGraph& g);

inline constexpr int kMaxBruteForce = 20;
inline constexpr int kMaxBruteForceConstrained = 24;

/// Every minimizer within 1e-12 (relative to max(1, min)), sorted by bitmask of S.
std::vector<CutResult> brute_force_mincut(const InteractionGraph& g, std::optional<int> size_constraint = std::nullopt,
                                          int threads = 1);

/// Dense Pauli Hamiltonian sum_e J_e P_i P_j with vertex v on qubit order[v]
/// (identity order when empty).
PauliHamiltonian to_pauli_hamiltonian(const InteractionGraph& g, const std::vector<int>& order = {});
/// rate_bipartite of the dense Hamiltonian across S (n <= 12).
double dense_cut_rate(const InteractionGraph& g, const std::vector<int>& S);

}  // namespace aotoc
