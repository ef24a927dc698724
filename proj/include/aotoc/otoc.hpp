#pragma once

// Algebraic out-of-time-order correlator G_A(U).
//
// Convention: the commutant is evolved in the Heisenberg picture, Y -> U^dagger Y U,
//
//   G_A(U) = (1/2d) E_{X in A, Y in A'} || [X, U^dagger Y U] ||_2^2,
//
// with X (Y) Haar-distributed over the unitary group of A (A'). The closed forms
// below all agree with this average.

#include "aotoc/algebra.hpp"
#include "aotoc/pauli.hpp"

#include <vector>

namespace aotoc {

class OtocRangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest ambient dimension for which d^2 x d^2 Omega operators are materialized.
inline constexpr int kMaxOmegaDim = 32;

struct OmegaOperator {
  Operator matrix;  // d^2 x d^2
  int dim = 0;
};

/// Kraus operators of a completely positive projection, from its Choi matrix.
std::vector<Operator> kraus_from_projection(const SuperProjector& p, int d);

/// Omega_A = sum_k K_k (x) K_k^dagger over a Kraus decomposition of P_{A'}.
OmegaOperator omega(const MatrixAlgebra& a);
/// Same object from an arbitrary list of Kraus operators of P_{A'}.
OmegaOperator omega_from_kraus(const std::vector<Operator>& kraus);

double a_otoc_exact(const MatrixAlgebra& a, const Operator& u);
/// Exact value from precomputed Omega operators of A and A'.
double a_otoc_exact(const OmegaOperator& omega_a, const OmegaOperator& omega_a_prime, const Operator& u);

/// A = L(H_A) (x) 1.
double a_otoc_bipartite(const Operator& u, BipartiteShape shape);
/// Maximal abelian algebra of the basis formed by the columns of `basis`.
double cgp(const Operator& u, const Operator& basis);
double a_otoc_stabilizer(const Operator& u, const StabilizerGroup& group);

struct EntropicBreakdown {
  double g = 0.0;
  /// Per central sector J; sums to g.
  std::vector<double> sector_terms;
  /// Sector weights q_J = n_J d_J / d.
  std::vector<double> weights;
  /// Rows p_J over K; filled only when the commutant is abelian.
  std::vector<std::vector<double>> probabilities;
};

EntropicBreakdown a_otoc_entropic(const MatrixAlgebra& a, const Operator& u);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

MonteCarloEstimate a_otoc_haar_mc(const MatrixAlgebra& a, const Operator& u, int n_samples, Seed seed,
                                  int threads = 1);

/// Clamp policy shared by all forms: [-1e-9, 0) and (1, 1+1e-9] clamp, anything
/// further throws OtocRangeError.
double clamp_unit(double raw, const char* what);

}  // namespace aotoc
