#pragma once

// Gaussian scrambling rate of a Hamiltonian with respect to an algebra, i.e. the
// distance of H~ = (H - Tr(H) 1/d)/sqrt(d) from A + A'. Every form below
// removes the identity component first; it lies in A and A' and never
// contributes.

#include "aotoc/algebra.hpp"
#include "aotoc/otoc.hpp"
#include "aotoc/pauli.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aotoc {

struct RateReport {
  double rate = 0.0;
  double inter_sector = 0.0;  // off-diagonal in the central decomposition
  double intra_sector = 0.0;
  double eta = 0.0;           // ||H||_2 / sqrt(d)
  double bound_A = 0.0;       // D(H~, A)
  double bound_Aprime = 0.0;  // D(H~, A')
};

/// (H - Tr(H) 1/d) / sqrt(d).
Operator normalized_traceless(const Operator& h);
double eta(const Operator& h);

RateReport gaussian_rate(const Operator& h, const MatrixAlgebra& a);

double rate_bipartite(const Operator& h, BipartiteShape shape);
/// Requires A or A' abelian.
double rate_abelian(const Operator& h, const MatrixAlgebra& a);
double rate_stabilizer(const Operator& h, const StabilizerGroup& group);

struct MasaBound {
  double rate = 0.0;
  double bound = 0.0;
};

/// Distance between the MASAs of the columns of two unitaries.
double masa_distance(const Operator& basis, const Operator& other_basis);
/// Rate for the MASA of `basis` and eta_H * D(A_B, A_{B_H}). H must be nondegenerate.
MasaBound masa_rate_bound(const Operator& h, const Operator& basis);

/// 8 log-spaced points in [1e-3, 1e-2] / eta_H.
std::vector<double> default_time_grid(const Operator& h);
/// Least-squares c in G(t) ~ c t^2 from the exact A-OTOC of exp(-iHt).
double short_time_coefficient(const MatrixAlgebra& a, const Operator& h,
                              const std::optional<std::vector<double>>& t_grid = std::nullopt);

/// Families of algebras A_theta = U_theta A_0 U_theta^dagger with U_theta = exp(i theta G),
/// or an explicit list.
struct FamilySpec {
  enum class Kind { circular_bipartite, circular_masa, circular_symmetric, explicit_list, theta_grid };
  Kind kind = Kind::theta_grid;
  std::vector<double> thetas;
  /// theta_grid only: the base algebra and the hermitian rotation generator G.
  std::optional<MatrixAlgebra> base;
  Operator generator;
  /// explicit_list only.
  std::vector<MatrixAlgebra> algebras;
  std::vector<std::string> labels;

  /// Two-qubit bipartition rotated by exp(i theta/2 sigma_x (x) sigma_x).
  static FamilySpec circular_bipartite_family(std::vector<double> thetas);
  /// Qubit basis rotated by exp(i theta/2 sigma_y).
  static FamilySpec circular_masa_family(std::vector<double> thetas);
  /// Two-qubit symmetric algebra rotated by exp(i theta/2 sigma_y) (x) 1.
  static FamilySpec circular_symmetric_family(std::vector<double> thetas);
};

FamilySpec::Kind parse_family_kind(const std::string& name);
std::string family_kind_name(FamilySpec::Kind kind);

/// Base algebra and rotation generator of a rotating family.
MatrixAlgebra family_base(const FamilySpec& family);
Operator family_generator(const FamilySpec& family);
/// A_theta for a rotating family.
MatrixAlgebra family_member(const FamilySpec& family, double theta);

struct FamilyResult {
  std::vector<double> rates;  // one per family member, in input order
  std::vector<int> argmin;    // every index within 1e-9 of the minimum, ascending
  std::vector<int> argmax;
  double min_rate = 0.0;
};

/// `threads` parallelizes over members; the result does not depend on it.
FamilyResult minimize_rate(const Operator& h, const FamilySpec& family, int threads = 1);

/// Evenly spaced grid k * (hi - lo) / steps for k = 0..steps.
std::vector<double> linear_grid(double lo, double hi, int steps);

}  // namespace aotoc
