#pragma once

// Hermitian-closed unital matrix algebras: closure from generators, commutant,
// center, Wedderburn block structure and the associated HS-orthogonal
// projections.

#include "aotoc/operator_space.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace aotoc {

/// Thrown when a numerical structure check fails (non-integer block sizes,
/// inconsistent dimension counts, degenerate generic elements after retries).
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  /// Relative cutoff below which a Gram-Schmidt residual is treated as zero.
  double rank = 1e-9;
  /// Gap separating eigenvalue clusters of generic elements.
  double cluster_gap = 1e-6;
  /// Span equality threshold on algebra_distance.
  double span = 1e-8;
};

inline constexpr Tolerances kDefaultTolerances{};

struct CentralBlock {
  Operator projection;  // Pi_J
  int n = 0;            // multiplicity (commutant side)
  int d = 0;            // irreducible dimension (algebra side)
};

struct BlockLayout {
  int n = 0;
  int d = 0;
  int offset = 0;
};

/// Unitary W with W a W^dagger = (+)_J 1_{n_J} (x) m_J for every a in the algebra.
struct BlockIsometry {
  Operator w;
  std::vector<BlockLayout> layout;
};

class MatrixAlgebra;

/// Linear map on operator space, applied by its action.
class SuperProjector {
 public:
  enum class Kind { onto_algebra, sum_space, pinching };

  static SuperProjector onto(const MatrixAlgebra& a);
  static SuperProjector sum_space(const MatrixAlgebra& a, const MatrixAlgebra& a_prime);
  static SuperProjector pinching(std::vector<Operator> projections);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  Operator operator()(const Operator& x) const;
  /// Materialized d^2 x d^2 matrix on row-major vec.
  Superoperator matrix() const;
  /// Tr of the projector, i.e. the dimension of its image.
  double rank() const;

 private:
  Kind kind_ = Kind::onto_algebra;
  int dim_ = 0;
  Eigen::MatrixXcd basis_;        // onto_algebra / sum_space: first algebra
  Eigen::MatrixXcd basis_prime_;  // sum_space: second algebra
  std::vector<Operator> projections_;
};

class MatrixAlgebra {
 public:
  /// Span of an already *-closed, product-closed set; no closure is attempted.
  static MatrixAlgebra from_spanning_set(const std::vector<Operator>& elements, int d, Seed seed = 0,
                                         Tolerances tol = kDefaultTolerances);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(basis_.cols()); }
  Seed seed() const { return seed_; }
  const Tolerances& tolerances() const { return tol_; }

  /// Columns are vec(e_alpha) for an HS-orthonormal hermitian basis.
  const Eigen::MatrixXcd& basis_matrix() const { return basis_; }
  Operator element(int alpha) const { return unvec(basis_.col(alpha), dim_); }
  std::vector<Operator> basis() const;

  /// Orthogonal projection of X onto the algebra.
  Operator project(const Operator& x) const;
  /// Random real combination of the hermitian basis.
  Operator generic_element(Seed seed) const;

  MatrixAlgebra commutant() const;
  MatrixAlgebra center() const;
  const std::vector<CentralBlock>& blocks() const;
  const BlockIsometry& isometry() const;

 private:
  MatrixAlgebra() = default;

  struct Cache {
    std::once_flag commutant_once, center_once, blocks_once, isometry_once;
    std::shared_ptr<const MatrixAlgebra> commutant, center;
    std::vector<CentralBlock> blocks;
    BlockIsometry isometry;
  };

  int dim_ = 0;
  Seed seed_ = 0;
  Tolerances tol_{};
  Eigen::MatrixXcd basis_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

  friend MatrixAlgebra generate_algebra(const std::vector<Operator>&, int, Seed, Tolerances);
};

/// Smallest unital *-algebra containing the generators.
MatrixAlgebra generate_algebra(const std::vector<Operator>& generators, int d, Seed seed = 0,
                               Tolerances tol = kDefaultTolerances);

/// Null space of the stacked commutator maps; computed afresh on each call.
MatrixAlgebra compute_commutant(const MatrixAlgebra& a);

inline MatrixAlgebra commutant(const MatrixAlgebra& a) { return a.commutant(); }
inline MatrixAlgebra center(const MatrixAlgebra& a) { return a.center(); }
inline const std::vector<CentralBlock>& block_spectrum(const MatrixAlgebra& a) { return a.blocks(); }
inline const BlockIsometry& block_isometry(const MatrixAlgebra& a) { return a.isometry(); }

SuperProjector conditional_expectation(const MatrixAlgebra& a);
SuperProjector sum_space_projector(const MatrixAlgebra& a);
SuperProjector pinching_projector(const MatrixAlgebra& a);

double algebra_distance(const MatrixAlgebra& a, const MatrixAlgebra& b);
bool same_span(const MatrixAlgebra& a, const MatrixAlgebra& b);

bool is_factor(const MatrixAlgebra& a);
bool is_collinear(const MatrixAlgebra& a);
bool is_abelian(const MatrixAlgebra& a);

MatrixAlgebra rotate_algebra(const MatrixAlgebra& a, const Operator& u);

// Standard fixtures.

/// L(H_A) (x) 1 (side A) or 1 (x) L(H_B) (side B).
MatrixAlgebra bipartite_algebra(BipartiteShape shape, Side side);
/// Operators diagonal in the basis given by the columns of `basis` (identity if absent).
MatrixAlgebra masa_algebra(int d, const std::optional<Operator>& basis = std::nullopt);
/// Algebra generated by the collective spin operators sum_j sigma^alpha_j.
MatrixAlgebra collective_spin_algebra(int n_qubits);

}  // namespace aotoc
