#pragma once

// n-qubit Pauli strings in symplectic form, stabilizer groups and Pauli-sum
// Hamiltonians. Qubit 0 is the leftmost character and the leftmost tensor
// factor (most significant bit of a basis index).

#include "aotoc/algebra.hpp"
#include "aotoc/operator_space.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aotoc {

class PauliError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// i^phase * (x) sigma(x_j, z_j), with sigma(1,0)=X, sigma(0,1)=Z, sigma(1,1)=Y and Y = iXZ.
struct PauliString {
  int n = 0;
  std::uint64_t x = 0;  // bit j <-> qubit j
  std::uint64_t z = 0;
  int phase = 0;        // exponent of i, in [0, 4)

  static PauliString identity(int n) { return {n, 0, 0, 0}; }

  bool is_hermitian() const { return phase % 2 == 0; }
  bool is_identity_up_to_phase() const { return x == 0 && z == 0; }
  /// Number of non-identity sites.
  int weight() const;
  /// Single-site label 'I','X','Y','Z'.
  char site(int j) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

inline constexpr int kMaxPauliQubits = 64;
inline constexpr int kMaxMatrixQubits = 12;
inline constexpr int kMaxGroupElements = 4096;

PauliString parse_pauli(std::string_view text);
std::string format_pauli(const PauliString& p);

PauliString multiply(const PauliString& p, const PauliString& q);
bool commutes(const PauliString& p, const PauliString& q);
Operator to_matrix(const PauliString& p);

class StabilizerGroup {
 public:
  /// Validates commutation, independence, hermiticity and -1 exclusion, then
  /// enumerates all 2^(n-k) elements.
  static StabilizerGroup build(int n, const std::vector<PauliString>& generators);
  static StabilizerGroup build(const std::vector<std::string>& generators);

  int n() const { return n_; }
  int k() const { return n_ - static_cast<int>(generators_.size()); }
  const std::vector<PauliString>& generators() const { return generators_; }
  const std::vector<PauliString>& elements() const { return elements_; }
  std::vector<Operator> element_matrices() const;

 private:
  int n_ = 0;
  std::vector<PauliString> generators_;
  std::vector<PauliString> elements_;
};

/// |G_S|^-1 sum_g g X g^dagger.
Operator twirl(const StabilizerGroup& group, const Operator& x);

/// The group algebra C[G_S].
MatrixAlgebra group_algebra(const StabilizerGroup& group);

struct PauliTerm {
  double coefficient = 0.0;
  PauliString pauli;
};

class PauliHamiltonian {
 public:
  PauliHamiltonian() = default;
  explicit PauliHamiltonian(int n) : n_(n) {}

  /// Adds coeff * p; p must carry a real phase (its sign folds into coeff).
  void add(double coefficient, const PauliString& p);
  void add(double coefficient, std::string_view word);

  int n() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  /// Lines of `coeff WORD`, '#' comments, blank lines ignored.
  static PauliHamiltonian parse(std::string_view text);
  std::string format() const;

 private:
  int n_ = 0;
  std::vector<PauliTerm> terms_;
};

Operator to_matrix(const PauliHamiltonian& h);

}  // namespace aotoc
