#pragma once

// Dense operator-space primitives: Hilbert-Schmidt geometry, tensor products,
// partial traces, swaps and seeded random matrices.
//
// Vectorization is row-major throughout: vec(|i><j|) sits at index i*d + j,
// so vec(A X B) = (A kron B^T) vec(X).

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace aotoc {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Superoperator = Eigen::MatrixXcd;  // acts on row-major vec(X), size d^2 x d^2
using Seed = std::uint64_t;

/// Raised on any dimension or shape disagreement between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BipartiteShape {
  int dA = 1;
  int dB = 1;
  int dim() const { return dA * dB; }
};

enum class Side { A, B };

// Hilbert-Schmidt geometry
Complex hs_inner(const Operator& x, const Operator& y);
double hs_norm(const Operator& x);

Operator identity(int d);
Operator kron(const Operator& x, const Operator& y);

/// Tr_A (side == A, result dim dB) or Tr_B (side == B, result dim dA).
Operator partial_trace(const Operator& x, BipartiteShape shape, Side side);

/// Swap on C^d (x) C^d.
Operator swap_operator(int d);

Operator haar_unitary(int d, Seed seed);
Operator random_hermitian(int d, Seed seed);

/// exp(-i H t) for hermitian H.
Operator evolution(const Operator& h, double t);

// Row-major vectorization helpers.
Eigen::VectorXcd vec(const Operator& x);
Operator unvec(const Eigen::VectorXcd& v, int d);

/// Superoperator of X -> A X B acting on row-major vec.
Superoperator sandwich(const Operator& a, const Operator& b);

bool is_square(const Operator& x);
double hermiticity_residual(const Operator& x);
double unitarity_residual(const Operator& u);

void require_square(const Operator& x, const char* what);
void require_same_dim(const Operator& x, const Operator& y, const char* what);
void require_unitary(const Operator& u, const char* what, double tol = 1e-8);
void require_hermitian(const Operator& h, const char* what, double tol = 1e-10);

/// 64-bit splitmix finalizer; used to derive independent per-index seeds.
Seed mix_seed(Seed x);
Seed derive_seed(Seed base, std::uint64_t a, std::uint64_t b = 0);

}  // namespace aotoc
