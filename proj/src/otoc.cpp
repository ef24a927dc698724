#include "aotoc/otoc.hpp"

#include "aotoc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace aotoc {

namespace {

// Tr[S M] on C^d (x) C^d where S is the swap.
Complex trace_with_swap(const Operator& m, int d) {
  Complex t = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t += m(j * d + i, i * d + j);
  return t;
}

void require_omega_dim(int d, const char* what) {
  if (d > kMaxOmegaDim)
    throw DimensionError(std::string(what) + ": dense Omega operators are limited to d <= 32 (got " +
                         std::to_string(d) + ")");
}

// Block (rows of sector J, columns of sector K) of an operator in the W-frame,
// realigned as R[(a, c), (b, e)] = M[(a, b), (c, e)] with a, c multiplicity
// indices and b, e irreducible indices.
Eigen::MatrixXcd realigned_block(const Operator& m, const BlockLayout& row, const BlockLayout& col) {
  Eigen::MatrixXcd r(row.n * col.n, row.d * col.d);
  for (int a = 0; a < row.n; ++a)
    for (int b = 0; b < row.d; ++b)
      for (int c = 0; c < col.n; ++c)
        for (int e = 0; e < col.d; ++e)
          r(a * col.n + c, b * col.d + e) = m(row.offset + a * row.d + b, col.offset + c * col.d + e);
  return r;
}

}  // namespace

double clamp_unit(double raw, const char* what) {
  constexpr double kSlack = 1e-9;
  if (raw < -kSlack || raw > 1.0 + kSlack)
    throw OtocRangeError(std::string(what) + ": value " + std::to_string(raw) + " outside [0, 1]");
  return std::clamp(raw, 0.0, 1.0);
}

std::vector<Operator> kraus_from_projection(const SuperProjector& p, int d) {
  if (p.dim() != d) throw DimensionError("kraus_from_projection: projector dimension mismatch");
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  Operator choi = Operator::Zero(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Operator e = Operator::Zero(d, d);
      e(i, j) = 1.0;
      choi.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(j) * d, d, d) = p(e);
    }
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (choi + choi.adjoint()));
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw std::invalid_argument("kraus_from_projection: Choi matrix is not positive semidefinite");
  std::vector<Operator> kraus;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = es.eigenvalues()(k);
    if (lambda <= 1e-10) continue;
    // |v> = sum_i |i> (x) K|i>, so K(a, i) = v(i*d + a).
    Operator kop(d, d);
    for (int i = 0; i < d; ++i)
      for (int a = 0; a < d; ++a) kop(a, i) = es.eigenvectors()(static_cast<Eigen::Index>(i) * d + a, k);
    kraus.push_back(std::sqrt(lambda) * kop);
  }
  return kraus;
}

OmegaOperator omega_from_kraus(const std::vector<Operator>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("omega_from_kraus: empty Kraus list");
  const int d = static_cast<int>(kraus.front().rows());
  require_omega_dim(d, "omega");
  OmegaOperator out{Operator::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d), d};
  for (const auto& k : kraus) out.matrix += kron(k, k.adjoint());
  return out;
}

OmegaOperator omega(const MatrixAlgebra& a) {
  require_omega_dim(a.dim(), "omega");
  return omega_from_kraus(kraus_from_projection(conditional_expectation(a.commutant()), a.dim()));
}

double a_otoc_exact(const OmegaOperator& omega_a, const OmegaOperator& omega_a_prime, const Operator& u) {
  const int d = omega_a.dim;
  require_unitary(u, "a_otoc_exact");
  if (u.rows() != d || omega_a_prime.dim != d) throw DimensionError("a_otoc_exact: dimension mismatch");
  // G = 1 - (1/d) Tr[S Omega_A (U^dag (x) U^dag) Omega_A' (U (x) U)]
  const Operator v = kron(u.adjoint(), u.adjoint());
  const Operator evolved = v * omega_a_prime.matrix * v.adjoint();
  const Operator product = omega_a.matrix * evolved;
  const double raw = 1.0 - trace_with_swap(product, d).real() / d;
  return clamp_unit(raw, "a_otoc_exact");
}

double a_otoc_exact(const MatrixAlgebra& a, const Operator& u) {
  require_unitary(u, "a_otoc_exact");
  if (u.rows() != a.dim()) throw DimensionError("a_otoc_exact: unitary dimension mismatch");
  return a_otoc_exact(omega(a), omega(a.commutant()), u);
}

double a_otoc_bipartite(const Operator& u, BipartiteShape shape) {
  require_unitary(u, "a_otoc_bipartite");
  if (shape.dA < 1 || shape.dB < 1 || u.rows() != shape.dim())
    throw DimensionError("a_otoc_bipartite: unitary dimension does not match shape");
  const int dB = shape.dB, d = shape.dim();
  // Basis of H (x) H' ordered (a, b, a', b'); S_AA' exchanges a and a'.
  auto swap_index = [=](Eigen::Index r) {
    const Eigen::Index first = r / d, second = r % d;
    const Eigen::Index a = first / dB, b = first % dB, ap = second / dB, bp = second % dB;
    return (ap * dB + b) * d + (a * dB + bp);
  };
  const Operator v = kron(u, u);
  const Eigen::Index n = v.rows();
  Operator vs(n, n);  // V S
  for (Eigen::Index c = 0; c < n; ++c) vs.col(c) = v.col(swap_index(c));
  const Operator t = vs * v.adjoint();  // V S V^dag
  Complex overlap = 0.0;                // Tr[S V S V^dag]
  for (Eigen::Index r = 0; r < n; ++r) overlap += t(swap_index(r), r);
  const double raw = 1.0 - overlap.real() / (static_cast<double>(d) * d);
  return clamp_unit(raw, "a_otoc_bipartite");
}

double cgp(const Operator& u, const Operator& basis) {
  require_unitary(u, "cgp");
  require_unitary(basis, "cgp");
  require_same_dim(u, basis, "cgp");
  const Operator w = basis.adjoint() * u * basis;
  const double d = static_cast<double>(u.rows());
  const double sum4 = w.cwiseAbs2().cwiseAbs2().sum();
  return clamp_unit(1.0 - sum4 / d, "cgp");
}

double a_otoc_stabilizer(const Operator& u, const StabilizerGroup& group) {
  require_unitary(u, "a_otoc_stabilizer");
  const int n = group.n(), k = group.k();
  if (n > 6) throw PauliError("a_otoc_stabilizer: limited to 6 qubits");
  if (u.rows() != (1 << n)) throw DimensionError("a_otoc_stabilizer: unitary dimension must be 2^n");
  const auto elements = group.element_matrices();
  std::vector<Operator> evolved;
  evolved.reserve(elements.size());
  for (const auto& h : elements) evolved.push_back(u * h * u.adjoint());
  double sum = 0.0;
  for (const auto& g : elements)
    for (const auto& uh : evolved) sum += std::norm(hs_inner(g, uh));
  const double raw = 1.0 - sum / std::ldexp(1.0, 3 * n - k);
  return clamp_unit(raw, "a_otoc_stabilizer");
}

EntropicBreakdown a_otoc_entropic(const MatrixAlgebra& a, const Operator& u) {
  require_unitary(u, "a_otoc_entropic");
  if (u.rows() != a.dim()) throw DimensionError("a_otoc_entropic: unitary dimension mismatch");
  const BlockIsometry& iso = a.isometry();
  const double d = a.dim();
  // Heisenberg picture: the sector maps are blocks of W U^dag W^dag.
  const Operator m = iso.w * u.adjoint() * iso.w.adjoint();
  const auto& layout = iso.layout;
  EntropicBreakdown out;
  bool commutant_abelian = true;
  for (const auto& l : layout) commutant_abelian = commutant_abelian && l.n == 1;
  double purity = 0.0;
  for (const auto& row : layout) {
    const double q = row.n * row.d / d;
    double sector_purity = 0.0;
    std::vector<double> p;
    for (const auto& col : layout) {
      const Eigen::MatrixXcd r = realigned_block(m, row, col);
      const double t = (r * r.adjoint()).squaredNorm();
      sector_purity += t / (d * row.d * col.n);
      if (commutant_abelian) {
        const double block_norm2 = m.block(row.offset, col.offset, row.n * row.d, col.n * col.d).squaredNorm();
        p.push_back(block_norm2 / row.d);
      }
    }
    purity += sector_purity;
    out.weights.push_back(q);
    out.sector_terms.push_back(q - sector_purity);
    if (commutant_abelian) out.probabilities.push_back(std::move(p));
  }
  out.g = clamp_unit(1.0 - purity, "a_otoc_entropic");
  return out;
}

MonteCarloEstimate a_otoc_haar_mc(const MatrixAlgebra& a, const Operator& u, int n_samples, Seed seed,
                                  int threads) {
  require_unitary(u, "a_otoc_haar_mc");
  if (u.rows() != a.dim()) throw DimensionError("a_otoc_haar_mc: unitary dimension mismatch");
  if (n_samples < 2) throw std::invalid_argument("a_otoc_haar_mc: need at least two samples");
  const BlockIsometry& iso = a.isometry();
  const int d = a.dim();
  std::vector<double> values(static_cast<std::size_t>(n_samples));
  parallel_for(values.size(), threads, [&](std::size_t i) {
    Operator bx = Operator::Zero(d, d), by = Operator::Zero(d, d);
    std::uint64_t stream = 0;
    for (const auto& l : iso.layout) {
      const Operator ux = haar_unitary(l.d, derive_seed(seed, i, stream++));
      const Operator vy = haar_unitary(l.n, derive_seed(seed, i, stream++));
      const int sz = l.n * l.d;
      bx.block(l.offset, l.offset, sz, sz) = kron(identity(l.n), ux);
      by.block(l.offset, l.offset, sz, sz) = kron(vy, identity(l.d));
    }
    const Operator x = iso.w.adjoint() * bx * iso.w;
    const Operator y = iso.w.adjoint() * by * iso.w;
    const Operator z = u.adjoint() * y * u;
    values[i] = (x * z - z * x).squaredNorm() / (2.0 * d);
  });
  const double mean = pairwise_sum(values) / n_samples;
  std::vector<double> dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) dev[i] = (values[i] - mean) * (values[i] - mean);
  const double var = pairwise_sum(dev) / (n_samples - 1);
  return {mean, std::sqrt(var / n_samples), n_samples};
}

}  // namespace aotoc
