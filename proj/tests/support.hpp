#pragma once

// Shared generators and independent oracles for the test binaries.

#include "aotoc/algebra.hpp"
#include "aotoc/otoc.hpp"
#include "aotoc/partition.hpp"
#include "aotoc/pauli.hpp"
#include "aotoc/rate.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace aotoc::test {

using Rng = std::mt19937_64;

inline double max_abs(const Operator& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

inline Operator random_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

inline Operator random_square(int d, Rng& rng) { return random_matrix(d, d, rng); }

inline Operator random_herm(int d, Rng& rng) {
  const Operator g = random_square(d, rng);
  return (g + g.adjoint()) / 2.0;
}

inline Operator random_unitary(int d, Rng& rng) { return haar_unitary(d, rng()); }

inline Operator pauli_x() {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}
inline Operator pauli_y() {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = Complex(0, -1);
  m(1, 0) = Complex(0, 1);
  return m;
}
inline Operator pauli_z() {
  Operator m = Operator::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}
inline Operator hadamard() {
  Operator h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

// Element-wise oracles.

inline Complex hs_inner_oracle(const Operator& x, const Operator& y) {
  Complex s = 0.0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) s += std::conj(x(i, j)) * y(i, j);
  return s;
}

inline Operator partial_trace_oracle(const Operator& x, int dA, int dB, Side side) {
  if (side == Side::B) {
    Operator r = Operator::Zero(dA, dA);
    for (int a = 0; a < dA; ++a)
      for (int a2 = 0; a2 < dA; ++a2)
        for (int b = 0; b < dB; ++b) r(a, a2) += x(a * dB + b, a2 * dB + b);
    return r;
  }
  Operator r = Operator::Zero(dB, dB);
  for (int b = 0; b < dB; ++b)
    for (int b2 = 0; b2 < dB; ++b2)
      for (int a = 0; a < dA; ++a) r(b, b2) += x(a * dB + b, a * dB + b2);
  return r;
}

/// Orthonormal columns spanning the given operators (column-pivoted QR).
inline Eigen::MatrixXcd span_basis(const std::vector<Operator>& ops, double tol = 1e-9) {
  if (ops.empty()) return {};
  const int d = static_cast<int>(ops.front().rows());
  Eigen::MatrixXcd m(d * d, static_cast<int>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i * d + j, static_cast<int>(k)) = ops[k](i, j);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  qr.setThreshold(tol);
  const int r = static_cast<int>(qr.rank());
  Eigen::MatrixXcd q = qr.householderQ();
  return q.leftCols(r);
}

inline Operator project_onto(const Eigen::MatrixXcd& q, const Operator& x) {
  const int d = static_cast<int>(x.rows());
  Eigen::VectorXcd v(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(i * d + j) = x(i, j);
  const Eigen::VectorXcd p = q * (q.adjoint() * v);
  Operator r(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) r(i, j) = p(i * d + j);
  return r;
}

/// Distance of H~ from A + A', with the sum space spanned by QR of both bases.
inline double rate_oracle(const Operator& h, const MatrixAlgebra& a) {
  auto ops = a.basis();
  const auto prime = a.commutant().basis();
  ops.insert(ops.end(), prime.begin(), prime.end());
  const Eigen::MatrixXcd q = span_basis(ops);
  const Operator ht = normalized_traceless(h);
  return (ht - project_onto(q, ht)).norm();
}

/// A-OTOC by averaging X first (projection onto A') and then the Haar second
/// moment of the unitary group of A', which is block-wise 1/n_K times identity:
///   1 - G = (1/d) sum_K (1/n_K) sum_{ab} ||P_{A'}(U^dag F_{K,ab} U)||^2,
/// F_{K,ab} = W^dag (|a><b| (x) 1_{d_K} on block K) W.
inline double otoc_oracle(const MatrixAlgebra& a, const Operator& u) {
  const MatrixAlgebra ap = a.commutant();
  const auto& iso = a.isometry();
  const int d = a.dim();
  double s = 0.0;
  for (const auto& b : iso.layout) {
    for (int i = 0; i < b.n; ++i)
      for (int j = 0; j < b.n; ++j) {
        Operator blk = Operator::Zero(d, d);
        for (int k = 0; k < b.d; ++k) blk(b.offset + i * b.d + k, b.offset + j * b.d + k) = 1.0;
        const Operator f = iso.w.adjoint() * blk * iso.w;
        s += ap.project(u.adjoint() * f * u).squaredNorm() / b.n;
      }
  }
  return 1.0 - s / d;
}

// Random algebras.

struct NamedAlgebra {
  std::string label;
  MatrixAlgebra algebra;
};

inline MatrixAlgebra random_product(int dA, int dB, Rng& rng, bool rotate = true) {
  MatrixAlgebra a = bipartite_algebra({dA, dB}, (rng() & 1U) ? Side::A : Side::B);
  return rotate ? rotate_algebra(a, random_unitary(dA * dB, rng)) : a;
}

inline MatrixAlgebra random_masa(int d, Rng& rng) { return masa_algebra(d, random_unitary(d, rng)); }

inline StabilizerGroup random_stabilizer_group(int n, Rng& rng) {
  // Commuting, independent generators by rejection among random Pauli strings.
  const int m = static_cast<int>(rng() % static_cast<unsigned>(n)) + 1;
  std::vector<PauliString> gens;
  for (int tries = 0; static_cast<int>(gens.size()) < m && tries < 1000; ++tries) {
    PauliString p{n, rng() & ((std::uint64_t{1} << n) - 1), rng() & ((std::uint64_t{1} << n) - 1), 0};
    if (p.is_identity_up_to_phase()) continue;
    bool ok = true;
    for (const auto& g : gens) ok = ok && commutes(g, p);
    if (!ok) continue;
    auto trial = gens;
    trial.push_back(p);
    try {
      (void)StabilizerGroup::build(n, trial);
      gens = std::move(trial);
    } catch (const PauliError&) {
    }
  }
  return StabilizerGroup::build(n, gens);
}

/// Algebra generated by W^dag (+)_J 1_{n_J} (x) h_J W for random hermitian h_J.
inline MatrixAlgebra random_block_algebra(const std::vector<std::pair<int, int>>& nd, Rng& rng) {
  int d = 0;
  for (auto [n, dj] : nd) d += n * dj;
  std::vector<Operator> gens;
  for (int g = 0; g < 2; ++g) {
    Operator m = Operator::Zero(d, d);
    int off = 0;
    for (auto [n, dj] : nd) {
      const Operator h = random_herm(dj, rng) + static_cast<double>(rng() % 7) * identity(dj);
      m.block(off, off, n * dj, n * dj) = kron(identity(n), h);
      off += n * dj;
    }
    gens.push_back(m);
  }
  const Operator w = random_unitary(d, rng);
  for (auto& g : gens) g = w.adjoint() * g * w;
  return generate_algebra(gens, d);
}

/// One of: rotated product, rotated MASA, stabilizer group algebra, collective
/// spin, random block algebra; dimension at most max_d.
inline NamedAlgebra random_algebra(Rng& rng, int max_d = 8) {
  for (;;) {
    switch (rng() % 5) {
      case 0: {
        const int dA = 2 + static_cast<int>(rng() % 2), dB = 2 + static_cast<int>(rng() % 2);
        if (dA * dB > max_d) continue;
        return {"product " + std::to_string(dA) + "x" + std::to_string(dB), random_product(dA, dB, rng)};
      }
      case 1: {
        const int d = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_d - 1));
        return {"masa " + std::to_string(d), random_masa(d, rng)};
      }
      case 2: {
        const int n = max_d >= 8 ? 2 + static_cast<int>(rng() % 2) : 2;
        if ((1 << n) > max_d) continue;
        const auto grp = random_stabilizer_group(n, rng);
        return {"stabilizer n=" + std::to_string(n), group_algebra(grp)};
      }
      case 3: {
        const int n = max_d >= 8 ? 2 + static_cast<int>(rng() % 2) : 2;
        if ((1 << n) > max_d) continue;
        return {"collective spin " + std::to_string(n), collective_spin_algebra(n)};
      }
      default: {
        static const std::vector<std::vector<std::pair<int, int>>> shapes = {
            {{1, 2}, {2, 1}}, {{2, 2}, {1, 1}}, {{1, 3}, {1, 2}, {2, 1}}, {{3, 1}, {1, 2}}, {{1, 1}, {1, 1}, {2, 2}}};
        const auto& nd = shapes[rng() % shapes.size()];
        int d = 0;
        for (auto [n, dj] : nd) d += n * dj;
        if (d > max_d) continue;
        return {"blocks d=" + std::to_string(d), random_block_algebra(nd, rng)};
      }
    }
  }
}

// Graphs.

inline InteractionGraph random_graph(int n, double density, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u(rng) < density) edges.push_back({i, j, nd(rng), "ZZ"});
  return InteractionGraph(n, edges);
}

/// Plain enumeration of all bipartitions; minimum boundary weight.
inline double min_cut_oracle(const InteractionGraph& g) {
  const int n = g.n();
  double best = INFINITY;
  for (std::uint64_t m = 1; m + 1 < (std::uint64_t{1} << n); ++m) {
    double w = 0.0;
    for (const auto& e : g.edges())
      if (((m >> e.i) ^ (m >> e.j)) & 1U) w += e.J * e.J;
    best = std::min(best, w);
  }
  return best;
}

inline InteractionGraph chain(int n, double J = 1.0) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, J, "ZZ"});
  return InteractionGraph(n, edges);
}

}  // namespace aotoc::test
