#include "aotoc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <tuple>

namespace aotoc {

namespace {

constexpr int kMaxRetries = 16;

// Incremental real Gram-Schmidt over hermitian matrices. Inner products between
// hermitian operators are real, so the residual of a hermitian candidate stays
// hermitian and the resulting basis is orthonormal over C as well.
class HermitianSpan {
 public:
  HermitianSpan(int d, double rel_tol) : d_(d), tol_(rel_tol), q_(static_cast<Eigen::Index>(d) * d, 0) {}

  int size() const { return static_cast<int>(q_.cols()); }
  const Eigen::MatrixXcd& matrix() const { return q_; }

  /// `scale` is the norm the residual is measured against (defaults to ||h||).
  bool try_add_hermitian(const Operator& h, double scale = 0.0) {
    Eigen::VectorXcd v = vec(h);
    const double norm0 = std::max(v.norm(), scale);
    if (norm0 == 0.0 || size() == d_ * d_) return false;
    for (int pass = 0; pass < 2; ++pass) {
      if (size() == 0) break;
      const Eigen::VectorXd coeff = (q_.adjoint() * v).real();
      v -= q_ * coeff.cast<Complex>();
    }
    const double norm1 = v.norm();
    if (norm1 <= tol_ * norm0) return false;
    q_.conservativeResize(Eigen::NoChange, q_.cols() + 1);
    q_.col(q_.cols() - 1) = v / norm1;
    return true;
  }

  /// Adds the hermitian and anti-hermitian parts of x; returns how many were new.
  int try_add(const Operator& x, double scale = 0.0) {
    const Operator re = 0.5 * (x + x.adjoint());
    const Operator im = Complex(0.0, -0.5) * (x - x.adjoint());
    int added = 0;
    // Both parts are judged against ||x|| (or the caller's scale), so rounding
    // noise in a nearly hermitian x does not enter the basis.
    scale = std::max(scale, x.norm());
    if (try_add_hermitian(re, scale)) ++added;
    if (try_add_hermitian(im, scale)) ++added;
    return added;
  }

 private:
  int d_;
  double tol_;
  Eigen::MatrixXcd q_;
};

// Orthonormal hermitian basis (columns are vec) of the real span of the
// hermitian and anti-hermitian parts of the elements. Each part is judged
// against max(norm of its element, floor), and rank is decided by column-pivoted QR on
// the real coordinates, which picks the largest residual first and so does not
// promote rounding noise the way a fixed-order Gram-Schmidt can.
Eigen::MatrixXcd hermitian_span_basis(const std::vector<Operator>& elements, int d, double rel_tol,
                                      double floor = 0.0) {
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  std::vector<Eigen::VectorXd> cols;
  for (const auto& x : elements) {
    const double scale = std::max(x.norm(), floor);
    if (scale == 0.0) continue;
    const Operator re = 0.5 * (x + x.adjoint());
    const Operator im = Complex(0.0, -0.5) * (x - x.adjoint());
    for (const Operator* part : {&re, &im}) {
      Eigen::VectorXd c(2 * n);
      const Eigen::VectorXcd v = vec(*part) / scale;
      c.head(n) = v.real();
      c.tail(n) = v.imag();
      cols.push_back(std::move(c));
    }
  }
  if (cols.empty()) return Eigen::MatrixXcd(n, 0);
  Eigen::MatrixXd m(2 * n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = cols[k];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  // Eigen's threshold is relative to the largest pivot; parts are normalized by
  // their element, so the largest pivot is O(1).
  qr.setThreshold(rel_tol);
  const Eigen::Index r = std::min<Eigen::Index>(qr.rank(), n);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(2 * n, r);
  Eigen::MatrixXcd out(n, r);
  out.real() = q.topRows(n);
  out.imag() = q.bottomRows(n);
  return out;
}

std::vector<std::vector<int>> cluster_sorted(const Eigen::VectorXd& values, double gap) {
  std::vector<std::vector<int>> clusters;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (clusters.empty() || values(k) - values(k - 1) > gap) clusters.emplace_back();
    clusters.back().push_back(static_cast<int>(k));
  }
  return clusters;
}

Eigen::MatrixXcd range_basis(const Operator& projection) {
  Eigen::SelfAdjointEigenSolver<Operator> es(projection);
  std::vector<int> keep;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) > 0.5) keep.push_back(static_cast<int>(k));
  Eigen::MatrixXcd v(projection.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  return v;
}

int first_support_index(const Operator& projection) {
  for (Eigen::Index i = 0; i < projection.rows(); ++i)
    if (projection(i, i).real() > 1e-8) return static_cast<int>(i);
  return static_cast<int>(projection.rows());
}

}  // namespace

// ---------------------------------------------------------------------------
// SuperProjector

SuperProjector SuperProjector::onto(const MatrixAlgebra& a) {
  SuperProjector p;
  p.kind_ = Kind::onto_algebra;
  p.dim_ = a.dim();
  p.basis_ = a.basis_matrix();
  return p;
}

SuperProjector SuperProjector::sum_space(const MatrixAlgebra& a, const MatrixAlgebra& a_prime) {
  if (a.dim() != a_prime.dim()) throw DimensionError("sum_space: ambient dimensions differ");
  SuperProjector p;
  p.kind_ = Kind::sum_space;
  p.dim_ = a.dim();
  p.basis_ = a.basis_matrix();
  p.basis_prime_ = a_prime.basis_matrix();
  return p;
}

SuperProjector SuperProjector::pinching(std::vector<Operator> projections) {
  if (projections.empty()) throw DimensionError("pinching: no projections");
  SuperProjector p;
  p.kind_ = Kind::pinching;
  p.dim_ = static_cast<int>(projections.front().rows());
  p.projections_ = std::move(projections);
  return p;
}

Operator SuperProjector::operator()(const Operator& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw DimensionError("SuperProjector: operator dimension mismatch");
  switch (kind_) {
    case Kind::onto_algebra: {
      const Eigen::VectorXcd v = vec(x);
      return unvec(basis_ * (basis_.adjoint() * v), dim_);
    }
    case Kind::sum_space: {
      const Eigen::VectorXcd v = vec(x);
      const Eigen::VectorXcd pb = basis_prime_ * (basis_prime_.adjoint() * v);
      const Eigen::VectorXcd pa = basis_ * (basis_.adjoint() * v);
      const Eigen::VectorXcd pab = basis_ * (basis_.adjoint() * pb);
      return unvec(pa + pb - pab, dim_);
    }
    case Kind::pinching: {
      Operator out = Operator::Zero(dim_, dim_);
      for (const auto& pi : projections_) out += pi * x * pi;
      return out;
    }
  }
  return {};
}

Superoperator SuperProjector::matrix() const {
  switch (kind_) {
    case Kind::onto_algebra:
      return basis_ * basis_.adjoint();
    case Kind::sum_space: {
      const Superoperator pa = basis_ * basis_.adjoint();
      const Superoperator pb = basis_prime_ * basis_prime_.adjoint();
      return pa + pb - pa * pb;
    }
    case Kind::pinching: {
      const Eigen::Index n = static_cast<Eigen::Index>(dim_) * dim_;
      Superoperator m = Superoperator::Zero(n, n);
      for (const auto& pi : projections_) m += sandwich(pi, pi);
      return m;
    }
  }
  return {};
}

double SuperProjector::rank() const {
  switch (kind_) {
    case Kind::onto_algebra:
      return static_cast<double>(basis_.cols());
    case Kind::sum_space:
      return static_cast<double>(basis_.cols() + basis_prime_.cols()) -
             (basis_.adjoint() * basis_prime_).squaredNorm();
    case Kind::pinching: {
      double r = 0.0;
      for (const auto& pi : projections_) r += std::pow(pi.trace().real(), 2);
      return r;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// MatrixAlgebra

MatrixAlgebra MatrixAlgebra::from_spanning_set(const std::vector<Operator>& elements, int d, Seed seed,
                                               Tolerances tol) {
  if (d < 1) throw DimensionError("from_spanning_set: d must be positive");
  for (const auto& e : elements)
    if (e.rows() != d || e.cols() != d) throw DimensionError("from_spanning_set: element is not d x d");
  MatrixAlgebra a;
  a.dim_ = d;
  a.seed_ = seed;
  a.tol_ = tol;
  a.basis_ = hermitian_span_basis(elements, d, tol.rank);
  return a;
}

std::vector<Operator> MatrixAlgebra::basis() const {
  std::vector<Operator> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int k = 0; k < size(); ++k) out.push_back(element(k));
  return out;
}

Operator MatrixAlgebra::project(const Operator& x) const {
  require_square(x, "project");
  if (x.rows() != dim_) throw DimensionError("project: operator dimension mismatch");
  return unvec(basis_ * (basis_.adjoint() * vec(x)), dim_);
}

Operator MatrixAlgebra::generic_element(Seed seed) const {
  std::mt19937_64 rng(mix_seed(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd coeff(size());
  for (int k = 0; k < size(); ++k) coeff(k) = normal(rng);
  Operator h = unvec(basis_ * coeff, dim_);
  return 0.5 * (h + h.adjoint());
}

MatrixAlgebra MatrixAlgebra::commutant() const {
  std::call_once(cache_->commutant_once,
                 [this] { cache_->commutant = std::make_shared<const MatrixAlgebra>(compute_commutant(*this)); });
  return *cache_->commutant;
}

MatrixAlgebra MatrixAlgebra::center() const {
  std::call_once(cache_->center_once, [this] {
    const MatrixAlgebra comm = commutant();
    const Eigen::MatrixXcd overlap = basis_.adjoint() * comm.basis_matrix();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(overlap, Eigen::ComputeThinU);
    std::vector<Operator> common;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
      if (svd.singularValues()(k) >= 1.0 - 1e-8) common.push_back(unvec(basis_ * svd.matrixU().col(k), dim_));
    cache_->center = std::make_shared<const MatrixAlgebra>(from_spanning_set(common, dim_, seed_, tol_));
  });
  return *cache_->center;
}

const std::vector<CentralBlock>& MatrixAlgebra::blocks() const {
  std::call_once(cache_->blocks_once, [this] {
    const MatrixAlgebra z = center();
    const int dz = z.size();
    const int comm_size = commutant().size();
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
      const Operator gz = z.generic_element(derive_seed(seed_, 0xb10c, static_cast<std::uint64_t>(attempt)));
      Eigen::SelfAdjointEigenSolver<Operator> es(gz);
      const auto clusters = cluster_sorted(es.eigenvalues(), tol_.cluster_gap);
      if (static_cast<int>(clusters.size()) != dz) continue;

      std::vector<CentralBlock> out;
      int sum_nd = 0, sum_d2 = 0, sum_n2 = 0;
      bool integral = true;
      for (const auto& cluster : clusters) {
        Operator pi = Operator::Zero(dim_, dim_);
        for (int k : cluster) pi += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
        std::vector<Operator> reduced;
        for (int alpha = 0; alpha < size(); ++alpha) reduced.push_back(pi * element(alpha) * pi);
        const int reduced_dim = static_cast<int>(hermitian_span_basis(reduced, dim_, tol_.rank, 1.0).cols());
        const int dj = static_cast<int>(std::lround(std::sqrt(static_cast<double>(reduced_dim))));
        const int tr = static_cast<int>(std::lround(pi.trace().real()));
        if (dj < 1 || dj * dj != reduced_dim || tr % dj != 0) {
          integral = false;
          break;
        }
        const int nj = tr / dj;
        out.push_back({pi, nj, dj});
        sum_nd += nj * dj;
        sum_d2 += dj * dj;
        sum_n2 += nj * nj;
      }
      if (!integral) continue;
      if (sum_nd != dim_ || sum_d2 != size() || sum_n2 != comm_size)
        throw StructureError("block_spectrum: dimension counts inconsistent (sum n*d=" + std::to_string(sum_nd) +
                             ", sum d^2=" + std::to_string(sum_d2) + ", sum n^2=" + std::to_string(sum_n2) + ")");
      std::stable_sort(out.begin(), out.end(), [](const CentralBlock& x, const CentralBlock& y) {
        const int fx = first_support_index(x.projection), fy = first_support_index(y.projection);
        if (fx != fy) return fx < fy;
        const double wx = x.projection(fx, fx).real(), wy = y.projection(fy, fy).real();
        if (std::abs(wx - wy) > 1e-8) return wx > wy;
        return std::tie(x.d, x.n) > std::tie(y.d, y.n);
      });
      cache_->blocks = std::move(out);
      return;
    }
    throw StructureError("block_spectrum: integrality failure after retries; algebra closure is numerically broken");
  });
  return cache_->blocks;
}

const BlockIsometry& MatrixAlgebra::isometry() const {
  std::call_once(cache_->isometry_once, [this] {
    const auto& bl = blocks();
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
      const Operator h1 = generic_element(derive_seed(seed_, 0x150a, static_cast<std::uint64_t>(attempt)));
      const Operator h2 = generic_element(derive_seed(seed_, 0x150b, static_cast<std::uint64_t>(attempt)));
      Eigen::MatrixXcd columns(dim_, dim_);
      std::vector<BlockLayout> layout;
      int offset = 0;
      bool ok = true;
      for (const auto& b : bl) {
        const Eigen::MatrixXcd v = range_basis(b.projection);
        const Eigen::MatrixXcd reduced = v.adjoint() * h1 * v;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (reduced + reduced.adjoint()));
        const auto clusters = cluster_sorted(es.eigenvalues(), tol_.cluster_gap);
        if (static_cast<int>(clusters.size()) != b.d) {
          ok = false;
          break;
        }
        std::vector<Eigen::MatrixXcd> f;  // orthonormal bases of the minimal projections
        for (const auto& c : clusters) {
          if (static_cast<int>(c.size()) != b.n) {
            ok = false;
            break;
          }
          Eigen::MatrixXcd fl(dim_, b.n);
          for (int q = 0; q < b.n; ++q) fl.col(q) = v * es.eigenvectors().col(c[static_cast<std::size_t>(q)]);
          f.push_back(std::move(fl));
        }
        if (!ok) break;
        std::vector<Eigen::MatrixXcd> polar(static_cast<std::size_t>(b.d));
        polar[0] = Eigen::MatrixXcd::Identity(b.n, b.n);
        const double scale = std::max(1e-300, h2.norm());
        for (int l = 1; l < b.d; ++l) {
          const Eigen::MatrixXcd m = f[static_cast<std::size_t>(l)].adjoint() * h2 * f[0];
          Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
          if (svd.singularValues().minCoeff() < 1e-6 * scale) {
            ok = false;
            break;
          }
          polar[static_cast<std::size_t>(l)] = svd.matrixU() * svd.matrixV().adjoint();
        }
        if (!ok) break;
        for (int q = 0; q < b.n; ++q)
          for (int l = 0; l < b.d; ++l)
            columns.col(offset + q * b.d + l) =
                f[static_cast<std::size_t>(l)] * polar[static_cast<std::size_t>(l)].col(q);
        layout.push_back({b.n, b.d, offset});
        offset += b.n * b.d;
      }
      if (!ok) continue;

      BlockIsometry iso{columns.adjoint(), layout};
      double residual = unitarity_residual(iso.w);
      for (int alpha = 0; alpha < size() && residual <= 1e-8; ++alpha) {
        Operator c = iso.w * element(alpha) * iso.w.adjoint();
        for (const auto& lay : layout) {
          const int sz = lay.n * lay.d;
          Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(lay.d, lay.d);
          for (int q = 0; q < lay.n; ++q)
            m += c.block(lay.offset + q * lay.d, lay.offset + q * lay.d, lay.d, lay.d);
          m /= static_cast<double>(lay.n);
          c.block(lay.offset, lay.offset, sz, sz) -= kron(identity(lay.n), m);
        }
        residual = std::max(residual, c.norm());
      }
      if (residual > 1e-8) continue;
      cache_->isometry = std::move(iso);
      return;
    }
    throw StructureError("block_isometry: degenerate generic elements after retries");
  });
  return cache_->isometry;
}

// ---------------------------------------------------------------------------
// Free functions

MatrixAlgebra generate_algebra(const std::vector<Operator>& generators, int d, Seed seed, Tolerances tol) {
  if (d < 1) throw DimensionError("generate_algebra: d must be positive");
  std::vector<Operator> herm;
  for (const auto& g : generators) {
    if (g.rows() != d || g.cols() != d)
      throw DimensionError("generate_algebra: generator is " + std::to_string(g.rows()) + "x" +
                           std::to_string(g.cols()) + ", expected " + std::to_string(d) + "x" + std::to_string(d));
    const double scale = g.norm();
    for (const Operator& part : {Operator(0.5 * (g + g.adjoint())), Operator(Complex(0.0, -0.5) * (g - g.adjoint()))})
      if (part.norm() > tol.rank * scale) herm.push_back(part);
  }
  HermitianSpan span(d, tol.rank);
  std::deque<int> pending;
  auto add = [&](const Operator& x, double scale) {
    const int before = span.size();
    span.try_add(x, scale);
    for (int k = before; k < span.size(); ++k) pending.push_back(k);
  };
  add(identity(d) / std::sqrt(static_cast<double>(d)), 1.0);
  for (const auto& h : herm) add(h, h.norm());
  // Left multiplication by the generators of every new basis element reaches
  // all words; the hermitian split also brings in right products.
  while (!pending.empty()) {
    const int k = pending.front();
    pending.pop_front();
    const Operator b = unvec(span.matrix().col(k), d);
    for (const auto& h : herm) add(h * b, h.norm());
  }
  MatrixAlgebra a;
  a.dim_ = d;
  a.seed_ = seed;
  a.tol_ = tol;
  a.basis_ = span.matrix();
  return a;
}

MatrixAlgebra compute_commutant(const MatrixAlgebra& a) {
  const int d = a.dim();
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  // vec([X, b]) = (1 (x) b^T - b (x) 1) vec X =: K_b vec X, with K_b hermitian for
  // hermitian b; the commutant is the null space of sum_b K_b^2.
  Operator sum_b2 = Operator::Zero(d, d);
  Superoperator cross = Superoperator::Zero(n, n);
  for (int alpha = 0; alpha < a.size(); ++alpha) {
    const Operator b = a.element(alpha);
    sum_b2 += b * b;
    cross += kron(b, b.transpose());
  }
  const Superoperator gram = kron(identity(d), sum_b2.transpose()) - 2.0 * cross + kron(sum_b2, identity(d));
  Eigen::SelfAdjointEigenSolver<Superoperator> es(0.5 * (gram + gram.adjoint()));
  const double top = std::max(0.0, es.eigenvalues().maxCoeff());
  const double cutoff = a.tolerances().rank * top;
  std::vector<Operator> null_space;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) <= cutoff) null_space.push_back(unvec(es.eigenvectors().col(k), d));
  return MatrixAlgebra::from_spanning_set(null_space, d, derive_seed(a.seed(), 0xc0), a.tolerances());
}

SuperProjector conditional_expectation(const MatrixAlgebra& a) { return SuperProjector::onto(a); }

SuperProjector sum_space_projector(const MatrixAlgebra& a) { return SuperProjector::sum_space(a, a.commutant()); }

SuperProjector pinching_projector(const MatrixAlgebra& a) {
  std::vector<Operator> pis;
  for (const auto& b : a.blocks()) pis.push_back(b.projection);
  return SuperProjector::pinching(std::move(pis));
}

double algebra_distance(const MatrixAlgebra& a, const MatrixAlgebra& b) {
  if (a.dim() != b.dim()) throw DimensionError("algebra_distance: ambient dimensions differ");
  // ||P_A - P_B||^2 = ||(1 - P_B) Q_A||^2 + ||(1 - P_A) Q_B||^2, without the
  // cancellation of |A| + |B| - 2 Tr(P_A P_B).
  const Eigen::MatrixXcd& qa = a.basis_matrix();
  const Eigen::MatrixXcd& qb = b.basis_matrix();
  const Eigen::MatrixXcd m = qb.adjoint() * qa;
  return std::sqrt((qa - qb * m).squaredNorm() + (qb - qa * m.adjoint()).squaredNorm());
}

bool same_span(const MatrixAlgebra& a, const MatrixAlgebra& b) {
  return a.dim() == b.dim() && algebra_distance(a, b) < a.tolerances().span;
}

bool is_factor(const MatrixAlgebra& a) { return a.center().size() == 1; }

bool is_collinear(const MatrixAlgebra& a) {
  const long d = a.dim();
  return d * d == static_cast<long>(a.size()) * a.commutant().size();
}

bool is_abelian(const MatrixAlgebra& a) { return a.center().size() == a.size(); }

MatrixAlgebra rotate_algebra(const MatrixAlgebra& a, const Operator& u) {
  require_unitary(u, "rotate_algebra");
  if (u.rows() != a.dim()) throw DimensionError("rotate_algebra: unitary dimension mismatch");
  std::vector<Operator> rotated;
  rotated.reserve(static_cast<std::size_t>(a.size()));
  for (int alpha = 0; alpha < a.size(); ++alpha) rotated.push_back(u * a.element(alpha) * u.adjoint());
  return MatrixAlgebra::from_spanning_set(rotated, a.dim(), a.seed(), a.tolerances());
}

MatrixAlgebra bipartite_algebra(BipartiteShape shape, Side side) {
  if (shape.dA < 1 || shape.dB < 1) throw DimensionError("bipartite_algebra: factor dimensions must be positive");
  const int local = side == Side::A ? shape.dA : shape.dB;
  std::vector<Operator> elements;
  for (int i = 0; i < local; ++i)
    for (int j = 0; j < local; ++j) {
      Operator e = Operator::Zero(local, local);
      e(i, j) = 1.0;
      elements.push_back(side == Side::A ? kron(e, identity(shape.dB)) : kron(identity(shape.dA), e));
    }
  return MatrixAlgebra::from_spanning_set(elements, shape.dim());
}

MatrixAlgebra masa_algebra(int d, const std::optional<Operator>& basis) {
  if (d < 1) throw DimensionError("masa_algebra: d must be positive");
  Operator v = basis.value_or(identity(d));
  if (v.rows() != d) throw DimensionError("masa_algebra: basis dimension mismatch");
  require_unitary(v, "masa_algebra");
  std::vector<Operator> projectors;
  for (int i = 0; i < d; ++i) projectors.push_back(v.col(i) * v.col(i).adjoint());
  return MatrixAlgebra::from_spanning_set(projectors, d);
}

MatrixAlgebra collective_spin_algebra(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 6) throw DimensionError("collective_spin_algebra: n_qubits must be in [1, 6]");
  Operator sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  const int d = 1 << n_qubits;
  std::vector<Operator> gens;
  for (const Operator* s : {&sx, &sy, &sz}) {
    Operator total = Operator::Zero(d, d);
    for (int site = 0; site < n_qubits; ++site) {
      Operator term = identity(1);
      for (int k = 0; k < n_qubits; ++k) term = kron(term, k == site ? *s : identity(2));
      total += term;
    }
    gens.push_back(total);
  }
  return generate_algebra(gens, d);
}

}  // namespace aotoc
