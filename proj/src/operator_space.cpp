#include "aotoc/operator_space.hpp"

#include <cmath>
#include <random>

namespace aotoc {

namespace {

Operator gaussian_matrix(int d, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Operator g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

Complex hs_inner(const Operator& x, const Operator& y) {
  require_same_dim(x, y, "hs_inner");
  return (x.conjugate().cwiseProduct(y)).sum();
}

double hs_norm(const Operator& x) { return x.norm(); }

Operator identity(int d) { return Operator::Identity(d, d); }

Operator kron(const Operator& x, const Operator& y) {
  const Eigen::Index xr = x.rows(), xc = x.cols(), yr = y.rows(), yc = y.cols();
  Operator out(xr * yr, xc * yc);
  for (Eigen::Index i = 0; i < xr; ++i)
    for (Eigen::Index j = 0; j < xc; ++j) out.block(i * yr, j * yc, yr, yc) = x(i, j) * y;
  return out;
}

Operator partial_trace(const Operator& x, BipartiteShape shape, Side side) {
  require_square(x, "partial_trace");
  if (shape.dA < 1 || shape.dB < 1 || x.rows() != shape.dim())
    throw DimensionError("partial_trace: operator dim " + std::to_string(x.rows()) +
                         " does not match shape " + std::to_string(shape.dA) + "x" +
                         std::to_string(shape.dB));
  const int dA = shape.dA, dB = shape.dB;
  if (side == Side::A) {
    Operator out = Operator::Zero(dB, dB);
    for (int a = 0; a < dA; ++a) out += x.block(a * dB, a * dB, dB, dB);
    return out;
  }
  Operator out(dA, dA);
  for (int a = 0; a < dA; ++a)
    for (int b = 0; b < dA; ++b) out(a, b) = x.block(a * dB, b * dB, dB, dB).trace();
  return out;
}

Operator swap_operator(int d) {
  if (d < 1) throw DimensionError("swap_operator: d must be positive");
  Operator s = Operator::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  return s;
}

Operator haar_unitary(int d, Seed seed) {
  if (d < 1) throw DimensionError("haar_unitary: d must be positive");
  std::mt19937_64 rng(mix_seed(seed));
  const Operator g = gaussian_matrix(d, rng, std::sqrt(0.5));
  Eigen::HouseholderQR<Operator> qr(g);
  Operator q = qr.householderQ();
  const Operator& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0);
  }
  return q;
}

Operator random_hermitian(int d, Seed seed) {
  if (d < 1) throw DimensionError("random_hermitian: d must be positive");
  std::mt19937_64 rng(mix_seed(seed ^ 0x9e3779b97f4a7c15ULL));
  const Operator g = gaussian_matrix(d, rng, std::sqrt(0.5));
  Operator h = 0.5 * (g + g.adjoint());
  for (int i = 0; i < d; ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
  return h;
}

Operator evolution(const Operator& h, double t) {
  require_hermitian(h, "evolution", 1e-9);
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(Complex(0.0, -w(k) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::VectorXcd vec(const Operator& x) {
  Eigen::VectorXcd v(x.size());
  const Eigen::Index d = x.cols();
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = x(i, j);
  return v;
}

Operator unvec(const Eigen::VectorXcd& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d) throw DimensionError("unvec: length is not d^2");
  Operator x(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = v(i * d + j);
  return x;
}

Superoperator sandwich(const Operator& a, const Operator& b) { return kron(a, b.transpose()); }

bool is_square(const Operator& x) { return x.rows() == x.cols() && x.rows() > 0; }

double hermiticity_residual(const Operator& x) { return (x - x.adjoint()).norm(); }

double unitarity_residual(const Operator& u) {
  return (u.adjoint() * u - Operator::Identity(u.cols(), u.cols())).norm();
}

void require_square(const Operator& x, const char* what) {
  if (!is_square(x))
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
}

void require_same_dim(const Operator& x, const Operator& y, const char* what) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(x.rows()) +
                         "x" + std::to_string(x.cols()) + " vs " + std::to_string(y.rows()) + "x" +
                         std::to_string(y.cols()) + ")");
}

void require_unitary(const Operator& u, const char* what, double tol) {
  require_square(u, what);
  if (unitarity_residual(u) > tol) throw std::invalid_argument(std::string(what) + ": matrix is not unitary");
}

void require_hermitian(const Operator& h, const char* what, double tol) {
  require_square(h, what);
  if (hermiticity_residual(h) > tol * std::max(1.0, h.norm()))
    throw std::invalid_argument(std::string(what) + ": matrix is not hermitian");
}

Seed mix_seed(Seed x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Seed derive_seed(Seed base, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(mix_seed(base) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

}  // namespace aotoc
