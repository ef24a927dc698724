#include "aotoc/rate.hpp"

#include "aotoc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aotoc {

namespace {

Operator pauli_x() {
  Operator s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

Operator pauli_y() {
  Operator s(2, 2);
  s << 0, Complex(0, -1), Complex(0, 1), 0;
  return s;
}

double off_diagonal_norm(const Operator& m) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

// exp(i theta G) for hermitian G.
Operator rotation(const Operator& g, double theta) { return evolution(g, -theta); }

}  // namespace

Operator normalized_traceless(const Operator& h) {
  require_square(h, "normalized_traceless");
  const double d = static_cast<double>(h.rows());
  return (h - (h.trace() / d) * identity(static_cast<int>(h.rows()))) / std::sqrt(d);
}

double eta(const Operator& h) { return h.norm() / std::sqrt(static_cast<double>(h.rows())); }

RateReport gaussian_rate(const Operator& h, const MatrixAlgebra& a) {
  require_hermitian(h, "gaussian_rate");
  if (h.rows() != a.dim()) throw DimensionError("gaussian_rate: Hamiltonian dimension mismatch");
  const Operator ht = normalized_traceless(h);
  const MatrixAlgebra& ap = a.commutant();
  const Operator off_a = ht - a.project(ht);
  const Operator off_both = off_a - ap.project(off_a);
  RateReport r;
  r.rate = off_both.norm();
  r.eta = eta(h);
  r.bound_A = off_a.norm();
  r.bound_Aprime = (ht - ap.project(ht)).norm();
  const SuperProjector pinch = pinching_projector(a);
  const Operator diag = pinch(off_both);
  r.intra_sector = diag.norm();
  r.inter_sector = (off_both - diag).norm();
  return r;
}

double rate_bipartite(const Operator& h, BipartiteShape shape) {
  require_hermitian(h, "rate_bipartite");
  if (shape.dA < 1 || shape.dB < 1 || h.rows() != shape.dim())
    throw DimensionError("rate_bipartite: Hamiltonian dimension does not match shape");
  const Operator ht = normalized_traceless(h);
  const Operator on_b = partial_trace(ht, shape, Side::A);  // Tr_A
  const Operator on_a = partial_trace(ht, shape, Side::B);  // Tr_B
  const Operator interaction =
      ht - kron(identity(shape.dA) / shape.dA, on_b) - kron(on_a, identity(shape.dB) / shape.dB);
  return interaction.norm();
}

double rate_abelian(const Operator& h, const MatrixAlgebra& a) {
  require_hermitian(h, "rate_abelian");
  if (h.rows() != a.dim()) throw DimensionError("rate_abelian: Hamiltonian dimension mismatch");
  if (!is_abelian(a) && !is_abelian(a.commutant()))
    throw std::invalid_argument("rate_abelian: neither the algebra nor its commutant is abelian");
  const Operator ht = normalized_traceless(h);
  double s = 0.0;
  for (const auto& b : a.blocks()) {
    const Operator leak = b.projection * ht * (identity(a.dim()) - b.projection);
    s += leak.squaredNorm();
  }
  return std::sqrt(s);
}

double rate_stabilizer(const Operator& h, const StabilizerGroup& group) {
  require_hermitian(h, "rate_stabilizer");
  if (h.rows() != (Eigen::Index{1} << group.n()))
    throw DimensionError("rate_stabilizer: Hamiltonian dimension must be 2^n");
  const Operator ht = normalized_traceless(h);
  return (ht - twirl(group, ht)).norm();
}

double masa_distance(const Operator& basis, const Operator& other_basis) {
  require_unitary(basis, "masa_distance");
  require_unitary(other_basis, "masa_distance");
  require_same_dim(basis, other_basis, "masa_distance");
  const double d = static_cast<double>(basis.rows());
  const double sum4 = (basis.adjoint() * other_basis).cwiseAbs2().cwiseAbs2().sum();
  return std::sqrt(std::max(0.0, 2.0 * d * (1.0 - sum4 / d)));
}

MasaBound masa_rate_bound(const Operator& h, const Operator& basis) {
  require_hermitian(h, "masa_rate_bound");
  require_unitary(basis, "masa_rate_bound");
  require_same_dim(h, basis, "masa_rate_bound");
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (h + h.adjoint()));
  const auto& ev = es.eigenvalues();
  for (Eigen::Index k = 1; k < ev.size(); ++k)
    if (ev(k) - ev(k - 1) <= 1e-8)
      throw std::invalid_argument("masa_rate_bound: degenerate spectrum, eigenbasis is not unique");
  MasaBound out;
  out.rate = off_diagonal_norm(basis.adjoint() * normalized_traceless(h) * basis);
  out.bound = eta(h) * masa_distance(basis, es.eigenvectors());
  return out;
}

std::vector<double> default_time_grid(const Operator& h) {
  const double e = eta(h);
  std::vector<double> grid;
  if (e == 0.0) return grid;
  for (int k = 0; k < 8; ++k) grid.push_back(std::pow(10.0, -3.0 + k / 7.0) / e);
  return grid;
}

double short_time_coefficient(const MatrixAlgebra& a, const Operator& h,
                              const std::optional<std::vector<double>>& t_grid) {
  require_hermitian(h, "short_time_coefficient");
  if (h.rows() != a.dim()) throw DimensionError("short_time_coefficient: Hamiltonian dimension mismatch");
  const std::vector<double> grid = t_grid ? *t_grid : default_time_grid(h);
  if (grid.empty()) return 0.0;  // H = 0
  for (double t : grid)
    if (!(t > 0.0)) throw std::invalid_argument("short_time_coefficient: times must be positive");
  const OmegaOperator om = omega(a);
  const OmegaOperator om_prime = omega(a.commutant());
  double num = 0.0, den = 0.0;
  for (double t : grid) {
    const double g = a_otoc_exact(om, om_prime, evolution(h, t));
    num += g * t * t;
    den += std::pow(t, 4);
  }
  return num / den;
}

FamilySpec FamilySpec::circular_bipartite_family(std::vector<double> thetas) {
  FamilySpec f;
  f.kind = Kind::circular_bipartite;
  f.thetas = std::move(thetas);
  return f;
}

FamilySpec FamilySpec::circular_masa_family(std::vector<double> thetas) {
  FamilySpec f;
  f.kind = Kind::circular_masa;
  f.thetas = std::move(thetas);
  return f;
}

FamilySpec FamilySpec::circular_symmetric_family(std::vector<double> thetas) {
  FamilySpec f;
  f.kind = Kind::circular_symmetric;
  f.thetas = std::move(thetas);
  return f;
}

FamilySpec::Kind parse_family_kind(const std::string& name) {
  using K = FamilySpec::Kind;
  if (name == "circular_bipartite") return K::circular_bipartite;
  if (name == "circular_masa") return K::circular_masa;
  if (name == "circular_symmetric") return K::circular_symmetric;
  if (name == "explicit_list") return K::explicit_list;
  if (name == "theta_grid") return K::theta_grid;
  throw std::invalid_argument("unknown family kind '" + name + "'");
}

std::string family_kind_name(FamilySpec::Kind kind) {
  using K = FamilySpec::Kind;
  switch (kind) {
    case K::circular_bipartite: return "circular_bipartite";
    case K::circular_masa: return "circular_masa";
    case K::circular_symmetric: return "circular_symmetric";
    case K::explicit_list: return "explicit_list";
    case K::theta_grid: return "theta_grid";
  }
  return "?";
}

MatrixAlgebra family_base(const FamilySpec& family) {
  using K = FamilySpec::Kind;
  switch (family.kind) {
    case K::circular_bipartite: return bipartite_algebra({2, 2}, Side::A);
    case K::circular_masa: return masa_algebra(2);
    case K::circular_symmetric: return generate_algebra({swap_operator(2)}, 4).commutant();
    case K::theta_grid:
      if (!family.base) throw std::invalid_argument("theta_grid family needs a base algebra");
      return *family.base;
    case K::explicit_list: break;
  }
  throw std::invalid_argument("explicit_list families have no base algebra");
}

Operator family_generator(const FamilySpec& family) {
  using K = FamilySpec::Kind;
  switch (family.kind) {
    case K::circular_bipartite: return 0.5 * kron(pauli_x(), pauli_x());
    case K::circular_masa: return 0.5 * pauli_y();
    case K::circular_symmetric: return 0.5 * kron(pauli_y(), identity(2));
    case K::theta_grid:
      require_hermitian(family.generator, "family generator");
      return family.generator;
    case K::explicit_list: break;
  }
  throw std::invalid_argument("explicit_list families have no rotation generator");
}

MatrixAlgebra family_member(const FamilySpec& family, double theta) {
  return rotate_algebra(family_base(family), rotation(family_generator(family), theta));
}

FamilyResult minimize_rate(const Operator& h, const FamilySpec& family, int threads) {
  require_hermitian(h, "minimize_rate");
  using K = FamilySpec::Kind;
  const bool listed = family.kind == K::explicit_list;
  const std::size_t count = listed ? family.algebras.size() : family.thetas.size();
  if (count == 0) throw std::invalid_argument("minimize_rate: empty family");
  if (!listed)
    for (std::size_t k = 1; k < family.thetas.size(); ++k)
      if (!(family.thetas[k] > family.thetas[k - 1]))
        throw std::invalid_argument("minimize_rate: theta grid must be strictly increasing");

  FamilyResult out;
  out.rates.assign(count, 0.0);
  if (listed) {
    for (const auto& a : family.algebras) {
      if (a.dim() != h.rows()) throw DimensionError("minimize_rate: algebra dimension mismatch");
      (void)a.commutant();  // fill caches before workers share them
    }
    parallel_for(count, threads, [&](std::size_t i) {
      const MatrixAlgebra& a = family.algebras[i];
      const bool abelian = is_abelian(a) || is_abelian(a.commutant());
      out.rates[i] = abelian ? rate_abelian(h, a) : gaussian_rate(h, a).rate;
    });
  } else {
    const MatrixAlgebra base = family_base(family);
    const Operator gen = family_generator(family);
    if (base.dim() != h.rows() || gen.rows() != h.rows())
      throw DimensionError("minimize_rate: family dimension does not match the Hamiltonian");
    (void)base.commutant();
    (void)base.blocks();
    // Covariance: rate(H, U A U^dag) = rate(U^dag H U, A) keeps the algebra fixed.
    parallel_for(count, threads, [&](std::size_t i) {
      const Operator u = rotation(gen, family.thetas[i]);
      Operator hr = u.adjoint() * h * u;
      hr = 0.5 * (hr + hr.adjoint());
      switch (family.kind) {
        case K::circular_bipartite:
          out.rates[i] = rate_bipartite(hr, {2, 2});
          break;
        case K::circular_masa:
          out.rates[i] = off_diagonal_norm(normalized_traceless(hr));
          break;
        default:
          out.rates[i] = gaussian_rate(hr, base).rate;
      }
    });
  }
  const auto [lo, hi] = std::minmax_element(out.rates.begin(), out.rates.end());
  out.min_rate = *lo;
  const double max_rate = *hi;
  for (std::size_t i = 0; i < count; ++i) {
    if (out.rates[i] <= out.min_rate + 1e-9) out.argmin.push_back(static_cast<int>(i));
    if (out.rates[i] >= max_rate - 1e-9) out.argmax.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 1) throw std::invalid_argument("linear_grid: steps must be positive");
  std::vector<double> g;
  for (int k = 0; k <= steps; ++k) g.push_back(lo + (hi - lo) * k / steps);
  return g;
}

}  // namespace aotoc
