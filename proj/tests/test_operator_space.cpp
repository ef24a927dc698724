#include "support.hpp"

#include <doctest.h>

using namespace aotoc;
using namespace aotoc::test;

TEST_CASE("hs_inner") {
  CHECK(hs_inner(identity(5), identity(5)) == Complex(5.0, 0.0));
  CHECK(std::abs(hs_inner(pauli_x(), pauli_y())) == 0.0);

  Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const Operator x = random_square(4, rng), y = random_square(4, rng);
    CHECK(std::abs(hs_inner(x, y) - hs_inner_oracle(x, y)) < 1e-12);
  }
  CHECK_THROWS_AS(hs_inner(identity(2), identity(3)), DimensionError);
}

TEST_CASE("hs_norm matches entry sum") {
  Rng rng(12);
  for (int d = 1; d <= 9; ++d) {
    const Operator x = random_square(d, rng);
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) s += std::norm(x(i, j));
    CHECK(std::abs(hs_norm(x) * hs_norm(x) - s) < 1e-10 * std::max(1.0, s));
  }
}

TEST_CASE("kron") {
  CHECK(max_abs(kron(identity(2), identity(2)) - identity(4)) == 0.0);
  const Operator zi = kron(pauli_z(), identity(2));
  CHECK(zi(0, 0) == Complex(1.0));
  CHECK(zi(1, 1) == Complex(1.0));
  CHECK(zi(2, 2) == Complex(-1.0));
  CHECK(zi(3, 3) == Complex(-1.0));

  Rng rng(13);
  const Operator a = random_square(2, rng), b = random_square(2, rng), c = random_square(2, rng);
  CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) < 1e-12);
}

TEST_CASE("partial_trace") {
  Rng rng(14);
  const Operator ra = random_herm(2, rng), rb = random_herm(3, rng);
  const Operator trb = partial_trace(kron(ra, rb), {2, 3}, Side::B);
  CHECK(max_abs(trb - rb.trace() * ra) < 1e-12);
  CHECK(max_abs(partial_trace(identity(4), {2, 2}, Side::A) - 2.0 * identity(2)) == 0.0);

  for (auto [dA, dB] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const Operator x = random_square(dA * dB, rng);
    CHECK(max_abs(partial_trace(x, {dA, dB}, Side::A) - partial_trace_oracle(x, dA, dB, Side::A)) < 1e-12);
    CHECK(max_abs(partial_trace(x, {dA, dB}, Side::B) - partial_trace_oracle(x, dA, dB, Side::B)) < 1e-12);
  }
  CHECK_THROWS_AS(partial_trace(identity(5), {2, 2}, Side::A), DimensionError);
}

TEST_CASE("partial trace of kron recovers factors") {
  Rng rng(15);
  for (int k = 0; k < 10; ++k) {
    const int dA = 1 + static_cast<int>(rng() % 3), dB = 1 + static_cast<int>(rng() % 3);
    const Operator a = random_square(dA, rng), b = random_square(dB, rng);
    const Operator ab = kron(a, b);
    CHECK(max_abs(partial_trace(ab, {dA, dB}, Side::B) - b.trace() * a) < 1e-11);
    CHECK(max_abs(partial_trace(ab, {dA, dB}, Side::A) - a.trace() * b) < 1e-11);
  }
}

TEST_CASE("swap_operator") {
  CHECK(max_abs(swap_operator(1) - identity(1)) == 0.0);
  CHECK(std::abs(swap_operator(3).trace() - 3.0) < 1e-15);
  Rng rng(16);
  const Operator s = swap_operator(3);
  for (int k = 0; k < 5; ++k) {
    const Operator a = random_square(3, rng), b = random_square(3, rng);
    CHECK(std::abs((s * kron(a, b)).trace() - (a * b).trace()) < 1e-12);
    CHECK(max_abs(s * kron(a, b) * s - kron(b, a)) < 1e-12);
  }
}

TEST_CASE("haar_unitary") {
  const Operator u1 = haar_unitary(1, 3);
  CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-14);
  CHECK(unitarity_residual(haar_unitary(8, 4)) < 1e-12);
  CHECK(max_abs(haar_unitary(6, 77) - haar_unitary(6, 77)) == 0.0);

  // E|U_00|^2 = 1/d; Var |U_00|^2 = (d-1)/(d^2 (d+1)).
  const int d = 4, n = 10000;
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += std::norm(haar_unitary(d, derive_seed(5, static_cast<std::uint64_t>(k)))(0, 0));
  const double sigma = std::sqrt((d - 1.0) / (d * d * (d + 1.0)) / n);
  CHECK(std::abs(s / n - 0.25) < 3.0 * sigma);
}

TEST_CASE("random_hermitian") {
  const Operator h1 = random_hermitian(1, 9);
  CHECK(h1(0, 0).imag() == 0.0);
  CHECK(hermiticity_residual(random_hermitian(16, 1)) < 1e-12);
  const Eigen::ComplexEigenSolver<Operator> es(random_hermitian(8, 2));
  CHECK(es.eigenvalues().imag().cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("evolution and vectorization") {
  Rng rng(17);
  const Operator h = random_herm(4, rng);
  const Operator u = evolution(h, 0.7);
  CHECK(unitarity_residual(u) < 1e-12);
  CHECK(max_abs(evolution(h, 0.3) * evolution(h, 0.4) - u) < 1e-12);

  const Operator a = random_square(3, rng), b = random_square(3, rng), x = random_square(3, rng);
  CHECK((sandwich(a, b) * vec(x) - vec(a * x * b)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(max_abs(unvec(vec(x), 3) - x) == 0.0);
  // |i><j| sits at i*d + j
  Operator e = Operator::Zero(3, 3);
  e(1, 2) = 1.0;
  CHECK(vec(e)(5) == Complex(1.0));
}

TEST_CASE("pure functions are bit-identical") {
  CHECK(max_abs(random_hermitian(5, 3) - random_hermitian(5, 3)) == 0.0);
  Rng rng(18);
  const Operator x = random_square(6, rng);
  CHECK(max_abs(partial_trace(x, {2, 3}, Side::A) - partial_trace(x, {2, 3}, Side::A)) == 0.0);
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
}

TEST_CASE("contract checks") {
  CHECK_THROWS_AS(require_unitary(2.0 * identity(2), "u"), std::invalid_argument);
  CHECK_THROWS_AS(require_hermitian(pauli_x() * Complex(0, 1), "h"), std::invalid_argument);
  CHECK_THROWS_AS(require_square(Operator::Zero(2, 3), "x"), DimensionError);
}
