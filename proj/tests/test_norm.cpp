#include <random>

#include "doctest.h"
#include "fockmult/error.hpp"
#include "fockmult/norm.hpp"
#include "oracles.hpp"

using namespace fockmult;

namespace {

oracle::Dense random_dense(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  oracle::Dense m(r, c);
  for (auto& v : m.a) v = Complex(g(rng), g(rng));
  return m;
}

SparseMatrix to_sparse(const oracle::Dense& m) { return SparseMatrix::from_dense(m.rows, m.cols, m.a); }

}  // namespace

TEST_CASE("sparse construction sums duplicates and drops zeros") {
  std::vector<SparseMatrix::Column> cols(2);
  cols[0] = {{1, 2.0}, {0, 1.0}, {1, -2.0}};
  cols[1] = {{2, Complex(0, 1)}, {2, Complex(0, 1)}};
  const SparseMatrix m = SparseMatrix::from_columns(3, cols);
  CHECK(m.nnz() == 2);
  CHECK(m.entry(0, 0) == Complex(1.0));
  CHECK(m.entry(1, 0) == Complex(0.0));
  CHECK(m.entry(2, 1) == Complex(0, 2));
  CHECK(m.column_rows(0).size() == 1);
}

TEST_CASE("sparse products and adjoints match dense arithmetic") {
  std::mt19937_64 rng(7);
  const oracle::Dense a = random_dense(4, 3, rng);
  const oracle::Dense b = random_dense(3, 5, rng);
  const SparseMatrix ab = to_sparse(a) * to_sparse(b);
  const oracle::Dense expected = oracle::multiply(a, b);
  CHECK(max_abs_difference(ab, to_sparse(expected)) <= 1e-12);
  CHECK(to_sparse(a).adjoint() == to_sparse(oracle::adjoint(a)));
  CHECK(max_abs_difference(to_sparse(a) + to_sparse(a), to_sparse(a).scaled(2.0)) <= 1e-15);
  CHECK((to_sparse(a) - to_sparse(a)).nnz() == 0);
  CHECK_THROWS_AS(to_sparse(a) * to_sparse(a), Error);

  std::vector<Complex> x(3, Complex(1, -1)), y(4), z(3);
  to_sparse(a).apply(x, y);
  for (std::size_t i = 0; i < 4; ++i) {
    Complex s{};
    for (std::size_t j = 0; j < 3; ++j) s += a(i, j) * x[j];
    CHECK(std::abs(y[i] - s) <= 1e-12);
  }
  to_sparse(a).apply_adjoint(y, z);
  for (std::size_t j = 0; j < 3; ++j) {
    Complex s{};
    for (std::size_t i = 0; i < 4; ++i) s += std::conj(a(i, j)) * y[i];
    CHECK(std::abs(z[j] - s) <= 1e-12);
  }
}

TEST_CASE("norm of simple matrices") {
  CHECK(spectral_norm(SparseMatrix::identity(5)).value == doctest::Approx(1.0).epsilon(1e-14));
  const std::vector<Complex> nilpotent{0.0, 2.0, 0.0, 0.0};
  CHECK(spectral_norm(SparseMatrix::from_dense(2, 2, nilpotent)).value == doctest::Approx(2.0).epsilon(1e-14));
  const NormEstimate zero = spectral_norm(SparseMatrix(3, 4));
  CHECK(zero.value == 0.0);
  CHECK(zero.converged);
  CHECK(zero.iterations == 0);
  CHECK_THROWS_AS(spectral_norm(SparseMatrix::identity(2), NormOptions{0.0}), Error);
}

TEST_CASE("power iteration agrees with the Gram bisection oracle") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  for (int t = 0; t < 50; ++t) {
    const oracle::Dense a = random_dense(dim(rng), dim(rng), rng);
    const NormEstimate est = spectral_norm(to_sparse(a));
    CHECK(est.converged);
    CHECK(std::abs(est.value - oracle::gram_bisection_norm(a)) <= 1e-8);
  }
}

TEST_CASE("the oracle itself on known spectra") {
  oracle::Dense d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = Complex(0, -5);
  d(2, 2) = 1.0;
  CHECK(oracle::gram_bisection_norm(d) == doctest::Approx(5.0).epsilon(1e-14));
  oracle::Dense j(2, 2);
  j(0, 0) = j(0, 1) = j(1, 0) = j(1, 1) = 1.0;
  CHECK(oracle::gram_bisection_norm(j) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("non-convergence is reported, not hidden") {
  // two nearly equal singular values force a slow iteration
  std::vector<Complex> diag{1.0, 0.0, 0.0, 1.0 - 1e-9};
  NormOptions opts;
  opts.max_iters = 3;
  const NormEstimate est = spectral_norm(SparseMatrix::from_dense(2, 2, diag), opts);
  CHECK(est.value <= 1.0 + 1e-15);
  CHECK(est.value >= 1.0 - 1e-8);

  std::mt19937_64 rng(3);
  const oracle::Dense a = random_dense(40, 40, rng);
  opts.tol = 1e-15;
  opts.max_iters = 2;
  const NormEstimate slow = spectral_norm(to_sparse(a), opts);
  CHECK_FALSE(slow.converged);
  CHECK(slow.iterations == 4);  // both attempts ran out
  CHECK(slow.value <= oracle::gram_bisection_norm(a) + 1e-12);
}

TEST_CASE("seeded runs are reproducible") {
  std::mt19937_64 rng(9);
  const SparseMatrix a = to_sparse(random_dense(8, 6, rng));
  const NormEstimate x = spectral_norm(a);
  const NormEstimate y = spectral_norm(a);
  CHECK(x.value == y.value);
  CHECK(x.iterations == y.iterations);
}
