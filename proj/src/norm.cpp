#include "fockmult/norm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fockmult/error.hpp"

namespace fockmult {

namespace {

using Vec = std::vector<Complex>;

double squared_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

// <u, v>, conjugate-linear in u.
Complex dot(const Vec& u, const Vec& v) {
  Complex s{};
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

void scale(Vec& v, double s) {
  for (auto& x : v) x *= s;
}

// When no two columns share a row, A^H A is diagonal and the norm is the
// largest column norm. This covers isometries and weighted permutations and
// gives them exact values.
bool disjoint_columns(const SparseMatrix& a) {
  std::vector<bool> seen(a.rows(), false);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t r : a.column_rows(j)) {
      if (seen[r]) return false;
      seen[r] = true;
    }
  }
  return true;
}

double largest_column_norm(const SparseMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const auto vals = a.column_values(j);
    const double n = vals.size() == 1 ? std::abs(vals[0]) : std::sqrt(squared_norm(vals));
    best = std::max(best, n);
  }
  return best;
}

// Number of eigenvalues of the symmetric tridiagonal (a, b) below x.
std::size_t count_below(const std::vector<double>& a, const std::vector<double>& b, double x) {
  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = a[i] - x - (i == 0 ? 0.0 : b[i - 1] * b[i - 1] / d);
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

// Largest eigenpair of the symmetric tridiagonal with diagonal a and
// off-diagonal b: bisection on Sturm counts, then inverse iteration.
void top_eigenpair(const std::vector<double>& a, const std::vector<double>& b, double& value,
                   std::vector<double>& vector) {
  const std::size_t m = a.size();
  double lo = a[0], hi = a[0];
  for (std::size_t i = 0; i < m; ++i) {
    const double r = (i > 0 ? std::abs(b[i - 1]) : 0.0) + (i + 1 < m ? std::abs(b[i]) : 0.0);
    lo = std::min(lo, a[i] - r);
    hi = std::max(hi, a[i] + r);
  }
  for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(std::abs(lo), std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(a, b, mid) == m) hi = mid; else lo = mid;
  }
  value = hi;

  // (T - sigma) v = u with sigma just above the top eigenvalue; T - sigma is
  // negative definite, so elimination without pivoting is stable
  const double sigma = hi + 1e-14 * std::max(1.0, std::abs(hi));
  vector.assign(m, 1.0);
  std::vector<double> diag(m), rhs(m);
  for (int it = 0; it < 3; ++it) {
    diag[0] = a[0] - sigma;
    rhs[0] = vector[0];
    for (std::size_t i = 1; i < m; ++i) {
      const double f = b[i - 1] / diag[i - 1];
      diag[i] = a[i] - sigma - f * b[i - 1];
      rhs[i] = vector[i] - f * rhs[i - 1];
    }
    vector[m - 1] = rhs[m - 1] / diag[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) vector[i] = (rhs[i] - b[i] * vector[i + 1]) / diag[i];
    double n = 0.0;
    for (double v : vector) n += v * v;
    n = std::sqrt(n);
    for (double& v : vector) v /= n;
  }
}

struct Attempt {
  double lambda = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Explicitly restarted Lanczos on A^H A with full reorthogonalisation. Each
// cycle builds a Krylov basis from the current vector, and the next cycle
// restarts from the top Ritz vector. One step costs one product with A and
// one with A^H, the same as a power-iteration step, and counts as one
// iteration. Converged when the Ritz residual |beta_m s_m| is at most
// tol * max(1, theta).
Attempt lanczos(const SparseMatrix& a, Vec x, const NormOptions& options) {
  const std::size_t n = a.cols();
  // at most 64 basis vectors, fewer for very wide matrices (~64 MB)
  const std::size_t cycle = std::clamp<std::size_t>((std::size_t{1} << 22) / std::max<std::size_t>(n, 1), 4, 64);
  Attempt out;
  Vec y(a.rows());
  Vec w(n);
  std::vector<Vec> basis;
  std::vector<double> alpha, beta;

  double norm_x = std::sqrt(squared_norm(x));
  if (norm_x == 0.0) return out;
  scale(x, 1.0 / norm_x);

  while (out.iterations < options.max_iters) {
    const std::size_t m_max = std::min({cycle, n, options.max_iters - out.iterations});
    basis.assign(1, x);
    alpha.clear();
    beta.clear();
    bool breakdown = false;
    for (std::size_t j = 0; j < m_max; ++j) {
      a.apply(basis[j], y);
      a.apply_adjoint(y, w);
      ++out.iterations;
      alpha.push_back(dot(basis[j], w).real());
      // classical Gram-Schmidt against the whole basis, repeated when the
      // first pass cancelled most of w
      const double before = std::sqrt(squared_norm(w));
      double b = 0.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (const Vec& v : basis) {
          const Complex c = dot(v, w);
          for (std::size_t i = 0; i < n; ++i) w[i] -= c * v[i];
        }
        b = std::sqrt(squared_norm(w));
        if (b > 0.7 * before) break;
      }
      beta.push_back(b);
      if (b <= 1e-14 * std::max(*std::max_element(alpha.begin(), alpha.end()), 1e-300) || j + 1 == n) {
        breakdown = true;  // the basis spans an invariant subspace
        break;
      }
      if (j + 1 < m_max) {
        scale(w, 1.0 / b);
        basis.push_back(w);
      }
    }

    const std::size_t m = alpha.size();
    double theta = 0.0;
    std::vector<double> s;
    top_eigenpair(alpha, beta, theta, s);
    const double residual = breakdown ? 0.0 : std::abs(beta[m - 1] * s[m - 1]);

    std::fill(x.begin(), x.end(), Complex{});
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < n; ++i) x[i] += s[k] * basis[k][i];
    }
    norm_x = std::sqrt(squared_norm(x));
    if (norm_x == 0.0) break;
    scale(x, 1.0 / norm_x);
    // report the Rayleigh quotient of the Ritz vector itself
    a.apply(x, y);
    out.lambda = std::max(out.lambda, squared_norm(y));
    if (residual <= options.tol * std::max(1.0, theta)) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

NormEstimate spectral_norm(const SparseMatrix& a, const NormOptions& options) {
  if (!(options.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "norm tolerance must be positive");
  if (a.nnz() == 0 || a.cols() == 0) return NormEstimate{0.0, 0, true};
  if (disjoint_columns(a)) return NormEstimate{largest_column_norm(a), 0, true};

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec start(a.cols());
  for (auto& v : start) v = Complex(gauss(rng), gauss(rng));

  Attempt first = lanczos(a, start, options);
  if (first.converged) return NormEstimate{std::sqrt(first.lambda), first.iterations, true};

  std::rotate(start.begin(), start.begin() + 1, start.end());
  const Complex phase = std::polar(1.0, 0.5);
  for (auto& v : start) v *= phase;
  Attempt second = lanczos(a, std::move(start), options);

  return NormEstimate{std::sqrt(std::max(first.lambda, second.lambda)), first.iterations + second.iterations,
                      second.converged};
}

}  // namespace fockmult
