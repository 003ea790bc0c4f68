#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace oracle {

Dense multiply(const Dense& x, const Dense& y) {
  Dense z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k)
      for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
  return z;
}

Dense adjoint(const Dense& x) {
  Dense z(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) z(j, i) = std::conj(x(i, j));
  return z;
}

double gram_bisection_norm(const Dense& x) {
  Dense g = multiply(adjoint(x), x);
  const std::size_t n = g.rows;
  if (n == 0) return 0.0;

  // G <- P G P with Householder reflectors P = I - 2 v v^H
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(g(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const Complex x0 = g(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    std::vector<Complex> v(n);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = g(i, k);
    v[k + 1] += phase * xnorm;
    double vnorm = 0.0;
    for (const auto& c : v) vnorm += std::norm(c);
    vnorm = std::sqrt(vnorm);
    for (auto& c : v) c /= vnorm;
    Dense p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = (i == j ? 1.0 : 0.0) - 2.0 * v[i] * std::conj(v[j]);
    g = multiply(p, multiply(g, p));
  }

  std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = g(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = std::abs(g(i + 1, i));

  // eigenvalues of the tridiagonal matrix below x
  auto below = [&](double x) {
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      q = d[i] - x - (i == 0 ? 0.0 : e[i - 1] * e[i - 1] / q);
      if (q == 0.0) q = -std::numeric_limits<double>::min();
      if (q < 0.0) ++count;
    }
    return count;
  };

  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    hi = std::max(hi, d[i] + (i > 0 ? e[i - 1] : 0.0) + (i + 1 < n ? e[i] : 0.0));
  }
  double lo = 0.0;
  if (hi <= 0.0) return 0.0;
  for (int it = 0; it < 300 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (below(mid) == n ? hi : lo) = mid;
  }
  return std::sqrt(0.5 * (lo + hi));
}

Sparse to_map(const fockmult::FockVector& f) {
  Sparse out;
  for (const auto& [idx, c] : f.terms()) out[(*f.window())[idx]] = c;
  return out;
}

namespace {

Element product(const MonoidSpec& spec, const Element& a, const Element& b) {
  using fockmult::MonoidKind;
  switch (spec.kind()) {
    case MonoidKind::Cyclic:
      return Element::scalar((a.value() + b.value()) % spec.parameter());
    case MonoidKind::Integers:
    case MonoidKind::NonNegIntegers:
      return Element::scalar(a.value() + b.value());
    case MonoidKind::NonNegVectors: {
      std::vector<std::int64_t> v(a.payload());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.payload()[i];
      return Element(v);
    }
    case MonoidKind::FreeMonoid: {
      std::vector<std::int64_t> w(a.payload());
      w.insert(w.end(), b.payload().begin(), b.payload().end());
      return Element(w);
    }
    case MonoidKind::FiniteGroup:
      return Element::scalar(spec.table()[a.value()][b.value()]);
  }
  return {};
}

}  // namespace

Sparse convolve(const MonoidSpec& spec, const Sparse& a, const Sparse& b) {
  Sparse out;
  for (const auto& [s, x] : a)
    for (const auto& [r, y] : b) out[product(spec, s, r)] += x * y;
  return out;
}

double max_diff(const Sparse& a, const Sparse& b) {
  double worst = 0.0;
  for (const auto& [e, c] : a) {
    const auto it = b.find(e);
    worst = std::max(worst, std::abs(c - (it == b.end() ? Complex{} : it->second)));
  }
  for (const auto& [e, c] : b) {
    if (!a.count(e)) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

std::vector<Element> enumerate_window(const MonoidSpec& spec, int level) {
  using fockmult::MonoidKind;
  std::vector<Element> out;
  switch (spec.kind()) {
    case MonoidKind::Cyclic:
    case MonoidKind::FiniteGroup:
      for (int i = 0; i < spec.parameter(); ++i) out.push_back(Element::scalar(i));
      break;
    case MonoidKind::NonNegIntegers:
      for (int i = 0; i <= level; ++i) out.push_back(Element::scalar(i));
      break;
    case MonoidKind::Integers:
      for (int i = -level; i <= level; ++i) out.push_back(Element::scalar(i));
      break;
    case MonoidKind::NonNegVectors: {
      std::vector<std::int64_t> v(spec.parameter(), 0);
      std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == v.size()) {
          out.emplace_back(v);
          return;
        }
        for (int x = 0; x <= level; ++x) {
          v[pos] = x;
          rec(pos + 1);
        }
      };
      rec(0);
      break;
    }
    case MonoidKind::FreeMonoid: {
      std::vector<std::vector<std::int64_t>> layer{{}};
      for (int len = 0; len <= level; ++len) {
        for (const auto& w : layer) out.emplace_back(w);
        std::vector<std::vector<std::int64_t>> next;
        for (const auto& w : layer)
          for (int g = 1; g <= spec.parameter(); ++g) {
            auto x = w;
            x.push_back(g);
            next.push_back(x);
          }
        layer = std::move(next);
      }
      break;
    }
  }
  return out;
}

Dense multiplication_matrix(const MonoidSpec& spec, const Sparse& phi, const std::vector<Element>& domain,
                            const std::vector<Element>& codomain, bool left) {
  Dense m(codomain.size(), domain.size());
  for (std::size_t j = 0; j < domain.size(); ++j) {
    for (const auto& [s, c] : phi) {
      const Element u = left ? product(spec, s, domain[j]) : product(spec, domain[j], s);
      const auto it = std::find(codomain.begin(), codomain.end(), u);
      if (it == codomain.end()) throw std::runtime_error("oracle: image outside codomain");
      m(static_cast<std::size_t>(it - codomain.begin()), j) += c;
    }
  }
  return m;
}

double one_plus_z_norm(int level) { return 2.0 * std::cos(std::numbers::pi / (2.0 * level + 4.0)); }

}  // namespace oracle
