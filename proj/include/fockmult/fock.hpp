#pragma once

#include <complex>
#include <limits>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fockmult/monoid.hpp"

namespace fockmult {

using Complex = std::complex<double>;

/// Finitely supported vector of the truncated Fock space l^2(S) over a
/// window. Coefficients are keyed by window position; exact zeros are never
/// stored.
class FockVector {
 public:
  explicit FockVector(WindowPtr w);

  const WindowPtr& window() const noexcept { return window_; }
  const MonoidSpec& spec() const noexcept { return window_->spec(); }

  const std::map<std::size_t, Complex>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Complex coeff(std::size_t index) const;
  /// Coefficient at an element; 0 if the element is absent or outside the window.
  Complex at(const Element& e) const;

  void set(std::size_t index, Complex value);
  void add(std::size_t index, Complex value);
  void set(const Element& e, Complex value) { set(window_->require_index(e), value); }
  void add(const Element& e, Complex value) { add(window_->require_index(e), value); }

  /// Largest grade in the support; 0 for the zero vector.
  int degree() const;
  double norm() const;

  std::vector<Complex> dense() const;
  static FockVector from_dense(WindowPtr w, std::span<const Complex> values);

  FockVector& operator+=(const FockVector& other);
  FockVector& operator*=(Complex s);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b);
  friend FockVector operator*(Complex s, FockVector a) { return a *= s; }

  bool operator==(const FockVector& other) const;

 private:
  WindowPtr window_;
  std::map<std::size_t, Complex> terms_;
};

/// Polynomials are Fock vectors whose support is finite by construction; the
/// degree is FockVector::degree().
using Polynomial = FockVector;

FockVector delta(const MonoidSpec& spec, const Element& s, WindowPtr w);

/// Linear in the first argument, conjugate-linear in the second.
Complex inner(const FockVector& f, const FockVector& g);

/// (p*f)(u) = sum over s*r = u of p(s) f(r). Throws TruncationOverflow if a
/// product falls outside `target`.
FockVector convolve_left(const Polynomial& p, const FockVector& f, WindowPtr target);
/// (f*p)(u) = sum over r*s = u of f(r) p(s).
FockVector convolve_right(const FockVector& f, const Polynomial& p, WindowPtr target);

/// Anti-linear U: coefficient c at g becomes conj(c) at g^{-1}. Group specs only.
FockVector apply_U(const MonoidSpec& spec, const FockVector& f);

/// The same vector expressed on another window of the same spec.
FockVector rebase(const FockVector& f, WindowPtr target);

/// Smallest canonical window holding every product s*r with s in supp(a), r in supp(b).
WindowPtr product_window(const FockVector& a, const FockVector& b);

/// Largest absolute coefficient difference, aligned by element so the
/// windows may differ.
double max_abs_difference(const FockVector& a, const FockVector& b);

/// "[{\"elem\":...,\"re\":...,\"im\":...}, ...]" in window order, 17 significant digits.
std::string format_polynomial(const Polynomial& p);
Polynomial parse_polynomial(const MonoidSpec& spec, std::string_view text);

/// Gaussian complex coefficients on up to `max_terms` random positions of `w`
/// (at least one); with the default every position is drawn once.
Polynomial random_polynomial(WindowPtr w, std::mt19937_64& rng,
                             std::size_t max_terms = std::numeric_limits<std::size_t>::max());

}  // namespace fockmult
