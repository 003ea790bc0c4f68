#pragma once

#include <string>
#include <vector>

#include "fockmult/fock.hpp"
#include "fockmult/monoid.hpp"
#include "fockmult/norm.hpp"
#include "fockmult/sparse.hpp"

namespace fockmult {

/// A linear operator between two windows of the same monoid. Column j is the
/// image of delta at domain[j]; for the multiplication operators built below
/// the codomain is enlarged until it holds every image exactly, so the matrix
/// is the true restriction of the operator to span(domain).
class OperatorMatrix {
 public:
  OperatorMatrix(WindowPtr domain, WindowPtr codomain, SparseMatrix entries);

  const WindowPtr& domain() const noexcept { return domain_; }
  const WindowPtr& codomain() const noexcept { return codomain_; }
  const SparseMatrix& entries() const noexcept { return entries_; }
  const MonoidSpec& spec() const noexcept { return domain_->spec(); }

  Complex entry(const Element& row, const Element& col) const;
  FockVector apply(const FockVector& f) const;

  bool is_square() const noexcept { return domain_->same_as(*codomain_); }

 private:
  WindowPtr domain_;
  WindowPtr codomain_;
  SparseMatrix entries_;
};

/// The anti-linear U on a group window, stored as the inversion permutation.
/// It acts as "permute, then conjugate coefficients" and has no complex
/// matrix.
class AntiLinearU {
 public:
  AntiLinearU(WindowPtr w, std::vector<std::size_t> permutation);

  const WindowPtr& window() const noexcept { return window_; }
  const std::vector<std::size_t>& permutation() const noexcept { return permutation_; }
  FockVector apply(const FockVector& f) const;

 private:
  WindowPtr window_;
  std::vector<std::size_t> permutation_;
};

/// Left regular isometry V_s: delta_r -> delta_{s r}.
OperatorMatrix lrr_matrix(const MonoidSpec& spec, const Element& s, WindowPtr domain);
/// L_phi: f -> phi * f, entry (u, r) = sum over s with s r = u of phi(s).
OperatorMatrix left_mult_matrix(const MonoidSpec& spec, const Polynomial& phi, WindowPtr domain);
/// R_phi: f -> f * phi.
OperatorMatrix right_mult_matrix(const MonoidSpec& spec, const Polynomial& phi, WindowPtr domain);

AntiLinearU u_action(const MonoidSpec& spec, WindowPtr w);
/// Word-reversal permutation W on a free-monoid window.
OperatorMatrix flip_matrix(const MonoidSpec& spec, WindowPtr w);
/// A# = U A U written as the linear matrix P conj(A) P, P the inversion permutation.
OperatorMatrix sharp_of(const MonoidSpec& spec, const OperatorMatrix& a);

OperatorMatrix adjoint(const OperatorMatrix& a);
/// A o B; requires B's codomain to be the same window as A's domain.
OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix identity_matrix(WindowPtr w);

/// Re-expresses `a` with a larger codomain window (rows re-indexed, new rows zero).
OperatorMatrix extend_codomain(const OperatorMatrix& a, WindowPtr codomain);
/// Largest entrywise difference; domains must match, rows are aligned by element.
double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b);

NormEstimate operator_norm(const OperatorMatrix& a, const NormOptions& options = {});

/// Dense CSV dump: "# domain=<spec>/<level> codomain=<spec>/<level>", then one
/// line per codomain element with entries written as re+imj.
std::string format_matrix_csv(const OperatorMatrix& a);
std::string format_complex(Complex z);

}  // namespace fockmult
