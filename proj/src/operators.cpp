#include "fockmult/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace fockmult {

namespace {

enum class Side { Left, Right };

void require_spec(const MonoidSpec& spec, const Window& w, const char* op) {
  if (!(spec == w.spec())) {
    throw Error(ErrorCode::IncompatibleWindow, std::string(op) + ": window belongs to " + w.spec().label() +
                                                   ", not " + spec.label());
  }
}

std::string window_label(const Window& w) { return w.spec().label() + "/" + std::to_string(w.level()); }

OperatorMatrix build_multiplication(const MonoidSpec& spec, const Polynomial& phi, WindowPtr domain, Side side,
                                    const char* op) {
  require_spec(spec, *domain, op);
  require_spec(spec, *phi.window(), op);

  const Window& dom = *domain;
  const Window& sym = *phi.window();
  auto product = [&](const Element& s, const Element& r) {
    return side == Side::Left ? compose(spec, s, r) : compose(spec, r, s);
  };

  std::vector<std::vector<std::pair<Element, Complex>>> images(dom.size());
  int level = 0;
  for (std::size_t j = 0; j < dom.size(); ++j) {
    images[j].reserve(phi.terms().size());
    for (const auto& [idx, c] : phi.terms()) {
      Element u = product(sym[idx], dom[j]);
      level = std::max(level, grade(spec, u));
      images[j].emplace_back(std::move(u), c);
    }
  }

  WindowPtr codomain = window(spec, level);
  std::vector<SparseMatrix::Column> columns(dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j) {
    columns[j].reserve(images[j].size());
    for (const auto& [u, c] : images[j]) columns[j].emplace_back(codomain->require_index(u), c);
  }
  auto entries = SparseMatrix::from_columns(codomain->size(), std::move(columns));
  return OperatorMatrix(std::move(domain), std::move(codomain), std::move(entries));
}

}  // namespace

OperatorMatrix::OperatorMatrix(WindowPtr domain, WindowPtr codomain, SparseMatrix entries)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(entries)) {
  if (!domain_ || !codomain_) throw Error(ErrorCode::InvalidArgument, "operator windows must be set");
  if (!(domain_->spec() == codomain_->spec())) {
    throw Error(ErrorCode::IncompatibleWindow, "domain and codomain belong to different monoids");
  }
  if (entries_.rows() != codomain_->size() || entries_.cols() != domain_->size()) {
    throw Error(ErrorCode::Shape, "matrix shape does not match its windows");
  }
}

Complex OperatorMatrix::entry(const Element& row, const Element& col) const {
  return entries_.entry(codomain_->require_index(row), domain_->require_index(col));
}

FockVector OperatorMatrix::apply(const FockVector& f) const {
  if (!f.window()->same_as(*domain_)) {
    throw Error(ErrorCode::IncompatibleWindow, "vector window " + window_label(*f.window()) +
                                                   " is not the operator domain " + window_label(*domain_));
  }
  const std::vector<Complex> x = f.dense();
  std::vector<Complex> y(codomain_->size());
  entries_.apply(x, y);
  return FockVector::from_dense(codomain_, y);
}

AntiLinearU::AntiLinearU(WindowPtr w, std::vector<std::size_t> permutation)
    : window_(std::move(w)), permutation_(std::move(permutation)) {
  if (permutation_.size() != window_->size()) throw Error(ErrorCode::Shape, "permutation length mismatch");
  for (std::size_t i = 0; i < permutation_.size(); ++i) {
    if (permutation_[i] >= permutation_.size() || permutation_[permutation_[i]] != i) {
      throw Error(ErrorCode::InvariantViolation, "U permutation is not an involution");
    }
  }
}

FockVector AntiLinearU::apply(const FockVector& f) const {
  if (!f.window()->same_as(*window_)) throw Error(ErrorCode::IncompatibleWindow, "U applied off its window");
  FockVector out(window_);
  for (const auto& [idx, c] : f.terms()) out.set(permutation_[idx], std::conj(c));
  return out;
}

OperatorMatrix lrr_matrix(const MonoidSpec& spec, const Element& s, WindowPtr domain) {
  validate(spec, s);
  return left_mult_matrix(spec, delta(spec, s, window(spec, grade(spec, s))), std::move(domain));
}

OperatorMatrix left_mult_matrix(const MonoidSpec& spec, const Polynomial& phi, WindowPtr domain) {
  return build_multiplication(spec, phi, std::move(domain), Side::Left, "left_mult_matrix");
}

OperatorMatrix right_mult_matrix(const MonoidSpec& spec, const Polynomial& phi, WindowPtr domain) {
  return build_multiplication(spec, phi, std::move(domain), Side::Right, "right_mult_matrix");
}

AntiLinearU u_action(const MonoidSpec& spec, WindowPtr w) {
  require_spec(spec, *w, "u_action");
  if (!spec.is_group()) throw Error(ErrorCode::UnsupportedOperation, "U needs a group, got " + spec.label());
  std::vector<std::size_t> perm(w->size());
  for (std::size_t i = 0; i < w->size(); ++i) perm[i] = w->require_index(invert(spec, (*w)[i]));
  return AntiLinearU(std::move(w), std::move(perm));
}

OperatorMatrix flip_matrix(const MonoidSpec& spec, WindowPtr w) {
  require_spec(spec, *w, "flip_matrix");
  if (spec.kind() != MonoidKind::FreeMonoid) {
    throw Error(ErrorCode::UnsupportedOperation, "the flip operator needs a free monoid, got " + spec.label());
  }
  std::vector<SparseMatrix::Column> columns(w->size());
  for (std::size_t j = 0; j < w->size(); ++j) {
    columns[j].emplace_back(w->require_index(reverse_word(spec, (*w)[j])), Complex(1.0));
  }
  auto entries = SparseMatrix::from_columns(w->size(), std::move(columns));
  return OperatorMatrix(w, w, std::move(entries));
}

OperatorMatrix sharp_of(const MonoidSpec& spec, const OperatorMatrix& a) {
  if (!spec.is_group()) throw Error(ErrorCode::UnsupportedOperation, "sharp needs a group, got " + spec.label());
  if (!a.is_square()) throw Error(ErrorCode::UnsupportedOperation, "sharp needs a square operator on one window");
  const AntiLinearU u = u_action(spec, a.domain());
  const auto& p = u.permutation();
  const SparseMatrix& m = a.entries();
  // entry (i, j) of P conj(A) P is conj(A(p(i), p(j)))
  std::vector<SparseMatrix::Column> columns(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto rows = m.column_rows(p[j]);
    const auto vals = m.column_values(p[j]);
    for (std::size_t k = 0; k < rows.size(); ++k) columns[j].emplace_back(p[rows[k]], std::conj(vals[k]));
  }
  return OperatorMatrix(a.domain(), a.codomain(), SparseMatrix::from_columns(m.rows(), std::move(columns)));
}

OperatorMatrix adjoint(const OperatorMatrix& a) {
  return OperatorMatrix(a.codomain(), a.domain(), a.entries().adjoint());
}

OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!b.codomain()->same_as(*a.domain())) {
    throw Error(ErrorCode::IncompatibleWindow, "cannot compose: codomain " + window_label(*b.codomain()) +
                                                   " is not domain " + window_label(*a.domain()));
  }
  return OperatorMatrix(b.domain(), a.codomain(), a.entries() * b.entries());
}

OperatorMatrix identity_matrix(WindowPtr w) {
  auto entries = SparseMatrix::identity(w->size());
  return OperatorMatrix(w, w, std::move(entries));
}

OperatorMatrix extend_codomain(const OperatorMatrix& a, WindowPtr codomain) {
  require_spec(a.spec(), *codomain, "extend_codomain");
  const SparseMatrix& m = a.entries();
  std::vector<SparseMatrix::Column> columns(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto rows = m.column_rows(j);
    const auto vals = m.column_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      columns[j].emplace_back(codomain->require_index((*a.codomain())[rows[k]]), vals[k]);
    }
  }
  auto entries = SparseMatrix::from_columns(codomain->size(), std::move(columns));
  return OperatorMatrix(a.domain(), std::move(codomain), std::move(entries));
}

double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!a.domain()->same_as(*b.domain())) {
    throw Error(ErrorCode::IncompatibleWindow, "operators have different domains");
  }
  auto lookup = [](const OperatorMatrix& m, const Element& row, std::size_t col) {
    const auto idx = m.codomain()->index_of(row);
    return idx ? m.entries().entry(*idx, col) : Complex{};
  };
  double worst = 0.0;
  for (std::size_t j = 0; j < a.domain()->size(); ++j) {
    for (const auto* pair : {&a, &b}) {
      const OperatorMatrix& self = *pair;
      const OperatorMatrix& other = pair == &a ? b : a;
      const auto rows = self.entries().column_rows(j);
      const auto vals = self.entries().column_values(j);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const Element& row = (*self.codomain())[rows[k]];
        worst = std::max(worst, std::abs(vals[k] - lookup(other, row, j)));
      }
    }
  }
  return worst;
}

NormEstimate operator_norm(const OperatorMatrix& a, const NormOptions& options) {
  return spectral_norm(a.entries(), options);
}

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

std::string format_matrix_csv(const OperatorMatrix& a) {
  std::string out = "# domain=" + window_label(*a.domain()) + " codomain=" + window_label(*a.codomain()) + "\n";
  const std::vector<Complex> dense = a.entries().to_dense();
  const std::size_t cols = a.entries().cols();
  for (std::size_t i = 0; i < a.entries().rows(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (j) out += ',';
      out += format_complex(dense[i * cols + j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace fockmult
