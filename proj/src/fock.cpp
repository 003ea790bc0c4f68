#include "fockmult/fock.hpp"

#include <algorithm>
#include <cmath>

namespace fockmult {

namespace {

void require_same_spec(const MonoidSpec& a, const MonoidSpec& b, const char* op) {
  if (!(a == b)) {
    throw Error(ErrorCode::IncompatibleWindow,
                std::string(op) + ": operands live over different monoids (" + a.label() + " vs " + b.label() + ")");
  }
}

template <typename Product>
FockVector convolve(const FockVector& a, const FockVector& b, const WindowPtr& target, Product product,
                    const char* op) {
  require_same_spec(a.spec(), b.spec(), op);
  require_same_spec(a.spec(), target->spec(), op);
  FockVector out(target);
  const Window& wa = *a.window();
  const Window& wb = *b.window();
  for (const auto& [i, x] : a.terms()) {
    for (const auto& [j, y] : b.terms()) {
      const Element u = product(wa[i], wb[j]);
      const auto idx = target->index_of(u);
      if (!idx) {
        throw Error(ErrorCode::TruncationOverflow,
                    std::string(op) + ": product " + describe_element(a.spec(), u) + " escapes target window " +
                        a.spec().label() + "/" + std::to_string(target->level()));
      }
      out.add(*idx, x * y);
    }
  }
  return out;
}

}  // namespace

FockVector::FockVector(WindowPtr w) : window_(std::move(w)) {
  if (!window_) throw Error(ErrorCode::InvalidArgument, "FockVector needs a window");
}

Complex FockVector::coeff(std::size_t index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Complex{} : it->second;
}

Complex FockVector::at(const Element& e) const {
  const auto idx = window_->index_of(e);
  return idx ? coeff(*idx) : Complex{};
}

void FockVector::set(std::size_t index, Complex value) {
  if (index >= window_->size()) throw Error(ErrorCode::OutOfWindow, "index past the end of the window");
  if (value == Complex{}) {
    terms_.erase(index);
  } else {
    terms_[index] = value;
  }
}

void FockVector::add(std::size_t index, Complex value) { set(index, coeff(index) + value); }

int FockVector::degree() const {
  int d = 0;
  for (const auto& [idx, _] : terms_) d = std::max(d, grade(spec(), (*window_)[idx]));
  return d;
}

double FockVector::norm() const {
  double sum = 0.0;
  for (const auto& [_, c] : terms_) sum += std::norm(c);
  return std::sqrt(sum);
}

std::vector<Complex> FockVector::dense() const {
  std::vector<Complex> out(window_->size());
  for (const auto& [idx, c] : terms_) out[idx] = c;
  return out;
}

FockVector FockVector::from_dense(WindowPtr w, std::span<const Complex> values) {
  if (values.size() != w->size()) throw Error(ErrorCode::Shape, "dense vector length does not match the window");
  FockVector f(std::move(w));
  for (std::size_t i = 0; i < values.size(); ++i) f.set(i, values[i]);
  return f;
}

FockVector& FockVector::operator+=(const FockVector& other) {
  require_same_spec(spec(), other.spec(), "add");
  for (const auto& [idx, c] : other.terms_) add(window_->require_index((*other.window_)[idx]), c);
  return *this;
}

FockVector& FockVector::operator*=(Complex s) {
  if (s == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    it = it->second == Complex{} ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

FockVector operator-(FockVector a, const FockVector& b) {
  FockVector neg = b;
  neg *= Complex(-1.0);
  return a += neg;
}

bool FockVector::operator==(const FockVector& other) const {
  return window_->same_as(*other.window_) && terms_ == other.terms_;
}

FockVector delta(const MonoidSpec& spec, const Element& s, WindowPtr w) {
  require_same_spec(spec, w->spec(), "delta");
  validate(spec, s);
  FockVector f(std::move(w));
  f.set(f.window()->require_index(s), Complex(1.0));
  return f;
}

Complex inner(const FockVector& f, const FockVector& g) {
  if (!f.window()->same_as(*g.window())) {
    throw Error(ErrorCode::IncompatibleWindow, "inner product of vectors on different windows");
  }
  Complex sum{};
  for (const auto& [idx, c] : f.terms()) sum += c * std::conj(g.coeff(idx));
  return sum;
}

FockVector convolve_left(const Polynomial& p, const FockVector& f, WindowPtr target) {
  const MonoidSpec& spec = p.spec();
  return convolve(
      p, f, target, [&](const Element& s, const Element& r) { return compose(spec, s, r); }, "convolve_left");
}

FockVector convolve_right(const FockVector& f, const Polynomial& p, WindowPtr target) {
  const MonoidSpec& spec = p.spec();
  return convolve(
      f, p, target, [&](const Element& r, const Element& s) { return compose(spec, r, s); }, "convolve_right");
}

FockVector apply_U(const MonoidSpec& spec, const FockVector& f) {
  require_same_spec(spec, f.spec(), "apply_U");
  if (!spec.is_group()) throw Error(ErrorCode::UnsupportedOperation, "U is only defined on groups");
  FockVector out(f.window());
  const Window& w = *f.window();
  for (const auto& [idx, c] : f.terms()) out.set(w.require_index(invert(spec, w[idx])), std::conj(c));
  return out;
}

FockVector rebase(const FockVector& f, WindowPtr target) {
  require_same_spec(f.spec(), target->spec(), "rebase");
  FockVector out(target);
  for (const auto& [idx, c] : f.terms()) out.set(target->require_index((*f.window())[idx]), c);
  return out;
}

WindowPtr product_window(const FockVector& a, const FockVector& b) {
  require_same_spec(a.spec(), b.spec(), "product_window");
  // grade is subadditive on every supported family
  return window(a.spec(), a.degree() + b.degree());
}

double max_abs_difference(const FockVector& a, const FockVector& b) {
  require_same_spec(a.spec(), b.spec(), "max_abs_difference");
  double worst = 0.0;
  for (const auto& [idx, c] : a.terms()) worst = std::max(worst, std::abs(c - b.at((*a.window())[idx])));
  for (const auto& [idx, c] : b.terms()) worst = std::max(worst, std::abs(c - a.at((*b.window())[idx])));
  return worst;
}

Polynomial random_polynomial(WindowPtr w, std::mt19937_64& rng, std::size_t max_terms) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Polynomial p(w);
  if (max_terms >= w->size()) {
    for (std::size_t i = 0; i < w->size(); ++i) p.set(i, Complex(gauss(rng), gauss(rng)));
    return p;
  }
  std::uniform_int_distribution<std::size_t> pick(0, w->size() - 1);
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, max_terms));
  const std::size_t n = count(rng);
  for (std::size_t t = 0; t < n; ++t) p.add(pick(rng), Complex(gauss(rng), gauss(rng)));
  return p;
}

}  // namespace fockmult
