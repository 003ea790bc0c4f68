#include "fockmult/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <random>

#include "json.hpp"

namespace fockmult {

namespace {

double l1_norm(const Polynomial& p) {
  double s = 0.0;
  for (const auto& [_, c] : p.terms()) s += std::abs(c);
  return s;
}

void require_same_spec(const MultiplierPair& p, const MultiplierPair& q) {
  if (!(p.spec() == q.spec())) throw Error(ErrorCode::IncompatibleWindow, "pairs live over different monoids");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MultiplierPair make_multiplier_pair(const MonoidSpec& spec, const Polynomial& phi, int level) {
  if (!(spec == phi.spec())) throw Error(ErrorCode::IncompatibleWindow, "symbol belongs to another monoid");
  if (level < 0) throw Error(ErrorCode::InvalidArgument, "level must be non-negative");
  WindowPtr dom = window(spec, level);
  Polynomial symbol = rebase(phi, dom);  // throws OutOfWindow if supp(phi) is too deep
  OperatorMatrix left = left_mult_matrix(spec, symbol, dom);
  OperatorMatrix right = right_mult_matrix(spec, symbol, dom);
  return MultiplierPair(std::move(symbol), dom->level(), std::move(left), std::move(right));
}

MultiplierPair at_level(const MultiplierPair& p, int level) {
  return make_multiplier_pair(p.spec(), p.symbol(), level);
}

NormEstimate pair_norm(const MultiplierPair& p, const NormOptions& options) {
  const NormEstimate l = operator_norm(p.left(), options);
  if (p.left().codomain()->same_as(*p.right().codomain()) && p.left().entries() == p.right().entries()) {
    return l;  // abelian collapse: identical matrices
  }
  const NormEstimate r = operator_norm(p.right(), options);
  return NormEstimate{std::max(l.value, r.value), l.iterations + r.iterations, l.converged && r.converged};
}

MultiplierPair pair_add(const MultiplierPair& p, const MultiplierPair& q) {
  require_same_spec(p, q);
  const int level = std::max(p.level(), q.level());
  Polynomial sum = rebase(p.symbol(), window(p.spec(), level));
  sum += q.symbol();
  return make_multiplier_pair(p.spec(), sum, level);
}

MultiplierPair pair_scale(const MultiplierPair& p, Complex lambda) {
  return make_multiplier_pair(p.spec(), lambda * p.symbol(), p.level());
}

MultiplierPair pair_product(const MultiplierPair& p, const MultiplierPair& q) {
  require_same_spec(p, q);
  const MonoidSpec& spec = p.spec();
  const Polynomial& a = p.symbol();
  const Polynomial& b = q.symbol();
  const Polynomial product = convolve_left(a, b, product_window(a, b));
  const int level = std::max({p.level(), q.level(), product.degree()});

  WindowPtr dom = window(spec, level);
  const OperatorMatrix lq = left_mult_matrix(spec, b, dom);
  const OperatorMatrix lp = left_mult_matrix(spec, a, lq.codomain());
  const OperatorMatrix left = multiply(lp, lq);
  const OperatorMatrix rp = right_mult_matrix(spec, a, dom);
  const OperatorMatrix rq = right_mult_matrix(spec, b, rp.codomain());
  const OperatorMatrix right = multiply(rq, rp);

  MultiplierPair out = make_multiplier_pair(spec, product, level);
  const double tol = 1e-12 * std::max(1.0, l1_norm(a) * l1_norm(b));
  if (max_abs_difference(out.left(), left) > tol || max_abs_difference(out.right(), right) > tol) {
    throw Error(ErrorCode::InvariantViolation, "(L1 L2, R2 R1) disagrees with the product symbol's pair");
  }
  return out;
}

int rebased_level(const MultiplierPair& p, const MultiplierPair& q) {
  const Polynomial product = convolve_left(p.symbol(), q.symbol(), product_window(p.symbol(), q.symbol()));
  const int level = std::max({p.level(), q.level(), product.degree()});
  return level + std::max(p.symbol().degree(), q.symbol().degree());
}

MultiplierPair pair_adjoint(const MultiplierPair& p) {
  const MonoidSpec& spec = p.spec();
  if (!spec.is_group()) throw Error(ErrorCode::UnsupportedOperation, "adjoint pairs need a group, got " + spec.label());
  MultiplierPair out = make_multiplier_pair(spec, apply_U(spec, p.symbol()), p.level());
  if (p.left().is_square()) {
    const double tol = 1e-15 * std::max(1.0, l1_norm(p.symbol()));
    if (max_abs_difference(out.left(), sharp_of(spec, p.right())) > tol ||
        max_abs_difference(out.right(), sharp_of(spec, p.left())) > tol) {
      throw Error(ErrorCode::InvariantViolation, "(R#, L#) disagrees with the pair of U(phi)");
    }
  }
  return out;
}

IntertwineVerdict verify_intertwine(const OperatorMatrix& left, const OperatorMatrix& right, std::size_t trials,
                                    std::uint64_t seed, double tol) {
  if (!left.domain()->same_as(*right.domain())) {
    throw Error(ErrorCode::IncompatibleWindow, "L and R must act on the same window");
  }
  const WindowPtr& dom = left.domain();
  const MonoidSpec& spec = dom->spec();
  std::mt19937_64 rng(seed);

  IntertwineVerdict verdict;
  for (std::size_t t = 0; t < std::max<std::size_t>(trials, 1); ++t) {
    Polynomial f = t == 0 ? delta(spec, identity(spec), dom) : random_polynomial(dom, rng, 6);
    Polynomial g = t == 0 ? delta(spec, identity(spec), dom) : random_polynomial(dom, rng, 6);
    const FockVector lg = left.apply(g);
    const FockVector rf = right.apply(f);
    const FockVector lhs = convolve_left(f, lg, product_window(f, lg));
    const FockVector rhs = convolve_left(rf, g, product_window(rf, g));
    const double residual = max_abs_difference(lhs, rhs);
    ++verdict.trials;
    if (residual > verdict.max_residual || !verdict.witness) {
      verdict.max_residual = std::max(verdict.max_residual, residual);
      verdict.witness = IntertwineWitness{std::move(f), std::move(g)};
    }
  }
  verdict.pass = verdict.max_residual <= tol;
  return verdict;
}

IntertwineVerdict verify_intertwine(const MultiplierPair& p, std::size_t trials, std::uint64_t seed, double tol) {
  const double scale = std::max(1.0, l1_norm(p.symbol()));
  return verify_intertwine(p.left(), p.right(), trials, seed, tol * scale);
}

// ---------------------------------------------------------------------------
// Sweeps

bool NormReport::is_monotone(double slack) const {
  for (std::size_t i = 1; i < norms.size(); ++i) {
    if (norms[i] < norms[i - 1] - slack) return false;
  }
  return true;
}

std::string NormReport::to_json() const {
  nlohmann::json j;
  j["levels"] = levels;
  j["norms"] = norms;
  j["converged"] = converged;
  return j.dump();
}

std::string NormReport::to_csv() const {
  std::string out = "level,norm\n";
  for (std::size_t i = 0; i < levels.size(); ++i) out += std::to_string(levels[i]) + "," + format_double(norms[i]) + "\n";
  return out;
}

NormReport finfty_sweep(const MonoidSpec& spec, const Polynomial& phi, const std::vector<int>& levels, double tol,
                        const NormOptions& options) {
  if (levels.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one level");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] <= levels[i - 1]) throw Error(ErrorCode::InvalidArgument, "sweep levels must be strictly increasing");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "sweep tolerance must be positive");
  for (int level : levels) {
    // fail fast on capacity before launching anything
    if (window_size(spec, level) > spec.capacity()) window(spec, level);
  }

  std::vector<std::future<NormEstimate>> pending;
  pending.reserve(levels.size());
  for (int level : levels) {
    pending.push_back(std::async(std::launch::async, [&spec, &phi, &options, level] {
      return pair_norm(make_multiplier_pair(spec, phi, level), options);
    }));
  }

  NormReport report;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const NormEstimate est = pending[i].get();
    report.levels.push_back(levels[i]);
    report.norms.push_back(est.value);
    report.iterations.push_back(est.iterations);
    report.kernel_converged = report.kernel_converged && est.converged;
  }
  const std::size_t n = report.norms.size();
  report.converged = n >= 2 && std::abs(report.norms[n - 1] - report.norms[n - 2]) <= tol;
  report.extrapolate = report.norms.back();
  return report;
}

// ---------------------------------------------------------------------------
// Identifications

CirculantVerdict circulant_of(const MonoidSpec& spec, const Polynomial& phi, double tol) {
  if (spec.kind() != MonoidKind::Cyclic) {
    throw Error(ErrorCode::UnsupportedOperation, "circulant identification needs a cyclic group, got " + spec.label());
  }
  const std::size_t n = static_cast<std::size_t>(spec.parameter());
  OperatorMatrix m = left_mult_matrix(spec, phi, window(spec, 0));
  CirculantVerdict v{m, false, 0.0, {}, false};
  const SparseMatrix& a = m.entries();
  for (std::size_t k = 0; k < n; ++k) v.first_column.push_back(a.entry(k, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      v.max_deviation = std::max(v.max_deviation, std::abs(a.entry(i, j) - v.first_column[(i + n - j) % n]));
  v.symbol_roundtrip = true;
  for (std::size_t k = 0; k < n; ++k) {
    v.symbol_roundtrip = v.symbol_roundtrip && v.first_column[k] == phi.at(Element::scalar(static_cast<std::int64_t>(k)));
  }
  v.circulant = v.max_deviation <= tol;
  return v;
}

std::size_t default_hardy_grid(const MonoidSpec& spec) {
  if (spec.kind() == MonoidKind::NonNegVectors) return spec.parameter() >= 3 ? 256 : 1024;
  return std::size_t{1} << 16;
}

double hardy_norm_grid(const MonoidSpec& spec, const Polynomial& phi, std::size_t gridsize) {
  int dims = 1;
  switch (spec.kind()) {
    case MonoidKind::NonNegIntegers:
    case MonoidKind::Integers: break;
    case MonoidKind::NonNegVectors:
      dims = spec.parameter();
      if (dims > 3) throw Error(ErrorCode::UnsupportedOperation, "torus grid evaluation is capped at d <= 3");
      break;
    default:
      throw Error(ErrorCode::UnsupportedOperation, "torus grid evaluation needs Z, Z_+ or Z_+^d, got " + spec.label());
  }
  if (!(spec == phi.spec())) throw Error(ErrorCode::IncompatibleWindow, "symbol belongs to another monoid");
  const auto degree = static_cast<std::size_t>(phi.degree());
  if (gridsize < 2 * (degree + 1)) {
    throw Error(ErrorCode::InvalidArgument, "grid size " + std::to_string(gridsize) + " is below 2*(degree+1)");
  }

  const auto g = static_cast<std::int64_t>(gridsize);
  std::vector<Complex> roots(gridsize);
  for (std::size_t t = 0; t < gridsize; ++t) {
    roots[t] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(gridsize));
  }
  struct Term {
    std::vector<std::int64_t> exponent;  // reduced mod g
    Complex coeff;
  };
  std::vector<Term> terms;
  for (const auto& [idx, c] : phi.terms()) {
    std::vector<std::int64_t> e = (*phi.window())[idx].payload();
    for (auto& x : e) x = ((x % g) + g) % g;
    terms.push_back({std::move(e), c});
  }

  double best = 0.0;
  std::vector<std::int64_t> point(dims, 0);
  std::size_t total = 1;
  for (int d = 0; d < dims; ++d) total *= gridsize;
  for (std::size_t n = 0; n < total; ++n) {
    Complex sum{};
    for (const Term& t : terms) {
      std::int64_t phase = 0;
      for (int d = 0; d < dims; ++d) phase += t.exponent[d] * point[d];
      sum += t.coeff * roots[static_cast<std::size_t>(phase % g)];
    }
    best = std::max(best, std::abs(sum));
    for (int d = dims - 1; d >= 0; --d) {
      if (++point[d] < g) break;
      point[d] = 0;
    }
  }
  return best;
}

NormEstimate popescu_norm(const MonoidSpec& spec, const Polynomial& phi, int depth, const NormOptions& options) {
  if (spec.kind() != MonoidKind::FreeMonoid) {
    throw Error(ErrorCode::UnsupportedOperation, "noncommutative Hardy norms need a free monoid, got " + spec.label());
  }
  return pair_norm(make_multiplier_pair(spec, phi, depth), options);
}

}  // namespace fockmult
