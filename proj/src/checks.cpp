#include "fockmult/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace fockmult {

namespace {

void require_group(const MonoidSpec& spec, const char* check) {
  if (!spec.is_group()) {
    throw Error(ErrorCode::UnsupportedOperation, std::string(check) + " needs a group, got " + spec.label());
  }
}

void require_finite_group(const MonoidSpec& spec, const char* check) {
  require_group(spec, check);
  if (!spec.is_finite()) {
    throw Error(ErrorCode::UnsupportedOperation,
                std::string(check) + " is restricted to finite groups, where the operators are not truncated; got " +
                    spec.label());
  }
}

void record(CheckVerdict& v, double residual, double tol, const std::function<Json()>& witness) {
  ++v.trials;
  if (residual > tol && (v.pass || residual > v.max_residual)) v.witness = witness();
  v.max_residual = std::max(v.max_residual, residual);
  if (residual > tol) v.pass = false;
}

}  // namespace

Json CheckVerdict::to_json() const {
  return Json{{"pass", pass},
              {"max_residual", max_residual},
              {"trials", trials},
              {"kernel_converged", kernel_converged},
              {"witness", witness}};
}

CheckVerdict check_cstar(const MonoidSpec& spec, const CheckOptions& options) {
  require_finite_group(spec, "cstar");
  std::mt19937_64 rng(options.seed);
  const WindowPtr w = window(spec, 0);
  CheckVerdict v;
  for (std::size_t t = 0; t < options.trials; ++t) {
    const Polynomial phi = random_polynomial(w, rng);
    const MultiplierPair p = make_multiplier_pair(spec, phi, 0);
    const NormEstimate np = pair_norm(p, options.norm);
    const NormEstimate npp = pair_norm(pair_product(pair_adjoint(p), p), options.norm);
    v.kernel_converged = v.kernel_converged && np.converged && npp.converged;
    const double sq = np.value * np.value;
    const double residual = std::abs(npp.value - sq) / std::max(1.0, sq);
    record(v, residual, options.tol, [&] {
      return Json{{"symbol", polynomial_to_json(phi)}, {"norm_pstar_p", npp.value}, {"norm_p_squared", sq}};
    });
  }
  return v;
}

CheckVerdict check_sharp_adjoint(const MonoidSpec& spec, const CheckOptions& options) {
  require_finite_group(spec, "sharp/adjoint");
  std::mt19937_64 rng(options.seed);
  const WindowPtr w = window(spec, 0);
  CheckVerdict v;
  for (std::size_t t = 0; t < options.trials; ++t) {
    const Polynomial phi = random_polynomial(w, rng);
    const MultiplierPair p = make_multiplier_pair(spec, phi, 0);
    const double residual = std::max(max_abs_difference(sharp_of(spec, p.right()), adjoint(p.left())),
                                     max_abs_difference(sharp_of(spec, p.left()), adjoint(p.right())));
    record(v, residual, options.tol, [&] { return Json{{"symbol", polynomial_to_json(phi)}}; });
  }
  return v;
}

CheckVerdict check_u_laws(const MonoidSpec& spec, const CheckOptions& options) {
  require_group(spec, "U laws");
  std::mt19937_64 rng(options.seed);
  const WindowPtr w = window(spec, options.level);
  CheckVerdict v;
  for (std::size_t t = 0; t < options.trials; ++t) {
    const Polynomial f = random_polynomial(w, rng);
    const Polynomial phi = random_polynomial(w, rng);
    const Polynomial uf = apply_U(spec, f);
    const Polynomial uphi = apply_U(spec, phi);

    // U^2 = 1 must be exact
    double residual = apply_U(spec, uf) == f ? 0.0 : std::numeric_limits<double>::infinity();
    // <Uf, phi> = <U phi, f>
    residual = std::max(residual, std::abs(inner(uf, phi) - inner(uphi, f)));
    // U(f phi) = U(phi) U(f)
    const Polynomial lhs = apply_U(spec, convolve_left(f, phi, product_window(f, phi)));
    const Polynomial rhs = convolve_left(uphi, uf, product_window(uphi, uf));
    residual = std::max(residual, max_abs_difference(lhs, rhs));
    record(v, residual, options.tol,
           [&] { return Json{{"f", polynomial_to_json(f)}, {"phi", polynomial_to_json(phi)}}; });
  }
  return v;
}

CheckVerdict check_flip(const MonoidSpec& spec, const CheckOptions& options) {
  if (spec.kind() != MonoidKind::FreeMonoid) {
    throw Error(ErrorCode::UnsupportedOperation, "flip needs a free monoid, got " + spec.label());
  }
  std::mt19937_64 rng(options.seed);
  const WindowPtr w = window(spec, options.level);
  const OperatorMatrix w_dom = flip_matrix(spec, w);
  CheckVerdict v;
  for (std::size_t t = 0; t < options.trials; ++t) {
    const Polynomial phi = random_polynomial(w, rng);
    // W R_psi W f = W(Wf * psi) = W(psi) * f, so the right component that
    // conjugates to L_phi is the one with the reversed symbol
    const Polynomial psi = w_dom.apply(phi);
    const MultiplierPair p = make_multiplier_pair(spec, phi, options.level);
    const MultiplierPair q = make_multiplier_pair(spec, psi, options.level);
    const OperatorMatrix w_cod = flip_matrix(spec, q.right().codomain());
    const OperatorMatrix conjugated = multiply(adjoint(w_cod), multiply(q.right(), w_dom));
    const double residual = max_abs_difference(p.left(), conjugated);
    record(v, residual, options.tol, [&] { return Json{{"symbol", polynomial_to_json(phi)}}; });
  }
  return v;
}

CheckVerdict check_intertwine(const MonoidSpec& spec, const CheckOptions& options,
                              const std::optional<Polynomial>& symbol) {
  std::mt19937_64 rng(options.seed);
  const int level = symbol ? std::max(options.level, symbol->degree()) : options.level;
  const WindowPtr w = window(spec, level);
  CheckVerdict v;
  for (std::size_t t = 0; t < options.trials; ++t) {
    const Polynomial phi = symbol ? *symbol : random_polynomial(w, rng);
    const MultiplierPair p = make_multiplier_pair(spec, phi, level);
    const IntertwineVerdict iv = verify_intertwine(p, 8, rng(), options.tol);
    record(v, iv.max_residual, options.tol * std::max(1.0, phi.norm()), [&] {
      Json j{{"symbol", polynomial_to_json(phi)}};
      if (iv.witness) {
        j["f"] = polynomial_to_json(iv.witness->f);
        j["g"] = polynomial_to_json(iv.witness->g);
      }
      return j;
    });
  }
  return v;
}

CheckVerdict check_abelian(const MonoidSpec& spec, const CheckOptions& options) {
  std::mt19937_64 rng(options.seed);
  const WindowPtr w = window(spec, options.level);
  CheckVerdict v;

  // commutativity on the window; exhaustive when small, sampled otherwise
  const std::size_t n = w->size();
  auto commutes = [&](std::size_t i, std::size_t j) {
    const Element ab = compose(spec, (*w)[i], (*w)[j]);
    const Element ba = compose(spec, (*w)[j], (*w)[i]);
    record(v, ab == ba ? 0.0 : 1.0, 0.0, [&] {
      return Json{{"a", element_to_json(spec, (*w)[i])}, {"b", element_to_json(spec, (*w)[j])}};
    });
  };
  if (n <= 64) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) commutes(i, j);
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t t = 0; t < 64 * 64; ++t) commutes(pick(rng), pick(rng));
  }

  // the abelian collapse L = R, exactly
  for (std::size_t t = 0; t < options.trials; ++t) {
    const Polynomial phi = random_polynomial(w, rng, 8);
    const MultiplierPair p = make_multiplier_pair(spec, phi, options.level);
    const double residual = max_abs_difference(p.left(), p.right());
    record(v, residual, options.tol, [&] { return Json{{"symbol", polynomial_to_json(phi)}}; });
  }
  return v;
}

}  // namespace fockmult
