#pragma once

#include <cstdint>
#include <optional>

#include "fockmult/json_io.hpp"
#include "fockmult/multiplier.hpp"

namespace fockmult {

/// Outcome of a sampled identity check. `max_residual` is the worst residual
/// in the check's own units (relative for cstar, absolute otherwise) and
/// `witness` holds the inputs that produced it when the check fails.
struct CheckVerdict {
  bool pass = true;
  double max_residual = 0.0;
  std::size_t trials = 0;
  bool kernel_converged = true;
  Json witness;  // null unless failed

  Json to_json() const;
};

struct CheckOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  int level = 0;
  NormOptions norm{};
};

/// |‖p* p‖ - ‖p‖²| <= tol max(1, ‖p‖²) for random symbols; finite groups only,
/// where the pair's operators are the untruncated ones.
CheckVerdict check_cstar(const MonoidSpec& spec, const CheckOptions& options);
/// sharp_of(R) = adjoint(L) and sharp_of(L) = adjoint(R); finite groups.
CheckVerdict check_sharp_adjoint(const MonoidSpec& spec, const CheckOptions& options);
/// U^2 = 1, <Uf, g> = <Ug, f> and U(f phi) = U(phi) U(f) on random pairs from
/// window(level); groups.
CheckVerdict check_u_laws(const MonoidSpec& spec, const CheckOptions& options);
/// L_phi = W* R_{W phi} W on window(level): the flip carries the right
/// component of the reversed symbol onto the left one; free monoids.
CheckVerdict check_flip(const MonoidSpec& spec, const CheckOptions& options);
/// f L(g) = R(f) g for random symbols (or `symbol` when given), 8 (f, g)
/// samples per symbol.
CheckVerdict check_intertwine(const MonoidSpec& spec, const CheckOptions& options,
                              const std::optional<Polynomial>& symbol = std::nullopt);
/// Commutativity of the window and L_phi = R_phi for random symbols; a
/// non-commuting pair is reported as the witness.
CheckVerdict check_abelian(const MonoidSpec& spec, const CheckOptions& options);

}  // namespace fockmult
