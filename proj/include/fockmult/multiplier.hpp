#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fockmult/fock.hpp"
#include "fockmult/operators.hpp"

namespace fockmult {

/// A multiplier (L, R) generated by its symbol phi = L(1) = R(1):
/// L f = phi * f and R f = f * phi, both built as exact-column matrices on
/// window(level).
class MultiplierPair {
 public:
  const MonoidSpec& spec() const noexcept { return symbol_.spec(); }
  const Polynomial& symbol() const noexcept { return symbol_; }
  int level() const noexcept { return level_; }
  const OperatorMatrix& left() const noexcept { return left_; }
  const OperatorMatrix& right() const noexcept { return right_; }

 private:
  MultiplierPair(Polynomial symbol, int level, OperatorMatrix left, OperatorMatrix right)
      : symbol_(std::move(symbol)), level_(level), left_(std::move(left)), right_(std::move(right)) {}

  Polynomial symbol_;
  int level_;
  OperatorMatrix left_;
  OperatorMatrix right_;

  friend MultiplierPair make_multiplier_pair(const MonoidSpec&, const Polynomial&, int);
};

/// Requires supp(phi) inside window(level).
MultiplierPair make_multiplier_pair(const MonoidSpec& spec, const Polynomial& phi, int level);
/// Re-builds the same symbol on another truncation level.
MultiplierPair at_level(const MultiplierPair& p, int level);

/// max(||L||, ||R||) on the pair's truncation; converged only if both are.
NormEstimate pair_norm(const MultiplierPair& p, const NormOptions& options = {});

/// Sums and scalings are taken at the larger of the two levels.
MultiplierPair pair_add(const MultiplierPair& p, const MultiplierPair& q);
MultiplierPair pair_scale(const MultiplierPair& p, Complex lambda);
/// (L1 L2, R2 R1). The result lives at max(p.level, q.level, deg(phi_p * phi_q));
/// its components are formed by composing re-based matrices and checked
/// against the pair generated by phi_p * phi_q.
MultiplierPair pair_product(const MultiplierPair& p, const MultiplierPair& q);
/// (R#, L#); the symbol becomes U(phi). Groups only.
MultiplierPair pair_adjoint(const MultiplierPair& p);

/// Level at which p must be evaluated so that pair_product(p, q) at `level`
/// only composes restrictions of p's operators to that window.
int rebased_level(const MultiplierPair& p, const MultiplierPair& q);

struct IntertwineWitness {
  Polynomial f;
  Polynomial g;
};

struct IntertwineVerdict {
  bool pass = true;
  double max_residual = 0.0;
  std::size_t trials = 0;
  std::optional<IntertwineWitness> witness;  // worst (f, g)
};

/// Samples polynomials f, g on the operators' domain window and compares
/// f * L(g) with R(f) * g; the first trial is always f = g = delta_e.
/// `tol` decides pass/fail.
IntertwineVerdict verify_intertwine(const OperatorMatrix& left, const OperatorMatrix& right, std::size_t trials,
                                    std::uint64_t seed, double tol = 1e-12);
IntertwineVerdict verify_intertwine(const MultiplierPair& p, std::size_t trials, std::uint64_t seed,
                                    double tol = 1e-12);

/// Per-level norms of a symbol. This is evidence for membership in the
/// bounded-multiplier space, not a proof: truncated norms increase towards
/// the multiplier norm and `converged` only says the last step was small.
struct NormReport {
  std::vector<int> levels;
  std::vector<double> norms;
  std::vector<std::size_t> iterations;
  bool kernel_converged = true;  // every power iteration settled
  bool converged = false;        // last increment <= tol
  double extrapolate = 0.0;      // last value

  bool is_monotone(double slack = 1e-10) const;
  std::string to_json() const;
  std::string to_csv() const;
};

NormReport finfty_sweep(const MonoidSpec& spec, const Polynomial& phi, const std::vector<int>& levels,
                        double tol = 1e-6, const NormOptions& options = {});

struct CirculantVerdict {
  OperatorMatrix matrix;
  bool circulant = false;
  double max_deviation = 0.0;         // worst departure from constant wrap-around diagonals
  std::vector<Complex> first_column;  // extracted symbol, c_k = entry (k, 0)
  bool symbol_roundtrip = false;      // first_column reproduces phi exactly
};

CirculantVerdict circulant_of(const MonoidSpec& spec, const Polynomial& phi, double tol = 1e-12);

/// sup over a uniform gridsize^d torus grid of |sum phi(m) e^{i m.theta}|.
/// Z_+ and Z_+^d with d <= 3; gridsize >= 2 (degree + 1).
double hardy_norm_grid(const MonoidSpec& spec, const Polynomial& phi, std::size_t gridsize);
std::size_t default_hardy_grid(const MonoidSpec& spec);

/// Pair norm on words of length <= depth. Words e_{i1...ik} correspond to the
/// tensors e_{i1} (x) ... (x) e_{ik}, so left multiplication by phi is
/// phi (x) f on the full Fock space and ||L|| truncates the noncommutative
/// Hardy norm sup ||phi (x) p||. The right component is the flip of L for the
/// reversed symbol, so the pair norm is max(||L_phi||, ||L_{W phi}||); the two
/// agree for palindromic symbols such as sums of generators.
NormEstimate popescu_norm(const MonoidSpec& spec, const Polynomial& phi, int depth, const NormOptions& options = {});

}  // namespace fockmult
