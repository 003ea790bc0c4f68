#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fockmult/multiplier.hpp"

namespace fockmult {

/// Dense complex scalar matrix, row-major.
struct ScalarMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> data;

  ScalarMatrix() = default;
  ScalarMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  static ScalarMatrix identity(std::size_t n);

  Complex& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Spectral norm of a scalar matrix.
double scalar_norm(const ScalarMatrix& a, const NormOptions& options = {});

/// A rows x cols array of multiplier pairs sharing one spec and one level,
/// together with the block operators [L_ij] and [R_ij] acting from the
/// cols-fold direct sum of window(level) into the rows-fold direct sum of a
/// common codomain window.
class MatricialBlock {
 public:
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const MonoidSpec& spec() const noexcept { return entries_.front().spec(); }
  int level() const noexcept { return level_; }
  const MultiplierPair& at(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }
  const std::vector<MultiplierPair>& entries() const noexcept { return entries_; }

  const WindowPtr& codomain() const noexcept { return codomain_; }
  const SparseMatrix& left_block() const noexcept { return left_; }
  const SparseMatrix& right_block() const noexcept { return right_; }

 private:
  MatricialBlock(std::size_t rows, std::size_t cols, int level, std::vector<MultiplierPair> entries);

  std::size_t rows_;
  std::size_t cols_;
  int level_;
  std::vector<MultiplierPair> entries_;
  WindowPtr codomain_;
  SparseMatrix left_;
  SparseMatrix right_;

  friend MatricialBlock make_block(const MonoidSpec&, std::size_t, std::size_t, const std::vector<Polynomial>&, int);
};

/// Symbols in row-major order; every symbol must fit in window(level).
MatricialBlock make_block(const MonoidSpec& spec, std::size_t rows, std::size_t cols,
                          const std::vector<Polynomial>& symbols, int level);
MatricialBlock zero_block(const MonoidSpec& spec, std::size_t rows, std::size_t cols, int level);
MatricialBlock identity_block(const MonoidSpec& spec, std::size_t n, int level);
MatricialBlock block_at_level(const MatricialBlock& x, int level);
std::vector<Polynomial> block_symbols(const MatricialBlock& x);

/// max(||[L_ij]||, ||[R_ij]||); converged only if both power iterations are.
NormEstimate matricial_norm(const MatricialBlock& x, const NormOptions& options = {});

/// (alpha x beta)_ij = sum alpha_ik x_kl beta_lj, applied to both components
/// with the same orientation (no transpose on the R side).
MatricialBlock bimodule_action(const ScalarMatrix& alpha, const MatricialBlock& x, const ScalarMatrix& beta);
MatricialBlock left_action(const ScalarMatrix& alpha, const MatricialBlock& x);
MatricialBlock right_action(const MatricialBlock& x, const ScalarMatrix& beta);

/// Entry (i,j) has symbol sum_k phi_x,ik * phi_y,kj and lives at
/// max(x.level, y.level, deg). The L-block is checked against [L_x][L_y] and
/// the R-block against sum_k R_y,kj R_x,ik, both composed from re-based
/// operators; a mismatch throws InvariantViolation.
MatricialBlock matricial_product(const MatricialBlock& x, const MatricialBlock& y);
/// Level at which the factors must be evaluated to bound the product's norm
/// at matricial_product's level by the product of their norms.
int product_bound_level(const MatricialBlock& x, const MatricialBlock& y);

MatricialBlock direct_sum(const MatricialBlock& x, const MatricialBlock& y);

struct RuanWitness {
  std::string axiom;  // "direct_sum", "bimodule" or "submultiplicative"
  std::size_t trial = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::vector<Polynomial> x;
  std::vector<Polynomial> y;
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  ScalarMatrix alpha;
  ScalarMatrix beta;
};

struct RuanVerdict {
  bool pass = true;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double worst_violation = 0.0;  // largest lhs - rhs seen (may be negative)
  double worst_direct_sum = 0.0;
  double worst_bimodule = -1e300;
  double worst_submultiplicative = -1e300;
  bool kernel_converged = true;
  std::optional<RuanWitness> witness;  // set when some check fails

  std::string to_json() const;
};

struct RuanOptions {
  std::size_t n = 2;
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int level = 0;              // truncation level; symbols have degree <= level / 2
  std::size_t max_n = 3;      // configured cap on n
  std::size_t max_terms = 3;  // support size of each sampled symbol
  NormOptions norm{};
};

/// Samples blocks x (n x n), y (m x m, 1 <= m <= n) and scalar alpha, beta and
/// checks the direct-sum rule, bimodule contractivity and submultiplicativity.
/// Submultiplicativity compares ||xy|| at the product level against ||x|| ||y||
/// at product_bound_level, the truncation the composed operators actually use.
RuanVerdict ruan_axiom_check(const MonoidSpec& spec, const RuanOptions& options);

}  // namespace fockmult
