#include "fockmult/matricial.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fockmult/json_io.hpp"

namespace fockmult {

namespace {

double l1_norm(const Polynomial& p) {
  double s = 0.0;
  for (const auto& [_, c] : p.terms()) s += std::abs(c);
  return s;
}

// Block (bi, bj) of a block matrix whose blocks are row_size x col_size.
// Returns the same matrix with block (bi, bj) moved to (bj, bi).
SparseMatrix block_transpose(const SparseMatrix& a, std::size_t row_blocks, std::size_t col_blocks,
                             std::size_t row_size, std::size_t col_size) {
  std::vector<SparseMatrix::Column> columns(row_blocks * col_size);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const std::size_t bj = j / col_size;
    const std::size_t cj = j % col_size;
    const auto rows = a.column_rows(j);
    const auto vals = a.column_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const std::size_t bi = rows[k] / row_size;
      const std::size_t ri = rows[k] % row_size;
      columns[bi * col_size + cj].emplace_back(bj * row_size + ri, vals[k]);
    }
  }
  return SparseMatrix::from_columns(col_blocks * row_size, std::move(columns));
}

// Entrywise difference of two block operators with the same block layout
// and domain, whose row blocks are indexed by different codomain windows.
double block_difference(const SparseMatrix& a, const Window& cod_a, const SparseMatrix& b, const Window& cod_b) {
  auto lookup = [](const SparseMatrix& m, const Window& cod, std::size_t block, const Element& e, std::size_t col) {
    const auto idx = cod.index_of(e);
    return idx ? m.entry(block * cod.size() + *idx, col) : Complex{};
  };
  double worst = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (int side = 0; side < 2; ++side) {
      const SparseMatrix& self = side == 0 ? a : b;
      const SparseMatrix& other = side == 0 ? b : a;
      const Window& cod_self = side == 0 ? cod_a : cod_b;
      const Window& cod_other = side == 0 ? cod_b : cod_a;
      const auto rows = self.column_rows(j);
      const auto vals = self.column_values(j);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::size_t block = rows[k] / cod_self.size();
        const Element& e = cod_self[rows[k] % cod_self.size()];
        worst = std::max(worst, std::abs(vals[k] - lookup(other, cod_other, block, e, j)));
      }
    }
  }
  return worst;
}

Polynomial zero_symbol(const MonoidSpec& spec, int level) { return Polynomial(window(spec, level)); }


ScalarMatrix random_scalar(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ScalarMatrix a(rows, cols);
  for (auto& v : a.data) v = Complex(gauss(rng), gauss(rng));
  return a;
}

MatricialBlock random_block(const MonoidSpec& spec, std::size_t n, int level, std::mt19937_64& rng,
                            std::size_t max_terms) {
  // degree <= level / 2 keeps products of two samples inside window(level)
  const WindowPtr w = window(spec, level / 2);
  std::vector<Polynomial> symbols;
  for (std::size_t k = 0; k < n * n; ++k) symbols.push_back(random_polynomial(w, rng, max_terms));
  return make_block(spec, n, n, symbols, level);
}

Json scalar_to_json(const ScalarMatrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols; ++j) row.push_back({{"re", a(i, j).real()}, {"im", a(i, j).imag()}});
    rows.push_back(std::move(row));
  }
  return rows;
}

Json block_to_json(const std::vector<Polynomial>& symbols, std::size_t n) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(polynomial_to_json(symbols[i * n + j]));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
  ScalarMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
  return a;
}

double scalar_norm(const ScalarMatrix& a, const NormOptions& options) {
  return spectral_norm(SparseMatrix::from_dense(a.rows, a.cols, a.data), options).value;
}

MatricialBlock::MatricialBlock(std::size_t rows, std::size_t cols, int level, std::vector<MultiplierPair> entries)
    : rows_(rows), cols_(cols), level_(level), entries_(std::move(entries)) {
  int cod_level = level_;
  for (const auto& p : entries_) {
    cod_level = std::max({cod_level, p.left().codomain()->level(), p.right().codomain()->level()});
  }
  codomain_ = window(spec(), cod_level);
  const Window& dom = *entries_.front().left().domain();
  const std::size_t d = dom.size();
  const std::size_t c = codomain_->size();

  auto assemble = [&](bool left) {
    std::vector<SparseMatrix::Column> columns(cols_ * d);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const OperatorMatrix& op = left ? at(i, j).left() : at(i, j).right();
        const SparseMatrix& m = op.entries();
        for (std::size_t col = 0; col < d; ++col) {
          const auto r = m.column_rows(col);
          const auto v = m.column_values(col);
          for (std::size_t k = 0; k < r.size(); ++k) {
            const std::size_t row = codomain_->require_index((*op.codomain())[r[k]]);
            columns[j * d + col].emplace_back(i * c + row, v[k]);
          }
        }
      }
    }
    return SparseMatrix::from_columns(rows_ * c, std::move(columns));
  };
  left_ = assemble(true);
  right_ = assemble(false);
}

MatricialBlock make_block(const MonoidSpec& spec, std::size_t rows, std::size_t cols,
                          const std::vector<Polynomial>& symbols, int level) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::Shape, "blocks need at least one row and column");
  if (symbols.size() != rows * cols) {
    throw Error(ErrorCode::Shape, "expected " + std::to_string(rows * cols) + " symbols, got " +
                                      std::to_string(symbols.size()));
  }
  std::vector<MultiplierPair> entries;
  entries.reserve(symbols.size());
  for (const auto& s : symbols) entries.push_back(make_multiplier_pair(spec, s, level));
  return MatricialBlock(rows, cols, level, std::move(entries));
}

MatricialBlock zero_block(const MonoidSpec& spec, std::size_t rows, std::size_t cols, int level) {
  return make_block(spec, rows, cols, std::vector<Polynomial>(rows * cols, zero_symbol(spec, level)), level);
}

MatricialBlock identity_block(const MonoidSpec& spec, std::size_t n, int level) {
  const WindowPtr w = window(spec, level);
  std::vector<Polynomial> symbols(n * n, Polynomial(w));
  for (std::size_t i = 0; i < n; ++i) symbols[i * n + i] = delta(spec, identity(spec), w);
  return make_block(spec, n, n, symbols, level);
}

std::vector<Polynomial> block_symbols(const MatricialBlock& x) {
  std::vector<Polynomial> out;
  out.reserve(x.entries().size());
  for (const auto& p : x.entries()) out.push_back(p.symbol());
  return out;
}

MatricialBlock block_at_level(const MatricialBlock& x, int level) {
  return make_block(x.spec(), x.rows(), x.cols(), block_symbols(x), level);
}

NormEstimate matricial_norm(const MatricialBlock& x, const NormOptions& options) {
  const NormEstimate l = spectral_norm(x.left_block(), options);
  if (x.left_block() == x.right_block()) return l;
  const NormEstimate r = spectral_norm(x.right_block(), options);
  return NormEstimate{std::max(l.value, r.value), l.iterations + r.iterations, l.converged && r.converged};
}

MatricialBlock bimodule_action(const ScalarMatrix& alpha, const MatricialBlock& x, const ScalarMatrix& beta) {
  if (alpha.cols != x.rows() || x.cols() != beta.rows) {
    throw Error(ErrorCode::Shape, "bimodule action needs alpha " + std::to_string(alpha.rows) + "x" +
                                      std::to_string(alpha.cols) + ", x " + std::to_string(x.rows()) + "x" +
                                      std::to_string(x.cols()) + ", beta " + std::to_string(beta.rows) + "x" +
                                      std::to_string(beta.cols) + " to chain");
  }
  const WindowPtr w = window(x.spec(), x.level());
  std::vector<Polynomial> symbols(alpha.rows * beta.cols, Polynomial(w));
  for (std::size_t i = 0; i < alpha.rows; ++i) {
    for (std::size_t j = 0; j < beta.cols; ++j) {
      Polynomial& out = symbols[i * beta.cols + j];
      for (std::size_t k = 0; k < x.rows(); ++k) {
        for (std::size_t l = 0; l < x.cols(); ++l) {
          const Complex s = alpha(i, k) * beta(l, j);
          if (s != Complex{}) out += s * x.at(k, l).symbol();
        }
      }
    }
  }
  return make_block(x.spec(), alpha.rows, beta.cols, symbols, x.level());
}

MatricialBlock left_action(const ScalarMatrix& alpha, const MatricialBlock& x) {
  return bimodule_action(alpha, x, ScalarMatrix::identity(x.cols()));
}

MatricialBlock right_action(const MatricialBlock& x, const ScalarMatrix& beta) {
  return bimodule_action(ScalarMatrix::identity(x.rows()), x, beta);
}

namespace {

struct ProductSymbols {
  std::vector<Polynomial> symbols;
  int level;
  double scale;
};

ProductSymbols product_symbols(const MatricialBlock& x, const MatricialBlock& y) {
  if (!(x.spec() == y.spec())) throw Error(ErrorCode::IncompatibleWindow, "blocks live over different monoids");
  if (x.cols() != y.rows()) throw Error(ErrorCode::Shape, "block product needs x.cols == y.rows");
  std::vector<Polynomial> terms;
  int level = std::max(x.level(), y.level());
  double scale = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j) {
      for (std::size_t k = 0; k < x.cols(); ++k) {
        const Polynomial& a = x.at(i, k).symbol();
        const Polynomial& b = y.at(k, j).symbol();
        Polynomial c = convolve_left(a, b, product_window(a, b));
        level = std::max(level, c.degree());
        scale += l1_norm(a) * l1_norm(b);
        terms.push_back(std::move(c));
      }
    }
  }
  const WindowPtr w = window(x.spec(), level);
  std::vector<Polynomial> symbols;
  for (std::size_t ij = 0; ij < x.rows() * y.cols(); ++ij) {
    Polynomial s(w);
    for (std::size_t k = 0; k < x.cols(); ++k) s += terms[ij * x.cols() + k];
    symbols.push_back(std::move(s));
  }
  return {std::move(symbols), level, scale};
}

int max_degree(const MatricialBlock& x) {
  int d = 0;
  for (const auto& p : x.entries()) d = std::max(d, p.symbol().degree());
  return d;
}

}  // namespace

MatricialBlock matricial_product(const MatricialBlock& x, const MatricialBlock& y) {
  ProductSymbols ps = product_symbols(x, y);
  const int k = ps.level;
  MatricialBlock out = make_block(x.spec(), x.rows(), y.cols(), ps.symbols, k);

  // [L_x][L_y]: L_y on window(k), L_x on L_y's codomain.
  const MatricialBlock yk = block_at_level(y, k);
  const MatricialBlock xl = block_at_level(x, yk.codomain()->level());
  const SparseMatrix left = xl.left_block() * yk.left_block();

  // (i,j) -> sum_k R_y,kj R_x,ik, i.e. the block transpose of [R_y]^t [R_x]^t.
  const MatricialBlock xk = block_at_level(x, k);
  const MatricialBlock yr = block_at_level(y, xk.codomain()->level());
  const std::size_t dom = window(x.spec(), k)->size();
  const std::size_t mid = xk.codomain()->size();
  const std::size_t cod = yr.codomain()->size();
  const SparseMatrix rx_t = block_transpose(xk.right_block(), x.rows(), x.cols(), mid, dom);
  const SparseMatrix ry_t = block_transpose(yr.right_block(), y.rows(), y.cols(), cod, mid);
  const SparseMatrix right = block_transpose(ry_t * rx_t, y.cols(), x.rows(), cod, dom);

  const double tol = 1e-12 * std::max(1.0, ps.scale);
  if (block_difference(out.left_block(), *out.codomain(), left, *xl.codomain()) > tol ||
      block_difference(out.right_block(), *out.codomain(), right, *yr.codomain()) > tol) {
    throw Error(ErrorCode::InvariantViolation, "composed blocks disagree with the product symbols");
  }
  return out;
}

int product_bound_level(const MatricialBlock& x, const MatricialBlock& y) {
  return product_symbols(x, y).level + std::max(max_degree(x), max_degree(y));
}

MatricialBlock direct_sum(const MatricialBlock& x, const MatricialBlock& y) {
  if (!(x.spec() == y.spec())) throw Error(ErrorCode::IncompatibleWindow, "blocks live over different monoids");
  const int level = std::max(x.level(), y.level());
  const WindowPtr w = window(x.spec(), level);
  const std::size_t rows = x.rows() + y.rows();
  const std::size_t cols = x.cols() + y.cols();
  std::vector<Polynomial> symbols(rows * cols, Polynomial(w));
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) symbols[i * cols + j] = rebase(x.at(i, j).symbol(), w);
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j)
      symbols[(x.rows() + i) * cols + x.cols() + j] = rebase(y.at(i, j).symbol(), w);
  return make_block(x.spec(), rows, cols, symbols, level);
}

std::string RuanVerdict::to_json() const {
  Json j;
  j["pass"] = pass;
  j["trials"] = trials;
  j["seed"] = seed;
  j["worst_violation"] = worst_violation;
  j["checks"] = {{"direct_sum", worst_direct_sum},
                 {"bimodule", worst_bimodule},
                 {"submultiplicative", worst_submultiplicative}};
  j["kernel_converged"] = kernel_converged;
  if (witness) {
    const RuanWitness& w = *witness;
    j["witness"] = {{"axiom", w.axiom},       {"trial", w.trial},
                    {"lhs", w.lhs},           {"rhs", w.rhs},
                    {"x", block_to_json(w.x, w.x_size)}, {"y", block_to_json(w.y, w.y_size)},
                    {"alpha", scalar_to_json(w.alpha)},  {"beta", scalar_to_json(w.beta)}};
  } else {
    j["witness"] = nullptr;
  }
  return j.dump();
}

RuanVerdict ruan_axiom_check(const MonoidSpec& spec, const RuanOptions& options) {
  if (options.n == 0 || options.n > options.max_n) {
    throw Error(ErrorCode::InvalidArgument,
                "block size must be between 1 and " + std::to_string(options.max_n) + ", got " + std::to_string(options.n));
  }
  if (options.level < 0) throw Error(ErrorCode::InvalidArgument, "level must be non-negative");
  const std::size_t n = options.n;

  RuanVerdict verdict;
  verdict.seed = options.seed;
  verdict.worst_violation = -1e300;

  auto norm = [&](const MatricialBlock& b) {
    const NormEstimate e = matricial_norm(b, options.norm);
    verdict.kernel_converged = verdict.kernel_converged && e.converged;
    return e.value;
  };
  auto record = [&](const char* axiom, std::size_t trial, double lhs, double rhs, double& worst,
                    const MatricialBlock& x, const MatricialBlock& y, const ScalarMatrix& alpha,
                    const ScalarMatrix& beta) {
    const double violation = lhs - rhs;
    worst = std::max(worst, violation);
    verdict.worst_violation = std::max(verdict.worst_violation, violation);
    if (violation <= options.tol) return;
    verdict.pass = false;
    if (!verdict.witness || violation > verdict.witness->lhs - verdict.witness->rhs) {
      verdict.witness = RuanWitness{axiom, trial, lhs, rhs, block_symbols(x), block_symbols(y),
                                    x.rows(), y.rows(), alpha, beta};
    }
  };

  for (std::size_t t = 0; t < options.trials; ++t) {
    std::seed_seq seq{options.seed, static_cast<std::uint64_t>(t)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> size(1, n);

    const MatricialBlock x = random_block(spec, n, options.level, rng, options.max_terms);
    const MatricialBlock y = random_block(spec, size(rng), options.level, rng, options.max_terms);
    const double nx = norm(x);
    const double ny = norm(y);

    // ||x (+) y|| = max(||x||, ||y||)
    const double sum = norm(direct_sum(x, y));
    record("direct_sum", t, std::abs(sum - std::max(nx, ny)), 0.0, verdict.worst_direct_sum, x, y, {}, {});

    // ||alpha x beta|| <= ||alpha|| ||x|| ||beta||
    const ScalarMatrix alpha = random_scalar(size(rng), n, rng);
    const ScalarMatrix beta = random_scalar(n, size(rng), rng);
    const double axb = norm(bimodule_action(alpha, x, beta));
    record("bimodule", t, axb, scalar_norm(alpha, options.norm) * nx * scalar_norm(beta, options.norm),
           verdict.worst_bimodule, x, x, alpha, beta);

    // ||x z|| <= ||x|| ||z||, factors at the level the composition reads
    const MatricialBlock z = random_block(spec, n, options.level, rng, options.max_terms);
    const int bound = product_bound_level(x, z);
    const double xz = norm(matricial_product(x, z));
    const double rhs = norm(block_at_level(x, bound)) * norm(block_at_level(z, bound));
    record("submultiplicative", t, xz, rhs, verdict.worst_submultiplicative, x, z, {}, {});

    ++verdict.trials;
  }
  return verdict;
}

}  // namespace fockmult
