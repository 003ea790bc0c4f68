#include "fockmult/monoid.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace fockmult {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidElement, what); }

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

std::size_t saturating_add(std::size_t a, std::size_t b) {
  if (b > std::numeric_limits<std::size_t>::max() - a) return std::numeric_limits<std::size_t>::max();
  return a + b;
}

std::size_t words_shorter_than(int rank, int length) {
  // number of words of length < `length`
  if (rank == 1) return static_cast<std::size_t>(length);
  std::size_t total = 0;
  std::size_t power = 1;
  for (int l = 0; l < length; ++l) {
    total = saturating_add(total, power);
    power = saturating_mul(power, static_cast<std::size_t>(rank));
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// MonoidSpec

MonoidSpec MonoidSpec::cyclic(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "cyclic order must be positive");
  return MonoidSpec(MonoidKind::Cyclic, n);
}

MonoidSpec MonoidSpec::integers() { return MonoidSpec(MonoidKind::Integers, 0); }

MonoidSpec MonoidSpec::non_negative_integers() { return MonoidSpec(MonoidKind::NonNegIntegers, 0); }

MonoidSpec MonoidSpec::non_negative_vectors(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "vector dimension must be positive");
  return MonoidSpec(MonoidKind::NonNegVectors, d);
}

MonoidSpec MonoidSpec::free_monoid(int rank) {
  if (rank < 1) throw Error(ErrorCode::InvalidArgument, "free monoid rank must be at least 1");
  return MonoidSpec(MonoidKind::FreeMonoid, rank);
}

MonoidSpec MonoidSpec::finite_group(std::vector<std::vector<int>> table, std::vector<std::string> names) {
  return from_table(std::move(table), std::move(names), true);
}

MonoidSpec MonoidSpec::finite_monoid_table(std::vector<std::vector<int>> table) {
  return from_table(std::move(table), {}, false);
}

MonoidSpec MonoidSpec::symmetric_group_s3() {
  // Elements as images of (0,1,2); product a*b means "apply b, then a".
  const std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}};
  const std::vector<std::string> names = {"e", "(23)", "(13)", "(12)", "(123)", "(132)"};
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return finite_group(std::move(table), names);
}

MonoidSpec MonoidSpec::from_table(std::vector<std::vector<int>> table, std::vector<std::string> names,
                                  bool require_group) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Cayley table is empty");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::InvalidArgument, "Cayley table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) throw Error(ErrorCode::InvalidArgument, "Cayley table entry out of range");
    }
  }
  if (!names.empty() && static_cast<int>(names.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "names must match the table order");
  }

  auto data = std::make_shared<TableData>();
  int unit = -1;
  for (int e = 0; e < n && unit < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) unit = e;
  }
  if (unit < 0) throw Error(ErrorCode::InvalidArgument, "Cayley table has no identity element");
  data->identity = unit;

  bool latin = true;
  for (int a = 0; a < n && latin; ++a) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (int b = 0; b < n; ++b) {
      row_seen[table[a][b]] = true;
      col_seen[table[b][a]] = true;
    }
    latin = std::all_of(row_seen.begin(), row_seen.end(), [](bool x) { return x; }) &&
            std::all_of(col_seen.begin(), col_seen.end(), [](bool x) { return x; });
  }
  if (require_group) {
    if (!latin) throw Error(ErrorCode::InvalidArgument, "Cayley table rows/columns are not permutations");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]])
            throw Error(ErrorCode::InvalidArgument, "Cayley table is not associative");
  }
  if (latin) {
    data->inverse.assign(n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (table[a][b] == unit) data->inverse[a] = b;
  }
  bool abelian = true;
  for (int a = 0; a < n && abelian; ++a)
    for (int b = 0; b < n && abelian; ++b) abelian = table[a][b] == table[b][a];
  data->abelian = abelian;

  if (names.empty()) {
    names.reserve(n);
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  }
  data->table = std::move(table);
  data->names = std::move(names);

  MonoidSpec spec(MonoidKind::FiniteGroup, n);
  spec.table_ = std::move(data);
  return spec;
}

bool MonoidSpec::is_group() const noexcept {
  switch (kind_) {
    case MonoidKind::Cyclic:
    case MonoidKind::Integers: return true;
    case MonoidKind::FiniteGroup: return !table_->inverse.empty();
    default: return false;
  }
}

bool MonoidSpec::is_abelian() const noexcept {
  switch (kind_) {
    case MonoidKind::FreeMonoid: return param_ == 1;
    case MonoidKind::FiniteGroup: return table_->abelian;
    default: return true;
  }
}

MonoidSpec MonoidSpec::with_capacity(std::size_t cap) const {
  if (cap == 0) throw Error(ErrorCode::InvalidArgument, "capacity must be positive");
  MonoidSpec copy = *this;
  copy.capacity_ = cap;
  return copy;
}

const std::vector<std::vector<int>>& MonoidSpec::table() const {
  if (!table_) throw Error(ErrorCode::UnsupportedOperation, "spec has no Cayley table");
  return table_->table;
}

const std::vector<std::string>& MonoidSpec::names() const {
  if (!table_) throw Error(ErrorCode::UnsupportedOperation, "spec has no Cayley table");
  return table_->names;
}

std::string MonoidSpec::label() const {
  switch (kind_) {
    case MonoidKind::FiniteGroup: return "group:" + std::to_string(param_);
    case MonoidKind::Cyclic: return "cyclic:" + std::to_string(param_);
    case MonoidKind::Integers: return "z";
    case MonoidKind::NonNegIntegers: return "zplus";
    case MonoidKind::NonNegVectors: return "zplus_d:" + std::to_string(param_);
    case MonoidKind::FreeMonoid: return "free:" + std::to_string(param_);
  }
  return "?";
}

bool MonoidSpec::operator==(const MonoidSpec& other) const {
  if (kind_ != other.kind_ || param_ != other.param_) return false;
  if (kind_ != MonoidKind::FiniteGroup) return true;
  return table_ == other.table_ || table_->table == other.table_->table;
}

// ---------------------------------------------------------------------------
// Element arithmetic

bool is_valid(const MonoidSpec& spec, const Element& e) noexcept {
  const auto& p = e.payload();
  switch (spec.kind()) {
    case MonoidKind::FiniteGroup:
    case MonoidKind::Cyclic:
      return p.size() == 1 && p[0] >= 0 && p[0] < spec.parameter();
    case MonoidKind::Integers: return p.size() == 1;
    case MonoidKind::NonNegIntegers: return p.size() == 1 && p[0] >= 0;
    case MonoidKind::NonNegVectors:
      return static_cast<int>(p.size()) == spec.parameter() &&
             std::all_of(p.begin(), p.end(), [](std::int64_t v) { return v >= 0; });
    case MonoidKind::FreeMonoid:
      return std::all_of(p.begin(), p.end(),
                         [&](std::int64_t v) { return v >= 1 && v <= spec.parameter(); });
  }
  return false;
}

void validate(const MonoidSpec& spec, const Element& e) {
  if (!is_valid(spec, e)) invalid("element " + describe_element(spec, e) + " is not in " + spec.label());
}

Element compose(const MonoidSpec& spec, const Element& a, const Element& b) {
  validate(spec, a);
  validate(spec, b);
  const auto& x = a.payload();
  const auto& y = b.payload();
  switch (spec.kind()) {
    case MonoidKind::FiniteGroup: return Element::scalar(spec.table_->table[x[0]][y[0]]);
    case MonoidKind::Cyclic: return Element::scalar((x[0] + y[0]) % spec.parameter());
    case MonoidKind::Integers:
    case MonoidKind::NonNegIntegers: return Element::scalar(x[0] + y[0]);
    case MonoidKind::NonNegVectors: {
      std::vector<std::int64_t> out(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
      return Element(std::move(out));
    }
    case MonoidKind::FreeMonoid: {
      std::vector<std::int64_t> out;
      out.reserve(x.size() + y.size());
      out.insert(out.end(), x.begin(), x.end());
      out.insert(out.end(), y.begin(), y.end());
      return Element(std::move(out));
    }
  }
  invalid("unknown monoid kind");
}

Element identity(const MonoidSpec& spec) {
  switch (spec.kind()) {
    case MonoidKind::FiniteGroup: return Element::scalar(spec.table_->identity);
    case MonoidKind::NonNegVectors: return Element(std::vector<std::int64_t>(spec.parameter(), 0));
    case MonoidKind::FreeMonoid: return Element{};
    default: return Element::scalar(0);
  }
}

Element invert(const MonoidSpec& spec, const Element& g) {
  if (!spec.is_group()) {
    throw Error(ErrorCode::UnsupportedOperation, spec.label() + " is not a group; no inverses");
  }
  validate(spec, g);
  const std::int64_t v = g.value();
  switch (spec.kind()) {
    case MonoidKind::FiniteGroup: return Element::scalar(spec.table_->inverse[v]);
    case MonoidKind::Cyclic: return Element::scalar((spec.parameter() - v) % spec.parameter());
    default: return Element::scalar(-v);
  }
}

Element reverse_word(const MonoidSpec& spec, const Element& word) {
  if (spec.kind() != MonoidKind::FreeMonoid) {
    throw Error(ErrorCode::UnsupportedOperation, "word reversal needs a free monoid");
  }
  validate(spec, word);
  std::vector<std::int64_t> letters(word.payload().rbegin(), word.payload().rend());
  return Element(std::move(letters));
}

int grade(const MonoidSpec& spec, const Element& e) {
  validate(spec, e);
  const auto& p = e.payload();
  switch (spec.kind()) {
    case MonoidKind::FiniteGroup:
    case MonoidKind::Cyclic: return 0;
    case MonoidKind::Integers: return static_cast<int>(std::llabs(p[0]));
    case MonoidKind::NonNegIntegers: return static_cast<int>(p[0]);
    case MonoidKind::NonNegVectors: return static_cast<int>(*std::max_element(p.begin(), p.end()));
    case MonoidKind::FreeMonoid: return static_cast<int>(p.size());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Windows

std::size_t window_size(const MonoidSpec& spec, int level) {
  const auto k = static_cast<std::size_t>(level);
  switch (spec.kind()) {
    case MonoidKind::FiniteGroup:
    case MonoidKind::Cyclic: return static_cast<std::size_t>(spec.parameter());
    case MonoidKind::NonNegIntegers: return k + 1;
    case MonoidKind::Integers: return 2 * k + 1;
    case MonoidKind::NonNegVectors: {
      std::size_t total = 1;
      for (int i = 0; i < spec.parameter(); ++i) total = saturating_mul(total, k + 1);
      return total;
    }
    case MonoidKind::FreeMonoid: return words_shorter_than(spec.parameter(), level + 1);
  }
  return 0;
}

WindowPtr window(const MonoidSpec& spec, int level) {
  if (level < 0) throw Error(ErrorCode::InvalidArgument, "window level must be non-negative");
  if (spec.is_finite()) level = 0;
  const std::size_t size = window_size(spec, level);
  if (size > spec.capacity()) {
    throw Error(ErrorCode::Capacity, "window " + spec.label() + "/" + std::to_string(level) + " needs " +
                                         std::to_string(size) + " elements, cap is " +
                                         std::to_string(spec.capacity()));
  }

  std::vector<Element> elements;
  elements.reserve(size);
  switch (spec.kind()) {
    case MonoidKind::FiniteGroup:
    case MonoidKind::Cyclic:
    case MonoidKind::NonNegIntegers:
      for (std::size_t i = 0; i < size; ++i) elements.push_back(Element::scalar(static_cast<std::int64_t>(i)));
      break;
    case MonoidKind::Integers:
      for (std::int64_t v = -level; v <= level; ++v) elements.push_back(Element::scalar(v));
      break;
    case MonoidKind::NonNegVectors: {
      std::vector<std::int64_t> digits(spec.parameter(), 0);
      for (std::size_t i = 0; i < size; ++i) {
        elements.emplace_back(digits);
        for (int pos = spec.parameter() - 1; pos >= 0; --pos) {
          if (++digits[pos] <= level) break;
          digits[pos] = 0;
        }
      }
      break;
    }
    case MonoidKind::FreeMonoid: {
      const int rank = spec.parameter();
      for (int len = 0; len <= level; ++len) {
        std::vector<std::int64_t> word(len, 1);
        while (true) {
          elements.emplace_back(word);
          int pos = len - 1;
          while (pos >= 0 && word[pos] == rank) word[pos--] = 1;
          if (pos < 0) break;
          ++word[pos];
        }
      }
      break;
    }
  }
  return WindowPtr(new Window(spec, level, std::move(elements)));
}

std::optional<std::size_t> Window::index_of(const Element& e) const noexcept {
  if (!is_valid(spec_, e)) return std::nullopt;
  const auto& p = e.payload();
  const auto k = static_cast<std::int64_t>(level_);
  switch (spec_.kind()) {
    case MonoidKind::FiniteGroup:
    case MonoidKind::Cyclic: return static_cast<std::size_t>(p[0]);
    case MonoidKind::NonNegIntegers:
      if (p[0] > k) return std::nullopt;
      return static_cast<std::size_t>(p[0]);
    case MonoidKind::Integers:
      if (p[0] < -k || p[0] > k) return std::nullopt;
      return static_cast<std::size_t>(p[0] + k);
    case MonoidKind::NonNegVectors: {
      std::size_t idx = 0;
      for (std::int64_t v : p) {
        if (v > k) return std::nullopt;
        idx = idx * static_cast<std::size_t>(k + 1) + static_cast<std::size_t>(v);
      }
      return idx;
    }
    case MonoidKind::FreeMonoid: {
      if (static_cast<std::int64_t>(p.size()) > k) return std::nullopt;
      const auto rank = static_cast<std::size_t>(spec_.parameter());
      std::size_t rank_in_length = 0;
      for (std::int64_t letter : p) rank_in_length = rank_in_length * rank + static_cast<std::size_t>(letter - 1);
      return words_shorter_than(spec_.parameter(), static_cast<int>(p.size())) + rank_in_length;
    }
  }
  return std::nullopt;
}

std::size_t Window::require_index(const Element& e) const {
  auto idx = index_of(e);
  if (!idx) {
    throw Error(ErrorCode::OutOfWindow, "element " + describe_element(spec_, e) + " lies outside window " +
                                            spec_.label() + "/" + std::to_string(level_));
  }
  return *idx;
}

bool Window::same_as(const Window& other) const noexcept {
  return this == &other || (level_ == other.level_ && spec_ == other.spec_);
}

CancellativityVerdict check_left_cancellative(const MonoidSpec& spec, const Window& w) {
  CancellativityVerdict verdict;
  for (const Element& t : w.elements()) {
    std::map<Element, const Element*> seen;
    for (const Element& r : w.elements()) {
      auto [it, inserted] = seen.emplace(compose(spec, t, r), &r);
      if (!inserted) {
        verdict.pass = false;
        verdict.counterexample = std::array<Element, 3>{t, *it->second, r};
        return verdict;
      }
    }
  }
  return verdict;
}

std::string describe_element(const MonoidSpec& spec, const Element& e) {
  const auto& p = e.payload();
  std::ostringstream out;
  switch (spec.kind()) {
    case MonoidKind::FreeMonoid:
      if (p.empty()) return "e";
      for (std::int64_t letter : p) out << 'g' << letter;
      return out.str();
    case MonoidKind::NonNegVectors:
      out << '(';
      for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i];
      out << ')';
      return out.str();
    case MonoidKind::FiniteGroup:
      if (p.size() == 1 && p[0] >= 0 && p[0] < spec.parameter()) return spec.names()[p[0]];
      [[fallthrough]];
    default:
      if (p.size() == 1) return std::to_string(p[0]);
      out << '[';
      for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i];
      out << ']';
      return out.str();
  }
}

}  // namespace fockmult
