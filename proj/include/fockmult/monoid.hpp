#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fockmult/error.hpp"

namespace fockmult {

enum class MonoidKind {
  FiniteGroup,     // Cayley table
  Cyclic,          // Z_n
  Integers,        // Z
  NonNegIntegers,  // Z_+
  NonNegVectors,   // Z_+^d
  FreeMonoid,      // F_n^+
};

inline constexpr std::size_t kDefaultCapacity = 200'000;

/// Monoid element. The payload is interpreted through the owning MonoidSpec:
/// a single integer for the scalar families and table indices, a length-d
/// vector for Z_+^d, and a word of generator indices 1..n for F_n^+ (the empty
/// word is the identity).
class Element {
 public:
  Element() = default;
  explicit Element(std::vector<std::int64_t> payload) : payload_(std::move(payload)) {}

  static Element scalar(std::int64_t v) { return Element(std::vector<std::int64_t>{v}); }
  static Element word(std::vector<std::int64_t> letters) { return Element(std::move(letters)); }

  const std::vector<std::int64_t>& payload() const noexcept { return payload_; }
  std::int64_t value() const { return payload_.at(0); }
  std::size_t length() const noexcept { return payload_.size(); }

  auto operator<=>(const Element&) const = default;

 private:
  std::vector<std::int64_t> payload_;
};

/// A concrete left-cancellative monoid. Cheap to copy; Cayley tables are
/// shared between copies.
class MonoidSpec {
 public:
  static MonoidSpec cyclic(int n);
  static MonoidSpec integers();
  static MonoidSpec non_negative_integers();
  static MonoidSpec non_negative_vectors(int d);
  static MonoidSpec free_monoid(int rank);
  /// Validates the group axioms: Latin-square table, identity, associativity.
  static MonoidSpec finite_group(std::vector<std::vector<int>> table,
                                 std::vector<std::string> names = {});
  /// Finite monoid from a table that is only required to be closed and to
  /// have an identity. Used to probe check_left_cancellative on tables that
  /// are not groups; group-only operations reject it.
  static MonoidSpec finite_monoid_table(std::vector<std::vector<int>> table);
  /// The symmetric group S_3 in the order e, (23), (13), (12), (123), (132).
  static MonoidSpec symmetric_group_s3();

  MonoidKind kind() const noexcept { return kind_; }
  /// n for Cyclic, d for NonNegVectors, rank for FreeMonoid, order for tables.
  int parameter() const noexcept { return param_; }

  bool is_group() const noexcept;
  bool is_abelian() const noexcept;
  bool is_finite() const noexcept {
    return kind_ == MonoidKind::FiniteGroup || kind_ == MonoidKind::Cyclic;
  }

  std::size_t capacity() const noexcept { return capacity_; }
  MonoidSpec with_capacity(std::size_t cap) const;

  const std::vector<std::vector<int>>& table() const;
  const std::vector<std::string>& names() const;

  /// Short label used in matrix dumps, e.g. "cyclic:3" or "free:2".
  std::string label() const;

  bool operator==(const MonoidSpec& other) const;

 private:
  struct TableData {
    std::vector<std::vector<int>> table;
    std::vector<std::string> names;
    int identity = 0;
    std::vector<int> inverse;  // empty unless the table is a group
    bool abelian = false;
  };

  MonoidSpec(MonoidKind kind, int param) : kind_(kind), param_(param) {}
  static MonoidSpec from_table(std::vector<std::vector<int>> table,
                               std::vector<std::string> names, bool require_group);

  MonoidKind kind_;
  int param_ = 0;
  std::shared_ptr<const TableData> table_;
  std::size_t capacity_ = kDefaultCapacity;

  friend Element compose(const MonoidSpec&, const Element&, const Element&);
  friend Element identity(const MonoidSpec&);
  friend Element invert(const MonoidSpec&, const Element&);
};

/// Throws ErrorCode::InvalidElement if `e` is not an element of `spec`.
void validate(const MonoidSpec& spec, const Element& e);
bool is_valid(const MonoidSpec& spec, const Element& e) noexcept;

Element compose(const MonoidSpec& spec, const Element& a, const Element& b);
Element identity(const MonoidSpec& spec);
Element invert(const MonoidSpec& spec, const Element& g);
Element reverse_word(const MonoidSpec& spec, const Element& word);

/// Smallest truncation level whose canonical window contains `e`: the value
/// on Z_+, |n| on Z, the largest component on Z_+^d, the word length on
/// F_n^+, and 0 on finite groups.
int grade(const MonoidSpec& spec, const Element& e);

/// Finite, canonically ordered truncation of a monoid.
///
/// Orders: table order for finite groups (level ignored, normalised to 0),
/// 0..k for Z_+, -k..k for Z, the box {0..k}^d in lexicographic order, and
/// words of length <= k in length-then-lex order for F_n^+. Window(k) is a
/// subset of Window(k+1) and the relative order of shared elements agrees.
class Window {
 public:
  const MonoidSpec& spec() const noexcept { return spec_; }
  int level() const noexcept { return level_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  const Element& operator[](std::size_t i) const { return elements_[i]; }

  bool contains(const Element& e) const noexcept { return index_of(e).has_value(); }
  std::optional<std::size_t> index_of(const Element& e) const noexcept;
  /// Like index_of, but throws ErrorCode::OutOfWindow.
  std::size_t require_index(const Element& e) const;

  /// Same spec and same (normalised) level.
  bool same_as(const Window& other) const noexcept;

 private:
  Window(MonoidSpec spec, int level, std::vector<Element> elements)
      : spec_(std::move(spec)), level_(level), elements_(std::move(elements)) {}

  MonoidSpec spec_;
  int level_;
  std::vector<Element> elements_;

  friend std::shared_ptr<const Window> window(const MonoidSpec&, int);
};

using WindowPtr = std::shared_ptr<const Window>;

/// Number of elements window(spec, level) would hold, saturating at SIZE_MAX.
std::size_t window_size(const MonoidSpec& spec, int level);
WindowPtr window(const MonoidSpec& spec, int level);

struct CancellativityVerdict {
  bool pass = true;
  /// (t, r, r') with t*r == t*r' and r != r'.
  std::optional<std::array<Element, 3>> counterexample;
};

CancellativityVerdict check_left_cancellative(const MonoidSpec& spec, const Window& w);

// Text forms. Elements: {"int": n} | {"vec": [...]} | {"word": [...]} | {"idx": k}.
// Specs: {"kind":"cyclic","n":3}, {"kind":"free","rank":2}, {"kind":"zplus"},
// {"kind":"z"}, {"kind":"zplus_d","d":2}, {"kind":"group","table":[[...]],"names":[...]}.
Element parse_element(const MonoidSpec& spec, std::string_view text);
std::string format_element(const MonoidSpec& spec, const Element& e);
MonoidSpec parse_monoid_spec(std::string_view text);
std::string format_monoid_spec(const MonoidSpec& spec);
/// Human-readable form: "g1g2" for words, "(1,3)" for vectors, names for tables.
std::string describe_element(const MonoidSpec& spec, const Element& e);

}  // namespace fockmult
