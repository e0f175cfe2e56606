#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncdiff/scalar.hpp"

namespace ncdiff {

using SymbolId = std::uint32_t;

// Process-wide generator names. Ids are handed out in declaration order and
// the table only grows, so ids stay valid for the life of the process.
// Thread-safe.
class Symbols {
 public:
  static SymbolId intern(std::string_view name);
  static std::optional<SymbolId> find(std::string_view name);
  static std::string name(SymbolId id);
};

// One generator with its stack of derivations and an optional star.
struct Letter {
  SymbolId gen = 0;
  bool star = false;
  int d0order = 0;
  int dorder = 0;

  friend bool operator==(const Letter&, const Letter&) = default;
};

// Letter order used by the canonical form: generator id, unstarred before
// starred, then higher D0 and D orders first.
std::strong_ordering compare_letters(const Letter& a, const Letter& b);

using Word = std::vector<Letter>;

// Longer words first, then lexicographic in compare_letters.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const;
};

// Element of the free noncommutative differential ring: a finite Q-linear
// combination of words in the letters. Terms are kept in canonical order and
// never store a zero coefficient, so structural equality is ring equality.
class FreeElement {
 public:
  using TermMap = std::map<Word, Scalar, WordOrder>;

  FreeElement() = default;
  explicit FreeElement(const Scalar& c);  // c * e

  static FreeElement zero() { return {}; }
  static FreeElement one() { return FreeElement(Scalar(1)); }
  static FreeElement generator(SymbolId id);
  static FreeElement generator(std::string_view name);
  static FreeElement monomial(Word word, const Scalar& coeff = 1);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  // Coefficient of a word (zero when absent).
  Scalar coefficient(const Word& word) const;

  FreeElement& operator+=(const FreeElement& rhs);
  FreeElement& operator-=(const FreeElement& rhs);

  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
  friend FreeElement operator-(const FreeElement& a);
  friend FreeElement operator*(const FreeElement& a, const FreeElement& b);
  friend FreeElement operator*(const Scalar& c, const FreeElement& a);

  friend bool operator==(const FreeElement&, const FreeElement&) = default;

 private:
  void add_term(const Word& word, const Scalar& coeff);

  TermMap terms_;
};

FreeElement derive(const FreeElement& a);
FreeElement derive_t(const FreeElement& a);
FreeElement conjugate(const FreeElement& a);

inline FreeElement one_like(const FreeElement&) { return FreeElement::one(); }
inline FreeElement zero_like(const FreeElement&) { return FreeElement::zero(); }
inline bool is_zero(const FreeElement& a) { return a.is_zero(); }
inline bool agrees(const FreeElement& a, const FreeElement& b) { return a == b; }

}  // namespace ncdiff
