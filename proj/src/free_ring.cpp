#include "ncdiff/free_ring.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "ncdiff/errors.hpp"

namespace ncdiff {

namespace {

struct SymbolTable {
  std::mutex mutex;
  std::vector<std::string> names;
  std::unordered_map<std::string, SymbolId> ids;
};

SymbolTable& table() {
  static SymbolTable instance;
  return instance;
}

}  // namespace

SymbolId Symbols::intern(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  std::string key(name);
  if (auto it = t.ids.find(key); it != t.ids.end()) return it->second;
  auto id = static_cast<SymbolId>(t.names.size());
  t.names.push_back(key);
  t.ids.emplace(std::move(key), id);
  return id;
}

std::optional<SymbolId> Symbols::find(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  if (auto it = t.ids.find(std::string(name)); it != t.ids.end()) return it->second;
  return std::nullopt;
}

std::string Symbols::name(SymbolId id) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  if (id >= t.names.size()) throw IndexOutOfRange("unknown generator id " + std::to_string(id));
  return t.names[id];
}

std::strong_ordering compare_letters(const Letter& a, const Letter& b) {
  if (auto c = a.gen <=> b.gen; c != 0) return c;
  if (auto c = a.star <=> b.star; c != 0) return c;
  if (auto c = b.d0order <=> a.d0order; c != 0) return c;
  return b.dorder <=> a.dorder;
}

bool WordOrder::operator()(const Word& a, const Word& b) const {
  if (a.size() != b.size()) return a.size() > b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto c = compare_letters(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

FreeElement::FreeElement(const Scalar& c) {
  if (c != 0) terms_.emplace(Word{}, c);
}

FreeElement FreeElement::generator(SymbolId id) { return monomial(Word{Letter{id}}); }

FreeElement FreeElement::generator(std::string_view name) { return generator(Symbols::intern(name)); }

FreeElement FreeElement::monomial(Word word, const Scalar& coeff) {
  FreeElement out;
  out.add_term(word, coeff);
  return out;
}

Scalar FreeElement::coefficient(const Word& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void FreeElement::add_term(const Word& word, const Scalar& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(word, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

FreeElement& FreeElement::operator+=(const FreeElement& rhs) {
  for (const auto& [word, coeff] : rhs.terms_) add_term(word, coeff);
  return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& rhs) {
  for (const auto& [word, coeff] : rhs.terms_) add_term(word, -coeff);
  return *this;
}

FreeElement operator-(const FreeElement& a) {
  FreeElement out = a;
  for (auto& [word, coeff] : out.terms_) coeff = -coeff;
  return out;
}

FreeElement operator*(const FreeElement& a, const FreeElement& b) {
  FreeElement out;
  Word joined;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      joined.assign(wa.begin(), wa.end());
      joined.insert(joined.end(), wb.begin(), wb.end());
      out.add_term(joined, ca * cb);
    }
  }
  return out;
}

FreeElement operator*(const Scalar& c, const FreeElement& a) {
  if (c == 0) return {};
  FreeElement out = a;
  for (auto& [word, coeff] : out.terms_) coeff *= c;
  return out;
}

namespace {

// Leibniz over the letters of each word, bumping the chosen order.
template <class Bump>
FreeElement leibniz(const FreeElement& a, Bump bump) {
  FreeElement out;
  for (const auto& [word, coeff] : a.terms()) {
    for (std::size_t i = 0; i < word.size(); ++i) {
      Word w = word;
      bump(w[i]);
      out += FreeElement::monomial(std::move(w), coeff);
    }
  }
  return out;
}

}  // namespace

FreeElement derive(const FreeElement& a) {
  return leibniz(a, [](Letter& l) { ++l.dorder; });
}

FreeElement derive_t(const FreeElement& a) {
  return leibniz(a, [](Letter& l) { ++l.d0order; });
}

FreeElement conjugate(const FreeElement& a) {
  FreeElement out;
  for (const auto& [word, coeff] : a.terms()) {
    Word w(word.rbegin(), word.rend());
    int total = 0;
    for (auto& l : w) {
      l.star = !l.star;
      total += l.dorder;
    }
    out += FreeElement::monomial(std::move(w), total % 2 == 0 ? coeff : Scalar(-coeff));
  }
  return out;
}

}  // namespace ncdiff
