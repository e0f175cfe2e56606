#pragma once

#include <concepts>

#include "ncdiff/scalar.hpp"

namespace ncdiff {

// A unital differential ring with involution. Each realization provides the
// operations below as free functions found by ADL:
//   derive(a)      the derivation D
//   conjugate(a)   the involution *, with (Da)* = -D(a*)
//   one_like(a)    the unit e in the realization of a
//   zero_like(a)   the zero in the realization of a
//   is_zero(a)     exact test (jets: over the valid coefficient range)
//   agrees(a, b)   equality (jets: over the jointly valid range)
template <class R>
concept DifferentialRing = std::copyable<R> && requires(const R& a, const R& b, const Scalar& c) {
  { a + b } -> std::same_as<R>;
  { a - b } -> std::same_as<R>;
  { a * b } -> std::same_as<R>;
  { -a } -> std::same_as<R>;
  { c * a } -> std::same_as<R>;
  { derive(a) } -> std::same_as<R>;
  { conjugate(a) } -> std::same_as<R>;
  { one_like(a) } -> std::same_as<R>;
  { zero_like(a) } -> std::same_as<R>;
  { is_zero(a) } -> std::convertible_to<bool>;
  { agrees(a, b) } -> std::convertible_to<bool>;
};

// Rings that also carry the second derivation D0 commuting with D.
template <class R>
concept BiDifferentialRing = DifferentialRing<R> && requires(const R& a) {
  { derive_t(a) } -> std::same_as<R>;
};

template <DifferentialRing R>
R commutator(const R& a, const R& b) {
  return a * b - b * a;
}

template <DifferentialRing R>
R derive_n(R a, int n) {
  for (int i = 0; i < n; ++i) a = derive(a);
  return a;
}

}  // namespace ncdiff

namespace ncdiff {

// Which side of L the first-order factor L_s = D - s sits on, and which
// logarithmic derivative of a kernel element produces s.
enum class Side { left, right };

}  // namespace ncdiff
