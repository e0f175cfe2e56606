#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ncdiff/errors.hpp"
#include "ncdiff/ring.hpp"
#include "ncdiff/scalar.hpp"

namespace ncdiff {

namespace detail {
template <typename R>
bool element_is_zero(const R& r) {
  return is_zero(r);
}
}  // namespace detail

// L = sum_n a_n D^n with coefficients to the left of the powers of D.
// Trailing zero coefficients are trimmed; the zero operator has order -1.
template <DifferentialRing R>
class DiffOperator {
 public:
  DiffOperator() = default;
  explicit DiffOperator(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  // Order-0 operator "multiply by c".
  static DiffOperator constant(R c) { return DiffOperator(std::vector<R>{std::move(c)}); }

  // D^n in the realization of `like`.
  static DiffOperator d_power(const R& like, int n) {
    std::vector<R> coeffs(static_cast<std::size_t>(n) + 1, zero_like(like));
    coeffs.back() = one_like(like);
    return DiffOperator(std::move(coeffs));
  }

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<R>& coeffs() const noexcept { return coeffs_; }

  const R& operator[](int n) const {
    if (n < 0 || n > order()) throw IndexOutOfRange("operator coefficient index out of range");
    return coeffs_[static_cast<std::size_t>(n)];
  }

  // a_n, or zero in the realization of `like` past the order.
  R coeff(int n, const R& like) const {
    if (n >= 0 && n <= order()) return coeffs_[static_cast<std::size_t>(n)];
    return zero_like(like);
  }

 private:
  void trim() {
    while (!coeffs_.empty() && detail::element_is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<R> coeffs_;
};

template <DifferentialRing R>
DiffOperator<R> op_add(const DiffOperator<R>& a, const DiffOperator<R>& b) {
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  std::vector<R> out;
  for (std::size_t n = 0; n < std::max(ca.size(), cb.size()); ++n) {
    if (n >= ca.size())
      out.push_back(cb[n]);
    else if (n >= cb.size())
      out.push_back(ca[n]);
    else
      out.push_back(ca[n] + cb[n]);
  }
  return DiffOperator<R>(std::move(out));
}

template <DifferentialRing R>
DiffOperator<R> op_scale(const R& c, const DiffOperator<R>& a) {
  std::vector<R> out;
  for (const auto& coeff : a.coeffs()) out.push_back(c * coeff);
  return DiffOperator<R>(std::move(out));
}

template <DifferentialRing R>
DiffOperator<R> op_neg(const DiffOperator<R>& a) {
  std::vector<R> out;
  for (const auto& coeff : a.coeffs()) out.push_back(-coeff);
  return DiffOperator<R>(std::move(out));
}

template <DifferentialRing R>
DiffOperator<R> op_sub(const DiffOperator<R>& a, const DiffOperator<R>& b) {
  return op_add(a, op_neg(b));
}

// A o B. Pushes D^k through each coefficient of B with
// D^k b = sum_i C(k, i) (D^{k-i} b) D^i.
template <DifferentialRing R>
DiffOperator<R> op_compose(const DiffOperator<R>& a, const DiffOperator<R>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const int na = a.order();
  const int nb = b.order();
  std::vector<R> out(static_cast<std::size_t>(na + nb) + 1, zero_like(a[na]));
  for (int j = 0; j <= nb; ++j) {
    if (is_zero(b[j])) continue;
    // chain[m] = D^m b_j
    std::vector<R> chain{b[j]};
    for (int m = 1; m <= na; ++m) chain.push_back(derive(chain.back()));
    for (int k = 0; k <= na; ++k) {
      if (is_zero(a[k])) continue;
      for (int i = 0; i <= k; ++i) {
        R term = a[k] * chain[static_cast<std::size_t>(k - i)];
        out[static_cast<std::size_t>(i + j)] = out[static_cast<std::size_t>(i + j)] + binomial(k, i) * term;
      }
    }
  }
  return DiffOperator<R>(std::move(out));
}

// sum_n a_n D^n phi.
template <DifferentialRing R>
R op_apply(const DiffOperator<R>& a, const R& phi) {
  R out = zero_like(phi);
  R dphi = phi;
  for (int n = 0; n <= a.order(); ++n) {
    if (n > 0) dphi = derive(dphi);
    if (!is_zero(a[n])) out = out + a[n] * dphi;
  }
  return out;
}

// Right action phi . L = sum_n (-D)^n (phi a_n), the anti-homomorphism with
// phi . (A o B) = (phi . A) . B. phi . L_s = 0 exactly when D phi = -phi s.
template <DifferentialRing R>
R op_apply_right(const R& phi, const DiffOperator<R>& a) {
  R out = zero_like(phi);
  for (int n = 0; n <= a.order(); ++n) {
    if (is_zero(a[n])) continue;
    R term = derive_n(phi * a[n], n);
    out = (n % 2 == 0) ? out + term : out - term;
  }
  return out;
}

// L_s = D - s.
template <DifferentialRing R>
DiffOperator<R> make_ls(const R& s) {
  return DiffOperator<R>(std::vector<R>{-s, one_like(s)});
}

// Coefficient-wise agreement, treating missing coefficients as zero.
template <DifferentialRing R>
bool agrees(const DiffOperator<R>& a, const DiffOperator<R>& b) {
  const int top = std::max(a.order(), b.order());
  for (int n = 0; n <= top; ++n) {
    const bool ha = n <= a.order();
    const bool hb = n <= b.order();
    if (ha && hb) {
      if (!agrees(a[n], b[n])) return false;
    } else if (ha) {
      if (!is_zero(a[n])) return false;
    } else if (!is_zero(b[n])) {
      return false;
    }
  }
  return true;
}

template <DifferentialRing R>
bool operator==(const DiffOperator<R>& a, const DiffOperator<R>& b) {
  return agrees(a, b);
}

// Rewrites L = sum a_k D^k as sum_j D^j o c_j using
// a D^k = sum_i (-1)^i C(k, i) D^{k-i} o (D^i a).
template <DifferentialRing R>
std::vector<R> right_coefficients(const DiffOperator<R>& l) {
  const int n = l.order();
  if (n < 0) return {};
  std::vector<R> out(static_cast<std::size_t>(n) + 1, zero_like(l[n]));
  for (int k = 0; k <= n; ++k) {
    if (is_zero(l[k])) continue;
    R dk = l[k];
    for (int i = 0; i <= k; ++i) {
      if (i > 0) dk = derive(dk);
      Scalar c = binomial(k, i);
      if (i % 2 == 1) c = -c;
      out[static_cast<std::size_t>(k - i)] = out[static_cast<std::size_t>(k - i)] + c * dk;
    }
  }
  return out;
}

// Applies `f` to every coefficient (e.g. lifting jets to bi-jets).
template <DifferentialRing R, class F>
DiffOperator<R> op_map(const DiffOperator<R>& a, F f) {
  std::vector<R> out;
  for (const auto& c : a.coeffs()) out.push_back(f(c));
  return DiffOperator<R>(std::move(out));
}

}  // namespace ncdiff
