#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ncdiff/diff_operator.hpp"
#include "ncdiff/errors.hpp"
#include "ncdiff/ring.hpp"

namespace ncdiff {

// Memoized nonabelian Bell polynomials of a fixed element s:
//   left(n)     B_n(s):    B_0 = e,  B_n = D B_{n-1} + B_{n-1} s
//   right(n)    B_n^+(s):  B_0 = e,  B_n = -D B_{n-1} + s B_{n-1}
//   gen(n, k)   B_{n,k}(s): B_{n,0} = e,
//               B_{n,k} = B_{n-1,k} + D B_{n-1,k-1}   (1 <= k < n)
//               B_{n,n} = D B_{n-1,n-1} + B_n(s)
//   h(n)        H_n   = sum_k B_{n,n-k}(s) D^k,  with D^n = H_{n-1} L_s + B_n(s)
//   h_plus(n)   H_n^+ = sum_k B_{n-k}^+(s) D^k, with D^n = L_s H_{n-1}^+ + B_n^+(s)
//
// Entries are filled lazily under an internal lock, so a table may be shared
// between threads. Returned references stay valid for the table's lifetime.
template <DifferentialRing R>
class BellTable {
 public:
  explicit BellTable(R s) : s_(std::move(s)) {}

  BellTable(const BellTable&) = delete;
  BellTable& operator=(const BellTable&) = delete;

  const R& s() const noexcept { return s_; }

  const R& left(int n) const {
    check_index(n);
    std::lock_guard lock(mutex_);
    return left_locked(n);
  }

  const R& right(int n) const {
    check_index(n);
    std::lock_guard lock(mutex_);
    return right_locked(n);
  }

  const R& gen(int n, int k) const {
    if (n < 0 || k < 0 || k > n)
      throw IndexOutOfRange("B_{n,k} needs 0 <= k <= n, got n=" + std::to_string(n) + ", k=" + std::to_string(k));
    std::lock_guard lock(mutex_);
    return gen_locked(n, k);
  }

  const DiffOperator<R>& h(int n) const {
    check_index(n);
    std::lock_guard lock(mutex_);
    if (auto it = h_.find(n); it != h_.end()) return it->second;
    std::vector<R> coeffs;
    for (int k = 0; k <= n; ++k) coeffs.push_back(gen_locked(n, n - k));
    return h_.emplace(n, DiffOperator<R>(std::move(coeffs))).first->second;
  }

  const DiffOperator<R>& h_plus(int n) const {
    check_index(n);
    std::lock_guard lock(mutex_);
    if (auto it = h_plus_.find(n); it != h_plus_.end()) return it->second;
    std::vector<R> coeffs;
    for (int k = 0; k <= n; ++k) coeffs.push_back(right_locked(n - k));
    return h_plus_.emplace(n, DiffOperator<R>(std::move(coeffs))).first->second;
  }

 private:
  static void check_index(int n) {
    if (n < 0) throw IndexOutOfRange("Bell index must be non-negative, got " + std::to_string(n));
  }

  const R& left_locked(int n) const {
    if (auto it = left_.find(n); it != left_.end()) return it->second;
    R value = n == 0 ? one_like(s_) : [&] {
      const R& prev = left_locked(n - 1);
      return derive(prev) + prev * s_;
    }();
    return left_.emplace(n, std::move(value)).first->second;
  }

  const R& right_locked(int n) const {
    if (auto it = right_.find(n); it != right_.end()) return it->second;
    R value = n == 0 ? one_like(s_) : [&] {
      const R& prev = right_locked(n - 1);
      return s_ * prev - derive(prev);
    }();
    return right_.emplace(n, std::move(value)).first->second;
  }

  const R& gen_locked(int n, int k) const {
    auto key = std::make_pair(n, k);
    if (auto it = gen_.find(key); it != gen_.end()) return it->second;
    R value = [&] {
      if (k == 0) return one_like(s_);
      if (k < n) return gen_locked(n - 1, k) + derive(gen_locked(n - 1, k - 1));
      return derive(gen_locked(n - 1, n - 1)) + left_locked(n);
    }();
    return gen_.emplace(key, std::move(value)).first->second;
  }

  R s_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<int, R> left_;
  mutable std::map<int, R> right_;
  mutable std::map<std::pair<int, int>, R> gen_;
  mutable std::map<int, DiffOperator<R>> h_;
  mutable std::map<int, DiffOperator<R>> h_plus_;
};

}  // namespace ncdiff
