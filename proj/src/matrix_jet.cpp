#include "ncdiff/matrix_jet.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "ncdiff/errors.hpp"

namespace ncdiff {

namespace {

bool exact(int order) { return order == kExactOrder; }

int dec(int order) { return exact(order) ? order : order - 1; }

// Number of coefficients that may be stored for a level of this order,
// capped by how many can actually be nonzero.
std::size_t capped_length(int order, std::size_t nonzero_bound) {
  if (exact(order)) return nonzero_bound;
  return std::min(nonzero_bound, static_cast<std::size_t>(order) + 1);
}

std::string order_text(int order) { return exact(order) ? "exact" : std::to_string(order); }

}  // namespace

MatrixJet::MatrixJet(int dim, bool bivariate, std::vector<Level> levels)
    : dim_(dim), bivariate_(bivariate), levels_(std::move(levels)) {
  normalize();
}

void MatrixJet::normalize() {
  if (dim_ < 1) throw RealizationMismatch("matrix jets need dimension >= 1");
  if (levels_.empty()) throw RealizationMismatch("jet has no t-levels");
  if (!bivariate_ && levels_.size() != 1) throw RealizationMismatch("plain jets have exactly one t-level");
  for (std::size_t m = 0; m < levels_.size(); ++m) {
    auto& level = levels_[m];
    if (level.order < 0) throw PrecisionExhausted("negative x-order at t-level " + std::to_string(m));
    if (m > 0) level.order = std::min(level.order, levels_[m - 1].order);
    if (!exact(level.order) && level.c.size() > static_cast<std::size_t>(level.order) + 1)
      level.c.resize(static_cast<std::size_t>(level.order) + 1);
    while (!level.c.empty() && level.c.back().is_zero()) level.c.pop_back();
    for (const auto& c : level.c)
      if (c.dim() != dim_) throw RealizationMismatch("coefficient dimension differs from jet dimension");
  }
}

MatrixJet MatrixJet::zero(int dim, int x_order) { return MatrixJet(dim, false, {Level{x_order, {}}}); }

MatrixJet MatrixJet::identity(int dim, int x_order) {
  return MatrixJet(dim, false, {Level{x_order, {RationalMatrix::identity(dim)}}});
}

MatrixJet MatrixJet::constant(const RationalMatrix& value, int x_order) {
  return MatrixJet(value.dim(), false, {Level{x_order, {value}}});
}

MatrixJet MatrixJet::series(const std::vector<RationalMatrix>& coeffs, int x_order) {
  if (coeffs.empty()) throw RealizationMismatch("series needs at least one coefficient to fix the dimension");
  return MatrixJet(coeffs.front().dim(), false, {Level{x_order, coeffs}});
}

MatrixJet MatrixJet::scalar_series(const std::vector<Scalar>& coeffs, int x_order) {
  std::vector<RationalMatrix> mats;
  mats.reserve(coeffs.size());
  for (const auto& c : coeffs) mats.push_back(RationalMatrix{{c}});
  if (mats.empty()) mats.push_back(RationalMatrix(1));
  return series(mats, x_order);
}

MatrixJet MatrixJet::bivariate(const std::vector<std::vector<RationalMatrix>>& levels,
                               std::vector<int> x_orders) {
  if (levels.empty() || levels.size() != x_orders.size())
    throw RealizationMismatch("bi-jet needs one x-order per t-level");
  int dim = 0;
  for (const auto& level : levels)
    if (!level.empty()) dim = level.front().dim();
  if (dim == 0) throw RealizationMismatch("bi-jet dimension cannot be inferred from empty levels");
  std::vector<Level> out;
  for (std::size_t m = 0; m < levels.size(); ++m) out.push_back(Level{x_orders[m], levels[m]});
  return MatrixJet(dim, true, std::move(out));
}

int MatrixJet::x_order(int level) const {
  if (level < 0 || level > t_order()) throw IndexOutOfRange("t-level " + std::to_string(level) + " out of range");
  return levels_[static_cast<std::size_t>(level)].order;
}

std::vector<int> MatrixJet::x_orders() const {
  std::vector<int> out;
  for (const auto& level : levels_) out.push_back(level.order);
  return out;
}

const RationalMatrix* MatrixJet::stored(int level, int k) const {
  if (level < 0 || level > t_order()) return nullptr;
  const auto& c = levels_[static_cast<std::size_t>(level)].c;
  if (k < 0 || static_cast<std::size_t>(k) >= c.size()) return nullptr;
  return &c[static_cast<std::size_t>(k)];
}

RationalMatrix MatrixJet::coefficient(int level, int k) const {
  if (level < 0 || level > t_order())
    throw PrecisionExhausted("t-level " + std::to_string(level) + " beyond t-order " + std::to_string(t_order()));
  if (k < 0 || k > x_order(level))
    throw PrecisionExhausted("x-coefficient " + std::to_string(k) + " beyond valid order " +
                             order_text(x_order(level)));
  const auto* c = stored(level, k);
  return c ? *c : RationalMatrix(dim_);
}

std::vector<RationalMatrix> MatrixJet::level_coefficients(int level) const {
  const int order = x_order(level);
  auto out = levels_[static_cast<std::size_t>(level)].c;
  if (!exact(order)) out.resize(static_cast<std::size_t>(order) + 1, RationalMatrix(dim_));
  return out;
}

bool MatrixJet::is_zero() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const Level& l) { return l.c.empty(); });
}

MatrixJet MatrixJet::lift_t(int t_order) const {
  if (bivariate_) throw RealizationMismatch("jet is already bivariate");
  if (t_order < 0) throw IndexOutOfRange("negative t-order");
  std::vector<Level> levels(static_cast<std::size_t>(t_order) + 1, Level{levels_[0].order, {}});
  levels[0] = levels_[0];
  return MatrixJet(dim_, true, std::move(levels));
}

MatrixJet MatrixJet::truncate(int x_order) const {
  auto levels = levels_;
  for (auto& level : levels) level.order = std::min(level.order, x_order);
  return MatrixJet(dim_, bivariate_, std::move(levels));
}

void MatrixJet::require_compatible(const MatrixJet& a, const MatrixJet& b, const char* op) {
  if (a.dim_ != b.dim_)
    throw RealizationMismatch(std::string(op) + ": jet dimensions differ (" + std::to_string(a.dim_) + " vs " +
                              std::to_string(b.dim_) + ")");
  if (a.bivariate_ != b.bivariate_) throw RealizationMismatch(std::string(op) + ": mixing plain jets and bi-jets");
}

MatrixJet MatrixJet::add(const MatrixJet& a, const MatrixJet& b, int sign) {
  require_compatible(a, b, "add");
  const int t = std::min(a.t_order(), b.t_order());
  std::vector<Level> levels;
  for (int m = 0; m <= t; ++m) {
    const auto& la = a.levels_[m];
    const auto& lb = b.levels_[m];
    Level out{std::min(la.order, lb.order), {}};
    std::size_t len = capped_length(out.order, std::max(la.c.size(), lb.c.size()));
    out.c.assign(len, RationalMatrix(a.dim_));
    for (std::size_t k = 0; k < len; ++k) {
      if (k < la.c.size()) out.c[k] += la.c[k];
      if (k < lb.c.size()) {
        if (sign > 0)
          out.c[k] += lb.c[k];
        else
          out.c[k] -= lb.c[k];
      }
    }
    levels.push_back(std::move(out));
  }
  return MatrixJet(a.dim_, a.bivariate_, std::move(levels));
}

MatrixJet operator+(const MatrixJet& a, const MatrixJet& b) { return MatrixJet::add(a, b, 1); }

MatrixJet operator-(const MatrixJet& a, const MatrixJet& b) { return MatrixJet::add(a, b, -1); }

MatrixJet operator-(const MatrixJet& a) { return Scalar(-1) * a; }

MatrixJet operator*(const Scalar& c, const MatrixJet& a) {
  MatrixJet out = a;
  for (auto& level : out.levels_)
    for (auto& m : level.c) m *= c;
  out.normalize();
  return out;
}

MatrixJet operator*(const MatrixJet& a, const MatrixJet& b) {
  MatrixJet::require_compatible(a, b, "multiply");
  const int t = std::min(a.t_order(), b.t_order());
  std::vector<MatrixJet::Level> levels;
  for (int m = 0; m <= t; ++m) {
    MatrixJet::Level out{std::min(a.levels_[m].order, b.levels_[m].order), {}};
    std::size_t bound = 0;
    for (int i = 0; i <= m; ++i) {
      std::size_t sa = a.levels_[i].c.size();
      std::size_t sb = b.levels_[m - i].c.size();
      if (sa && sb) bound = std::max(bound, sa + sb - 1);
    }
    std::size_t len = capped_length(out.order, bound);
    out.c.assign(len, RationalMatrix(a.dim_));
    for (int i = 0; i <= m; ++i) {
      const auto& ca = a.levels_[i].c;
      const auto& cb = b.levels_[m - i].c;
      for (std::size_t ka = 0; ka < ca.size() && ka < len; ++ka) {
        if (ca[ka].is_zero()) continue;
        for (std::size_t kb = 0; kb < cb.size() && ka + kb < len; ++kb)
          RationalMatrix::multiply_add(out.c[ka + kb], ca[ka], cb[kb]);
      }
    }
    levels.push_back(std::move(out));
  }
  return MatrixJet(a.dim_, a.bivariate_, std::move(levels));
}

MatrixJet derive(const MatrixJet& a) {
  std::vector<MatrixJet::Level> levels;
  for (std::size_t m = 0; m < a.levels_.size(); ++m) {
    const auto& level = a.levels_[m];
    if (level.order == 0)
      throw PrecisionExhausted("D needs x-order >= 1 (t-level " + std::to_string(m) + " has order 0)");
    MatrixJet::Level out{dec(level.order), {}};
    for (std::size_t k = 1; k < level.c.size(); ++k) out.c.push_back(Scalar(static_cast<long>(k)) * level.c[k]);
    levels.push_back(std::move(out));
  }
  return MatrixJet(a.dim_, a.bivariate_, std::move(levels));
}

MatrixJet derive_t(const MatrixJet& a) {
  if (!a.bivariate_) throw UnsupportedRealization("D0 is only defined on bi-jets");
  if (a.t_order() < 1) throw PrecisionExhausted("D0 needs t-order >= 1");
  std::vector<MatrixJet::Level> levels;
  for (std::size_t m = 0; m + 1 < a.levels_.size(); ++m) {
    MatrixJet::Level out = a.levels_[m + 1];
    for (auto& c : out.c) c *= Scalar(static_cast<long>(m + 1));
    levels.push_back(std::move(out));
  }
  return MatrixJet(a.dim_, true, std::move(levels));
}

MatrixJet conjugate(const MatrixJet& a) {
  MatrixJet out = a;
  for (auto& level : out.levels_) {
    for (std::size_t k = 0; k < level.c.size(); ++k) {
      level.c[k] = level.c[k].transpose();
      if (k % 2 == 1) level.c[k] *= Scalar(-1);
    }
  }
  return out;
}

MatrixJet invert(const MatrixJet& a) {
  const RationalMatrix* c00 = a.stored(0, 0);
  if (!c00) throw SingularConstantTerm("constant term is zero");
  const RationalMatrix head_inv = [&] {
    try {
      return c00->inverse();
    } catch (const SingularConstantTerm&) {
      throw SingularConstantTerm("constant term of the jet is singular");
    }
  }();

  bool x_dependent = false;
  bool any_exact = false;
  for (const auto& level : a.levels_) {
    x_dependent = x_dependent || level.c.size() > 1;
    any_exact = any_exact || exact(level.order);
  }
  if (x_dependent && any_exact)
    throw PrecisionExhausted("inverse of an x-dependent series known to all orders is not finite; truncate it first");

  std::vector<MatrixJet::Level> levels;
  for (int m = 0; m <= a.t_order(); ++m) {
    const int order = a.levels_[m].order;
    const std::size_t len = exact(order) ? 1 : static_cast<std::size_t>(order) + 1;
    levels.push_back(MatrixJet::Level{order, std::vector<RationalMatrix>(len, RationalMatrix(a.dim_))});
    for (std::size_t k = 0; k < len; ++k) {
      // a00 b(m,k) = delta - sum_{(i,j) != (0,0)} a(i,j) b(m-i, k-j)
      RationalMatrix acc(a.dim_);
      for (int i = 0; i <= m; ++i) {
        const auto& ca = a.levels_[i].c;
        for (std::size_t j = 0; j < ca.size() && j <= k; ++j) {
          if (i == 0 && j == 0) continue;
          const auto& bl = levels[static_cast<std::size_t>(m - i)].c;
          if (k - j >= bl.size()) continue;
          RationalMatrix::multiply_add(acc, ca[j], bl[k - j]);
        }
      }
      RationalMatrix rhs = (m == 0 && k == 0) ? RationalMatrix::identity(a.dim_) : RationalMatrix(a.dim_);
      rhs -= acc;
      levels.back().c[k] = head_inv * rhs;
    }
  }
  return MatrixJet(a.dim_, a.bivariate_, std::move(levels));
}

MatrixJet one_like(const MatrixJet& a) {
  std::vector<MatrixJet::Level> levels(a.levels_.size(), MatrixJet::Level{kExactOrder, {}});
  levels[0].c.push_back(RationalMatrix::identity(a.dim_));
  return MatrixJet(a.dim_, a.bivariate_, std::move(levels));
}

MatrixJet zero_like(const MatrixJet& a) {
  std::vector<MatrixJet::Level> levels(a.levels_.size(), MatrixJet::Level{kExactOrder, {}});
  return MatrixJet(a.dim_, a.bivariate_, std::move(levels));
}

bool agrees(const MatrixJet& a, const MatrixJet& b) {
  MatrixJet::require_compatible(a, b, "compare");
  const int t = std::min(a.t_order(), b.t_order());
  for (int m = 0; m <= t; ++m) {
    const auto& la = a.levels_[m];
    const auto& lb = b.levels_[m];
    std::size_t len = capped_length(std::min(la.order, lb.order), std::max(la.c.size(), lb.c.size()));
    const RationalMatrix zero(a.dim_);
    for (std::size_t k = 0; k < len; ++k) {
      const auto& ca = k < la.c.size() ? la.c[k] : zero;
      const auto& cb = k < lb.c.size() ? lb.c[k] : zero;
      if (!(ca == cb)) return false;
    }
  }
  return true;
}

MatrixJet exp_series(const RationalMatrix& a, int degree, int x_order) {
  std::vector<RationalMatrix> coeffs;
  RationalMatrix term = RationalMatrix::identity(a.dim());
  const int top = std::min(degree, x_order);
  for (int k = 0; k <= top; ++k) {
    coeffs.push_back(term);
    term = Scalar(1, k + 1) * (term * a);
  }
  return MatrixJet::series(coeffs, x_order);
}

MatrixJet exp_series(const Scalar& lambda, int degree, int x_order) {
  return exp_series(RationalMatrix{{lambda}}, degree, x_order);
}

MatrixJet log_derivative(const MatrixJet& phi, Side side) {
  MatrixJet inv = invert(phi);
  if (side == Side::right) return derive(phi) * inv;
  return -(inv * derive(phi));
}

}  // namespace ncdiff
