#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ncdiff/diff_operator.hpp"
#include "ncdiff/errors.hpp"
#include "ncdiff/free_ring.hpp"
#include "ncdiff/matrix_jet.hpp"
#include "ncdiff/ring.hpp"

namespace ncdiff {

enum class RingMode { free, jet, bijet };

struct SessionConfig {
  RingMode ring_mode = RingMode::free;
  std::vector<std::string> generators{"s"};
  int matrix_dim = 1;
  int x_order = 16;
  int t_order = 0;
  bool json = false;

  // Throws Error when the jet-mode fields are out of range.
  void validate() const;
  bool declares(std::string_view name) const;
};

// Surface syntax tree of a ring element:
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | postfix
//   postfix := primary ('^' INT)?
//   primary := INT ('/' INT)? | 'e' | ident ["*'"] | 'D' ['^' INT] '(' expr ')'
//            | 'D0' ['^' INT] '(' expr ')' | '(' expr ')'
// Products keep their order.
struct ExprNode {
  enum class Kind { scalar, unit, generator, derive, derive_t, power, negate, product, sum };

  Kind kind = Kind::scalar;
  Scalar value;      // scalar
  std::string name;  // generator
  bool star = false;  // generator
  int count = 1;      // derive / derive_t / power
  std::vector<std::shared_ptr<const ExprNode>> children;
  std::size_t offset = 0;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

ExprPtr parse_expr(std::string_view text, const SessionConfig& config);

// Maps an AST into a ring. `unit` fixes the realization; `lookup` returns the
// value of a (possibly starred) generator.
template <DifferentialRing R>
R evaluate(const ExprNode& node, const R& unit, const std::function<R(const std::string&, bool)>& lookup) {
  using Kind = ExprNode::Kind;
  switch (node.kind) {
    case Kind::scalar:
      return node.value * unit;
    case Kind::unit:
      return unit;
    case Kind::generator:
      return lookup(node.name, node.star);
    case Kind::derive:
      return derive_n(evaluate(*node.children[0], unit, lookup), node.count);
    case Kind::derive_t: {
      R value = evaluate(*node.children[0], unit, lookup);
      if constexpr (BiDifferentialRing<R>) {
        for (int i = 0; i < node.count; ++i) value = derive_t(value);
        return value;
      } else {
        throw UnsupportedRealization("D0 is not available in this realization");
      }
    }
    case Kind::power: {
      const R base = evaluate(*node.children[0], unit, lookup);
      R value = unit;
      for (int i = 0; i < node.count; ++i) value = value * base;
      return value;
    }
    case Kind::negate:
      return -evaluate(*node.children[0], unit, lookup);
    case Kind::product: {
      R value = unit;
      for (const auto& c : node.children) value = value * evaluate(*c, unit, lookup);
      return value;
    }
    case Kind::sum: {
      R value = zero_like(unit);
      for (const auto& c : node.children) value = value + evaluate(*c, unit, lookup);
      return value;
    }
  }
  throw std::logic_error("unknown expression node");
}

// Free-ring value: generators map to their letters, starred ones to conjugates.
FreeElement to_free_element(const ExprNode& node);
FreeElement parse_free_element(std::string_view text, const SessionConfig& config);

// Operator file: "a[<k>] = <expr>" lines, '#' comments, blank lines ignored.
struct OperatorSource {
  std::map<int, ExprPtr> coeffs;
};

OperatorSource parse_operator_text(std::string_view text, const SessionConfig& config);
OperatorSource parse_operator(const std::filesystem::path& file, const SessionConfig& config);

template <DifferentialRing R>
DiffOperator<R> build_operator(const OperatorSource& source, const R& unit,
                               const std::function<R(const std::string&, bool)>& lookup) {
  if (source.coeffs.empty()) return {};
  std::vector<R> coeffs(static_cast<std::size_t>(source.coeffs.rbegin()->first) + 1, zero_like(unit));
  for (const auto& [k, expr] : source.coeffs) coeffs[static_cast<std::size_t>(k)] = evaluate(*expr, unit, lookup);
  return DiffOperator<R>(std::move(coeffs));
}

DiffOperator<FreeElement> to_free_operator(const OperatorSource& source);

// Jet file: "entry[i][j] = <polynomial in x>" lines (bijet mode: in x and t)
// with rational coefficients. Missing entries are zero; terms past the
// configured orders are dropped.
MatrixJet parse_jet_text(std::string_view text, const SessionConfig& config);
MatrixJet parse_jet(const std::filesystem::path& file, const SessionConfig& config);

}  // namespace ncdiff
