#include "ncdiff/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

namespace ncdiff {

namespace {

enum class Tok { integer, ident, star_suffix, plus, minus, times, slash, caret, lparen, rparen, lbracket, rbracket, equals, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t offset = 0;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    current_ = Token{Tok::end, "", pos_};
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      current_ = Token{Tok::integer, std::string(text_.substr(start, pos_ - start)), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      current_ = Token{Tok::ident, std::string(text_.substr(start, pos_ - start)), start};
      return;
    }
    if (c == '*' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
      pos_ += 2;
      current_ = Token{Tok::star_suffix, "*'", start};
      return;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::times; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '[': kind = Tok::lbracket; break;
      case ']': kind = Tok::rbracket; break;
      case '=': kind = Tok::equals; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    ++pos_;
    current_ = Token{kind, std::string(1, c), start};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_;
};

Token expect(Lexer& lex, Tok kind, const char* what) {
  if (lex.peek().kind != kind)
    throw ParseError(std::string("expected ") + what + ", found " + describe(lex.peek()), lex.peek().offset);
  return lex.take();
}

int parse_small_int(const Token& t) {
  if (t.text.size() > 6) throw ParseError("integer too large: " + t.text, t.offset);
  return std::stoi(t.text);
}

ExprNode node_of(ExprNode::Kind kind) {
  ExprNode node;
  node.kind = kind;
  return node;
}

ExprPtr make(ExprNode node) { return std::make_shared<const ExprNode>(std::move(node)); }

class ExprParser {
 public:
  ExprParser(Lexer& lex, const SessionConfig& config) : lex_(lex), config_(config) {}

  ExprPtr expr() {
    ExprNode sum = node_of(ExprNode::Kind::sum);
    sum.offset = lex_.peek().offset;
    sum.children.push_back(term());
    while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
      const Token op = lex_.take();
      ExprPtr rhs = term();
      if (op.kind == Tok::minus) {
        ExprNode neg = node_of(ExprNode::Kind::negate);
        neg.offset = op.offset;
        neg.children.push_back(std::move(rhs));
        rhs = make(std::move(neg));
      }
      sum.children.push_back(std::move(rhs));
    }
    if (sum.children.size() == 1) return sum.children.front();
    return make(std::move(sum));
  }

 private:
  ExprPtr term() {
    ExprNode prod = node_of(ExprNode::Kind::product);
    prod.offset = lex_.peek().offset;
    prod.children.push_back(unary());
    while (lex_.peek().kind == Tok::times) {
      lex_.take();
      prod.children.push_back(unary());
    }
    if (prod.children.size() == 1) return prod.children.front();
    return make(std::move(prod));
  }

  ExprPtr unary() {
    if (lex_.peek().kind == Tok::minus) {
      ExprNode neg = node_of(ExprNode::Kind::negate);
      neg.offset = lex_.take().offset;
      neg.children.push_back(unary());
      return make(std::move(neg));
    }
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr base = primary();
    if (lex_.peek().kind != Tok::caret) return base;
    const Token caret = lex_.take();
    ExprNode pow = node_of(ExprNode::Kind::power);
    pow.offset = caret.offset;
    pow.count = parse_small_int(expect(lex_, Tok::integer, "integer exponent"));
    pow.children.push_back(std::move(base));
    return make(std::move(pow));
  }

  ExprPtr derivation(ExprNode::Kind kind, std::size_t offset) {
    ExprNode node = node_of(kind);
    node.offset = offset;
    if (lex_.peek().kind == Tok::caret) {
      lex_.take();
      node.count = parse_small_int(expect(lex_, Tok::integer, "derivative order"));
    }
    expect(lex_, Tok::lparen, "'('");
    node.children.push_back(expr());
    expect(lex_, Tok::rparen, "')'");
    return make(std::move(node));
  }

  ExprPtr primary() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Tok::integer: {
        lex_.take();
        std::string literal = t.text;
        if (lex_.peek().kind == Tok::slash) {
          lex_.take();
          const Token den = expect(lex_, Tok::integer, "denominator");
          if (std::all_of(den.text.begin(), den.text.end(), [](char c) { return c == '0'; }))
            throw ParseError("zero denominator", den.offset);
          literal += "/" + den.text;
        }
        ExprNode node = node_of(ExprNode::Kind::scalar);
        node.value = parse_scalar(literal);
        node.offset = t.offset;
        return make(std::move(node));
      }
      case Tok::lparen: {
        lex_.take();
        ExprPtr inner = expr();
        expect(lex_, Tok::rparen, "')'");
        return inner;
      }
      case Tok::ident: {
        lex_.take();
        if (t.text == "e") {
          ExprNode node = node_of(ExprNode::Kind::unit);
          node.offset = t.offset;
          return make(std::move(node));
        }
        if (t.text == "D") return derivation(ExprNode::Kind::derive, t.offset);
        if (t.text == "D0") return derivation(ExprNode::Kind::derive_t, t.offset);
        if (!config_.declares(t.text)) throw ParseError("undeclared generator '" + t.text + "'", t.offset);
        ExprNode node = node_of(ExprNode::Kind::generator);
        node.name = t.text;
        node.offset = t.offset;
        if (lex_.peek().kind == Tok::star_suffix) {
          lex_.take();
          node.star = true;
        }
        return make(std::move(node));
      }
      default:
        throw ParseError("expected a factor, found " + describe(t), t.offset);
    }
  }

  Lexer& lex_;
  const SessionConfig& config_;
};

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Splits into lines with '#' comments removed; yields (line number, body).
std::vector<std::pair<int, std::string>> logical_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string line(text.substr(start, end - start));
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) out.emplace_back(number, std::move(line));
    start = end + 1;
  }
  return out;
}

// Bivariate polynomial keyed by (t-degree, x-degree).
using Poly = std::map<std::pair<int, int>, Scalar>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) out[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Poly poly_add(Poly a, const Poly& b, int sign) {
  for (const auto& [k, v] : b) a[k] += sign > 0 ? v : Scalar(-v);
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  return a;
}

class PolyParser {
 public:
  PolyParser(Lexer& lex, bool allow_t) : lex_(lex), allow_t_(allow_t) {}

  Poly expr() {
    Poly out = term();
    while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
      const int sign = lex_.take().kind == Tok::plus ? 1 : -1;
      out = poly_add(std::move(out), term(), sign);
    }
    return out;
  }

 private:
  Poly term() {
    Poly out = unary();
    while (lex_.peek().kind == Tok::times) {
      lex_.take();
      out = poly_mul(out, unary());
    }
    return out;
  }

  Poly unary() {
    if (lex_.peek().kind == Tok::minus) {
      lex_.take();
      return poly_add(Poly{}, unary(), -1);
    }
    Poly base = primary();
    if (lex_.peek().kind != Tok::caret) return base;
    lex_.take();
    const int n = parse_small_int(expect(lex_, Tok::integer, "integer exponent"));
    Poly out{{{0, 0}, Scalar(1)}};
    for (int i = 0; i < n; ++i) out = poly_mul(out, base);
    return out;
  }

  Poly primary() {
    const Token t = lex_.peek();
    if (t.kind == Tok::integer) {
      lex_.take();
      std::string literal = t.text;
      if (lex_.peek().kind == Tok::slash) {
        lex_.take();
        literal += "/" + expect(lex_, Tok::integer, "denominator").text;
      }
      Scalar v = parse_scalar(literal);
      return v == 0 ? Poly{} : Poly{{{0, 0}, v}};
    }
    if (t.kind == Tok::lparen) {
      lex_.take();
      Poly inner = expr();
      expect(lex_, Tok::rparen, "')'");
      return inner;
    }
    if (t.kind == Tok::ident && t.text == "x") {
      lex_.take();
      return Poly{{{0, 1}, Scalar(1)}};
    }
    if (t.kind == Tok::ident && t.text == "t") {
      if (!allow_t_) throw ParseError("'t' is only allowed in bijet mode", t.offset);
      lex_.take();
      return Poly{{{1, 0}, Scalar(1)}};
    }
    throw ParseError("expected a number, x, t or '(', found " + describe(t), t.offset);
  }

  Lexer& lex_;
  bool allow_t_;
};

}  // namespace

void SessionConfig::validate() const {
  if (ring_mode == RingMode::free) return;
  if (matrix_dim < 1) throw Error("jet modes need --dim >= 1");
  if (x_order < 0) throw Error("jet modes need --x-order >= 0");
  if (ring_mode == RingMode::bijet && t_order < 0) throw Error("bijet mode needs --t-order >= 0");
}

bool SessionConfig::declares(std::string_view name) const {
  return std::find(generators.begin(), generators.end(), name) != generators.end();
}

ExprPtr parse_expr(std::string_view text, const SessionConfig& config) {
  Lexer lex(text);
  ExprParser parser(lex, config);
  ExprPtr out = parser.expr();
  if (lex.peek().kind != Tok::end)
    throw ParseError("unexpected " + describe(lex.peek()) + " after expression", lex.peek().offset);
  return out;
}

FreeElement to_free_element(const ExprNode& node) {
  return evaluate<FreeElement>(node, FreeElement::one(), [](const std::string& name, bool star) {
    auto g = FreeElement::generator(name);
    return star ? conjugate(g) : g;
  });
}

FreeElement parse_free_element(std::string_view text, const SessionConfig& config) {
  return to_free_element(*parse_expr(text, config));
}

OperatorSource parse_operator_text(std::string_view text, const SessionConfig& config) {
  OperatorSource out;
  for (const auto& [number, line] : logical_lines(text)) {
    try {
      Lexer lex(line);
      const Token head = expect(lex, Tok::ident, "'a'");
      if (head.text != "a") throw ParseError("expected 'a', found '" + head.text + "'", head.offset);
      expect(lex, Tok::lbracket, "'['");
      const Token index = expect(lex, Tok::integer, "coefficient index");
      const int k = parse_small_int(index);
      expect(lex, Tok::rbracket, "']'");
      expect(lex, Tok::equals, "'='");
      ExprParser parser(lex, config);
      ExprPtr value = parser.expr();
      if (lex.peek().kind != Tok::end)
        throw ParseError("unexpected " + describe(lex.peek()) + " after expression", lex.peek().offset);
      if (out.coeffs.contains(k)) throw ParseError("duplicate index a[" + std::to_string(k) + "]", index.offset);
      out.coeffs.emplace(k, std::move(value));
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      throw ParseError(e.message(), e.offset(), number);
    }
  }
  return out;
}

OperatorSource parse_operator(const std::filesystem::path& file, const SessionConfig& config) {
  return parse_operator_text(read_file(file), config);
}

DiffOperator<FreeElement> to_free_operator(const OperatorSource& source) {
  if (source.coeffs.empty()) return {};
  std::vector<FreeElement> coeffs(static_cast<std::size_t>(source.coeffs.rbegin()->first) + 1);
  for (const auto& [k, expr] : source.coeffs) coeffs[static_cast<std::size_t>(k)] = to_free_element(*expr);
  return DiffOperator<FreeElement>(std::move(coeffs));
}

MatrixJet parse_jet_text(std::string_view text, const SessionConfig& config) {
  const bool bivariate = config.ring_mode == RingMode::bijet;
  const int dim = config.matrix_dim;
  const int t_order = bivariate ? config.t_order : 0;
  const int x_order = config.x_order;
  std::vector<std::vector<RationalMatrix>> levels(static_cast<std::size_t>(t_order) + 1,
                                                  std::vector<RationalMatrix>(static_cast<std::size_t>(x_order) + 1,
                                                                              RationalMatrix(dim)));
  std::map<std::pair<int, int>, bool> seen;
  for (const auto& [number, line] : logical_lines(text)) {
    try {
      Lexer lex(line);
      const Token head = expect(lex, Tok::ident, "'entry'");
      if (head.text != "entry") throw ParseError("expected 'entry', found '" + head.text + "'", head.offset);
      int index[2];
      for (int& idx : index) {
        expect(lex, Tok::lbracket, "'['");
        const Token t = expect(lex, Tok::integer, "entry index");
        idx = parse_small_int(t);
        if (idx >= dim) throw ParseError("entry index " + t.text + " out of range for dim " + std::to_string(dim), t.offset);
        expect(lex, Tok::rbracket, "']'");
      }
      expect(lex, Tok::equals, "'='");
      PolyParser parser(lex, bivariate);
      Poly poly = parser.expr();
      if (lex.peek().kind != Tok::end)
        throw ParseError("unexpected " + describe(lex.peek()) + " after polynomial", lex.peek().offset);
      if (seen[{index[0], index[1]}])
        throw ParseError("duplicate entry[" + std::to_string(index[0]) + "][" + std::to_string(index[1]) + "]",
                         head.offset);
      seen[{index[0], index[1]}] = true;
      for (const auto& [deg, value] : poly) {
        if (deg.first > t_order || deg.second > x_order) continue;
        levels[deg.first][deg.second](index[0], index[1]) = value;
      }
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      throw ParseError(e.message(), e.offset(), number);
    }
  }
  if (!bivariate) return MatrixJet::series(levels.front(), x_order);
  return MatrixJet::bivariate(levels, std::vector<int>(levels.size(), x_order));
}

MatrixJet parse_jet(const std::filesystem::path& file, const SessionConfig& config) {
  return parse_jet_text(read_file(file), config);
}

}  // namespace ncdiff
