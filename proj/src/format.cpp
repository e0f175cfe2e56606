#include "ncdiff/format.hpp"

#include <sstream>

namespace ncdiff {

namespace {

std::string power_suffix(int n) { return n == 1 ? "" : "^" + std::to_string(n); }

std::string format_matrix(const RationalMatrix& m) {
  if (m.dim() == 1) return to_string(m(0, 0));
  std::string out = "[";
  for (int i = 0; i < m.dim(); ++i) {
    out += i ? ", [" : "[";
    for (int j = 0; j < m.dim(); ++j) out += (j ? ", " : "") + to_string(m(i, j));
    out += "]";
  }
  return out + "]";
}

nlohmann::json matrix_json(const RationalMatrix& m) {
  auto rows = nlohmann::json::array();
  for (int i = 0; i < m.dim(); ++i) {
    auto row = nlohmann::json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json order_json(int order) {
  if (order == kExactOrder) return "exact";
  return order;
}

}  // namespace

std::string format_letter(const Letter& letter) {
  std::string out = Symbols::name(letter.gen);
  if (letter.star) out += "*'";
  if (letter.dorder > 0) out = "D" + power_suffix(letter.dorder) + "(" + out + ")";
  if (letter.d0order > 0) out = "D0" + power_suffix(letter.d0order) + "(" + out + ")";
  return out;
}

std::string format_word(const Word& word) {
  if (word.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < word.size();) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    if (!out.empty()) out += "*";
    out += format_letter(word[i]) + power_suffix(static_cast<int>(j - i));
    i = j;
  }
  return out;
}

std::string format_element(const FreeElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [word, coeff] : a.terms()) {
    const bool negative = coeff < 0;
    Scalar mag = abs(coeff);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (word.empty())
      out += mag == 1 ? "e" : to_string(mag);
    else if (mag == 1)
      out += format_word(word);
    else
      out += to_string(mag) + "*" + format_word(word);
  }
  return out;
}

std::string format_operator(const DiffOperator<FreeElement>& op) {
  if (op.is_zero()) return "0";
  std::string out;
  for (int k = op.order(); k >= 0; --k) {
    const auto& c = op[k];
    if (c.is_zero()) continue;
    const std::string dk = k == 0 ? "" : "D" + power_suffix(k);
    bool negative = false;
    std::string body;
    if (c == FreeElement::one()) {
      body = k == 0 ? "e" : dk;
    } else if (c == -FreeElement::one()) {
      negative = true;
      body = k == 0 ? "e" : dk;
    } else {
      FreeElement shown = c;
      if (c.size() == 1 && c.terms().begin()->second < 0) {
        negative = true;
        shown = -c;
      }
      std::string ct = format_element(shown);
      if (shown.size() > 1 && k > 0) ct = "(" + ct + ")";
      body = k == 0 ? ct : ct + "*" + dk;
    }
    if (out.empty())
      out = (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

std::string format_coefficient_list(const DiffOperator<FreeElement>& op) {
  if (op.is_zero()) return "a[0]=0";
  std::string out;
  for (int k = op.order(); k >= 0; --k) {
    if (!out.empty()) out += ", ";
    out += "a[" + std::to_string(k) + "]=" + format_element(op[k]);
  }
  return out;
}

std::string format_operator_file(const DiffOperator<FreeElement>& op) {
  std::string out;
  for (int k = op.order(); k >= 0; --k) {
    if (op[k].is_zero()) continue;
    out += "a[" + std::to_string(k) + "] = " + format_element(op[k]) + "\n";
  }
  return out;
}

std::string format_jet(const MatrixJet& a) {
  std::ostringstream out;
  auto order_text = [](int order) { return order == kExactOrder ? std::string("exact") : std::to_string(order); };
  if (a.is_bivariate()) {
    out << "bijet dim=" << a.dim() << " t-order=" << a.t_order() << " x-orders=";
    for (int m = 0; m <= a.t_order(); ++m) out << (m ? "," : "") << order_text(a.x_order(m));
  } else {
    out << "jet dim=" << a.dim() << " x-order=" << order_text(a.x_order());
  }
  out << "\n";
  for (int m = 0; m <= a.t_order(); ++m) {
    const auto coeffs = a.level_coefficients(m);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (a.is_bivariate()) out << "t^" << m << " ";
      out << "x^" << k << ": " << format_matrix(coeffs[k]) << "\n";
    }
  }
  return out.str();
}

std::string format_jet_operator(const DiffOperator<MatrixJet>& op) {
  if (op.is_zero()) return "zero operator\n";
  std::string out;
  for (int k = op.order(); k >= 0; --k) out += "a[" + std::to_string(k) + "]: " + format_jet(op[k]);
  return out;
}

nlohmann::json to_json(const FreeElement& a) {
  auto terms = nlohmann::json::array();
  for (const auto& [word, coeff] : a.terms()) {
    auto letters = nlohmann::json::array();
    for (const auto& l : word)
      letters.push_back({{"gen", Symbols::name(l.gen)}, {"star", l.star}, {"d", l.dorder}, {"d0", l.d0order}});
    terms.push_back({{"word", std::move(letters)}, {"coeff", to_string(coeff)}});
  }
  return {{"terms", std::move(terms)}};
}

nlohmann::json to_json(const MatrixJet& a) {
  auto orders = nlohmann::json::array();
  auto levels = nlohmann::json::array();
  for (int m = 0; m <= a.t_order(); ++m) {
    orders.push_back(order_json(a.x_order(m)));
    auto level = nlohmann::json::array();
    for (const auto& c : a.level_coefficients(m)) level.push_back(matrix_json(c));
    levels.push_back(std::move(level));
  }
  nlohmann::json out{{"dim", a.dim()}, {"t_order", a.t_order()}, {"order", std::move(orders)}};
  out["coeffs"] = std::move(levels);
  return out;
}

nlohmann::json to_json(const DiffOperator<FreeElement>& op) {
  auto coeffs = nlohmann::json::array();
  for (const auto& c : op.coeffs()) coeffs.push_back(to_json(c));
  return {{"order", op.order()}, {"coeffs", std::move(coeffs)}};
}

nlohmann::json to_json(const DiffOperator<MatrixJet>& op) {
  auto coeffs = nlohmann::json::array();
  for (const auto& c : op.coeffs()) coeffs.push_back(to_json(c));
  return {{"order", op.order()}, {"coeffs", std::move(coeffs)}};
}

}  // namespace ncdiff
