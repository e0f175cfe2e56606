#pragma once

#include <string>

#include "json.hpp"
#include "ncdiff/diff_operator.hpp"
#include "ncdiff/free_ring.hpp"
#include "ncdiff/matrix_jet.hpp"

namespace ncdiff {

// Canonical text, e.g. "s^2 + D(s)", "2*D(s)*s", "-1/2*D0(s*')", "e", "0".
// Starred generators print as name*' and derivatives functionally.
std::string format_letter(const Letter& letter);
std::string format_word(const Word& word);
std::string format_element(const FreeElement& a);

// "D + s", "D^2 + (s^2 + D(s))*D - s".
std::string format_operator(const DiffOperator<FreeElement>& op);
// "a[2]=e, a[1]=0, a[0]=2*D(s)".
std::string format_coefficient_list(const DiffOperator<FreeElement>& op);
// Operator file body: one "a[k] = <expr>" line per nonzero coefficient.
std::string format_operator_file(const DiffOperator<FreeElement>& op);

// Header line plus one row-major coefficient table per series order, e.g.
//   jet dim=2 x-order=3
//   x^0: [[1, 0], [0, 1]]
std::string format_jet(const MatrixJet& a);
// One "a[k]:" block per coefficient, highest power first.
std::string format_jet_operator(const DiffOperator<MatrixJet>& op);

nlohmann::json to_json(const FreeElement& a);
nlohmann::json to_json(const MatrixJet& a);
nlohmann::json to_json(const DiffOperator<FreeElement>& op);
nlohmann::json to_json(const DiffOperator<MatrixJet>& op);

}  // namespace ncdiff
