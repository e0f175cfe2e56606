#include "ncdiff/scalar.hpp"

#include <cctype>

#include "ncdiff/errors.hpp"

namespace ncdiff {

Scalar binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Scalar(out);
}

std::string to_string(const Scalar& value) { return value.get_str(); }

Scalar parse_scalar(std::string_view text) {
  std::size_t i = 0;
  auto digits = [&](std::size_t start) {
    std::size_t j = start;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == start) throw ParseError("expected digits in rational literal", start);
    return j;
  };
  if (i < text.size() && text[i] == '-') ++i;
  std::size_t end = digits(i);
  if (end < text.size() && text[end] == '/') end = digits(end + 1);
  if (end != text.size()) throw ParseError("trailing characters in rational literal", end);
  Scalar out;
  if (out.set_str(std::string(text), 10) != 0) throw ParseError("malformed rational literal", 0);
  if (out.get_den() == 0) throw ParseError("zero denominator", 0);
  out.canonicalize();
  return out;
}

}  // namespace ncdiff
