#include "mcoe/rational.hpp"

#include <cctype>

#include "mcoe/error.hpp"

namespace mcoe {

namespace {

bool is_integer_literal(std::string_view text, bool allow_sign) {
  if (text.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && text[0] == '-') i = 1;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

}  // namespace

std::string to_string(const Rational& value) {
  const Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_integer_literal(num_text, true)) {
    throw InvalidInput("malformed rational '" + std::string(text) + "'");
  }
  const Integer num{std::string(num_text)};
  if (slash == std::string_view::npos) return Rational(num);

  const auto den_text = text.substr(slash + 1);
  if (!is_integer_literal(den_text, false)) {
    throw InvalidInput("malformed rational '" + std::string(text) + "'");
  }
  const Integer den{std::string(den_text)};
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  if (boost::multiprecision::gcd(num, den) != 1) {
    throw InvalidInput("rational '" + std::string(text) + "' is not in lowest terms");
  }
  return Rational(num, den);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace mcoe
