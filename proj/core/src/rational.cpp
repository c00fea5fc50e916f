#include "qlp/rational.hpp"

#include <cctype>

#include "qlp/errors.hpp"

namespace qlp {

namespace {

using Int = boost::multiprecision::mpz_int;

bool parse_integer(const std::string& s, Int& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  out = Int(s);
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw StructuralError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Int num, den;
    if (!parse_integer(s.substr(0, slash), num) ||
        !parse_integer(s.substr(slash + 1), den))
      throw StructuralError("bad rational literal: " + text);
    if (den == 0) throw StructuralError("zero denominator: " + text);
    return Rational(num, den);
  }

  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || digits.empty() || digits == "-" || digits == "+")
      throw StructuralError("bad rational literal: " + text);
    Int num;
    if (!parse_integer(digits, num))
      throw StructuralError("bad rational literal: " + text);
    Int den = 1;
    for (std::size_t k = 0; k < frac_len; ++k) den *= 10;
    return Rational(num, den);
  }

  Int num;
  if (!parse_integer(s, num))
    throw StructuralError("bad rational literal: " + text);
  return Rational(num);
}

std::string fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

std::optional<std::string> decimal_string(const Rational& r) {
  Int den = denominator(r);
  int twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return std::nullopt;

  int digits = std::max(twos, fives);
  Int num = numerator(r);
  bool neg = num < 0;
  if (neg) num = -num;
  Int scale = 1;
  for (int k = 0; k < digits; ++k) scale *= 10;
  Int scaled = num * scale / denominator(r);

  std::string body = scaled.str();
  if (digits == 0) return (neg ? "-" : "") + body;
  if (body.size() <= static_cast<std::size_t>(digits))
    body.insert(0, digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, ".");
  return (neg ? "-" : "") + body;
}

std::string pretty_string(const Rational& r) {
  auto dec = decimal_string(r);
  if (dec && dec->find('.') != std::string::npos)
    return fraction_string(r) + " (" + *dec + ")";
  return fraction_string(r);
}

}  // namespace qlp
