#include "rational.hpp"

#include <cctype>

namespace sf {

Rational rat_parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') ++pos;
  bool digits = false, slash = false;
  for (; pos < s.size(); ++pos) {
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      digits = true;
    } else if (s[pos] == '/' && !slash && digits) {
      slash = true;
      digits = false;
    } else {
      throw std::invalid_argument("malformed rational: " + text);
    }
  }
  if (!digits) throw std::invalid_argument("malformed rational: " + text);
  Rational r(s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string rat_str_frac(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string rat_decimal(const Rational& value, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = value * Rational(scale);
  mpz_class num = scaled.get_num(), den = scaled.get_den();
  // round half away from zero
  mpz_class twice = 2 * abs(num) + den;
  mpz_class q = twice / (2 * den);
  bool neg = sgn(num) < 0;
  mpz_class ip = q / scale, fp = q % scale;
  std::string out = ip.get_str();
  if (digits > 0) {
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
    out += "." + frac;
  }
  if (neg && q != 0) out = "-" + out;
  return out;
}

}  // namespace sf
