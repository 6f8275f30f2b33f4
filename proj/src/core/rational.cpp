#include "entrolab/rational.hpp"

#include <mpfr.h>

#include <cctype>
#include <string>

#include "entrolab/errors.hpp"

namespace entrolab {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational parse_decimal(std::string_view text, std::string_view original) {
  auto fail = [&] { return ParseError(std::string(original), "not a rational number"); };
  bool negative = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    text = text.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part[0] == '+' || exp_part[0] == '-')) {
      exp_negative = exp_part[0] == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) throw fail();
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw fail();
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) throw fail();
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(text)) throw fail();
    digits = std::string(text);
  }
  Rational value{Integer(digits, 10)};
  if (exponent > 0) value *= pow10(static_cast<unsigned long>(exponent));
  if (exponent < 0) value /= pow10(static_cast<unsigned long>(-exponent));
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view original = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError(std::string(original), "empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_decimal(text.substr(0, slash), original);
    const Rational den = parse_decimal(text.substr(slash + 1), original);
    if (den == 0) throw ParseError(std::string(original), "zero denominator");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }
  return parse_decimal(text, original);
}

std::string format_rational(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

long double to_long_double(const Rational& value) {
  mpfr_t x;
  mpfr_init2(x, 128);
  mpfr_set_q(x, value.get_mpq_t(), MPFR_RNDN);
  const long double out = mpfr_get_ld(x, MPFR_RNDN);
  mpfr_clear(x);
  return out;
}

Rational rational_from_double(double value) {
  Rational q(value);
  q.canonicalize();
  return q;
}

}  // namespace entrolab
