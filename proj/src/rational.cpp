#include "catfm/rational.hpp"

#include <algorithm>
#include <cctype>

#include "catfm/error.hpp"

namespace catfm {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(const std::string& digits, const std::string& whole) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    throw Error(ErrorKind::ParseError, {whole}, "not a rational number");
  }
  return cpp_int(digits);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    const cpp_int num = parse_integer(body.substr(0, slash), text);
    const cpp_int den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorKind::ParseError, {text}, "zero denominator");
    value = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    const std::string int_part = body.substr(0, dot);
    const std::string frac_part = body.substr(dot + 1);
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const cpp_int whole = int_part.empty() ? cpp_int(0) : parse_integer(int_part, text);
    const cpp_int frac = frac_part.empty() ? cpp_int(0) : parse_integer(frac_part, text);
    value = Rational(whole * scale + frac, scale);
  } else {
    value = Rational(parse_integer(body, text));
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace catfm
