#include "cardvote/rational.hpp"

#include <cctype>

#include "cardvote/errors.hpp"

namespace cardvote {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("malformed rational '" + std::string(whole) + "'");
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return make_rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if (int_part.empty()) int_part = "0";
    if (frac.empty()) frac = "0";
    if (!all_digits(int_part) || !all_digits(frac))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer num = Integer(std::string(int_part), 10) * scale + Integer(std::string(frac), 10);
    if (negative) num = -num;
    return make_rational(num, scale);
  }
  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

std::int64_t icbrt(std::int64_t x) {
  if (x < 0) throw PreconditionError("icbrt of a negative number");
  auto cube = [](std::int64_t t) { return static_cast<__int128>(t) * t * t; };
  std::int64_t lo = 0, hi = 1;
  while (cube(hi) <= x) hi *= 2;
  // invariant: lo^3 <= x < hi^3
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (cube(mid) <= x) lo = mid; else hi = mid;
  }
  return lo;
}

}  // namespace cardvote
