#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "fsp/errors.hpp"

namespace fsp {

// Arbitrary-precision rational kept in lowest terms. Every value that enters
// solver logic is one of these; there is no floating point fast path.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline BigInt ceil_of(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline BigInt floor_of(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

// "n" for integers, "n/d" otherwise. Inverse of parse_rational.
inline std::string format_rational(const Rational& r) {
  if (is_integer(r)) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

// Accepts integers ("7", "-3"), decimals ("0.25", "-.5", "3.") and fractions
// ("3/10", "-3/10"). Decimals are read exactly: "0.3" is 3/10.
inline Rational parse_rational(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Rational {
    throw InputError("not a rational number: \"" + original + "\"");
  };
  if (text.empty()) return fail();

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) return fail();
    BigInt d(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator: \"" + original + "\"");
    value = Rational(BigInt(std::string(num), 10), d);
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return fail();
    if ((!whole.empty() && !detail::all_digits(whole)) ||
        (!frac.empty() && !detail::all_digits(frac))) {
      return fail();
    }
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    const std::string digits = std::string(whole) + std::string(frac);
    value = Rational(BigInt(digits.empty() ? "0" : digits, 10), scale);
  } else {
    if (!detail::all_digits(text)) return fail();
    value = Rational(BigInt(std::string(text), 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace fsp
