#include "gtbound/rational.hpp"

#include "gtbound/error.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace gtbound {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
  if (s.empty()) throw DomainError("empty rational literal");

  Rational q;
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      if (s.find_first_of("eE/") != std::string::npos) {
        throw DomainError("unsupported rational literal '" + s + "'");
      }
      bool negative = s[0] == '-';
      std::string body = (negative || s[0] == '+') ? s.substr(1) : s;
      dot = body.find('.');
      std::string digits = body.substr(0, dot) + body.substr(dot + 1);
      if (digits.empty()) throw DomainError("bad decimal '" + s + "'");
      mpz_class num(digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, body.size() - dot - 1);
      q = Rational(num, den);
      if (negative) q = -q;
    } else {
      if (s[0] == '+') s.erase(0, 1);
      q.set_str(s, 10);
    }
  } catch (const std::invalid_argument&) {
    throw DomainError("bad rational literal '" + s + "'");
  }
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  return Rational(x);
}

Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace gtbound
