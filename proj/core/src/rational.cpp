#include "shufflekit/rational.hpp"

#include <cmath>
#include <vector>

#include "shufflekit/errors.hpp"

namespace shufflekit {

std::string to_rational_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

std::string to_decimal_string(const Rational& q, int significant_digits) {
  if (significant_digits < 1) {
    throw InvalidArgument("precision must be at least one significant digit");
  }
  if (q == 0) return "0";
  // Enough bits that rounding to the requested digits is exact in practice.
  const auto bits = static_cast<mp_bitcnt_t>(significant_digits * 4 + 128);
  mpf_class value(0, bits);
  value = q;
  const int buffer = significant_digits + 64;
  std::vector<char> text(buffer);
  gmp_snprintf(text.data(), text.size(), "%.*Fg", significant_digits, value.get_mpf_t());
  return std::string(text.data());
}

double to_double(const Rational& q) { return q.get_d(); }

BigInt binomial(const BigInt& top, unsigned long k) {
  if (top < 0) throw InvalidArgument("binomial of a negative count");
  if (top < k) return 0;
  BigInt out;
  mpz_bin_ui(out.get_mpz_t(), top.get_mpz_t(), k);
  return out;
}

}  // namespace shufflekit
