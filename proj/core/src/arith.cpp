#include "qform/arith.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace qform {

namespace {

constexpr Wide kWideLimit = Wide{1} << 125;

[[noreturn]] void overflow(const char* what) {
  throw OverflowError(std::string("integer overflow in ") + what);
}

}  // namespace

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) overflow("addition");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) overflow("subtraction");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) overflow("multiplication");
  return r;
}

Int narrow(Wide value) {
  if (value > INT64_MAX || value < INT64_MIN) overflow("narrowing");
  return static_cast<Int>(value);
}

Wide guard_wide(Wide value) {
  if (value > kWideLimit || value < -kWideLimit) overflow("128-bit arithmetic");
  return value;
}

Wide wide_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) overflow("128-bit multiplication");
  return guard_wide(r);
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int gcd(std::span<const Int> values) {
  Int g = 0;
  for (Int v : values) g = std::gcd(g, v);
  return g;
}

ExtendedGcd extended_gcd(Int a, Int b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

Wide isqrt(Wide n) {
  if (n < 0) throw DomainError("isqrt of a negative number");
  if (n <= INT64_MAX) return isqrt(static_cast<Int>(n));
  // Newton iteration from an upper bound.
  Wide x = n;
  int bits = 0;
  for (Wide t = n; t > 0; t >>= 1) ++bits;
  x = Wide{1} << ((bits + 1) / 2);
  while (true) {
    Wide y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

Int isqrt(Int n) {
  if (n < 0) throw DomainError("isqrt of a negative number");
  // The double estimate is off by at most a few units below 2^63.
  auto x = static_cast<Int>(std::sqrt(static_cast<double>(n)));
  while (x > 0 && (x > 3037000499 || x * x > n)) --x;
  while (x < 3037000499 && (x + 1) * (x + 1) <= n) ++x;
  return x;
}

bool is_square(Int n) {
  if (n < 0) return false;
  Int s = isqrt(n);
  return s * s == n;
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<Int> prime_divisors(Int n) {
  if (n < 1) throw DomainError("prime_divisors needs n >= 1");
  std::vector<Int> out;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

int valuation(Int n, Int p) {
  if (n == 0) throw DomainError("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

Int ipow(Int base, int exponent) {
  Int r = 1;
  for (int i = 0; i < exponent; ++i) r = checked_mul(r, base);
  return r;
}

int legendre(Int a, Int p) {
  a = mod(a, p);
  if (a == 0) return 0;
  // Euler's criterion.
  Wide result = 1, b = a;
  Int e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = result * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

}  // namespace qform
