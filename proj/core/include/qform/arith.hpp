#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qform/errors.hpp"

namespace qform {

using Int = std::int64_t;
__extension__ typedef __int128 Wide;
using Vec = std::vector<Int>;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

/// Narrows a 128-bit intermediate back to 64 bits or throws OverflowError.
Int narrow(Wide value);

/// Throws OverflowError when |value| exceeds 2^125, leaving headroom for one
/// more addition or doubling in 128-bit arithmetic.
Wide guard_wide(Wide value);
Wide wide_mul(Wide a, Wide b);

Int gcd(Int a, Int b);
Int gcd(std::span<const Int> values);

struct ExtendedGcd {
  Int g;
  Int x;
  Int y;  // a*x + b*y = g >= 0
};
ExtendedGcd extended_gcd(Int a, Int b);

/// floor(sqrt(n)) for n >= 0.
Int isqrt(Int n);
Wide isqrt(Wide n);
bool is_square(Int n);

Int floor_div(Int a, Int b);
Int ceil_div(Int a, Int b);
Wide floor_div(Wide a, Wide b);
Wide ceil_div(Wide a, Wide b);
Int mod(Int a, Int m);  // result in [0, m)

bool is_prime(Int n);
/// Distinct prime divisors in increasing order; n >= 1.
std::vector<Int> prime_divisors(Int n);
/// p-adic valuation of n != 0.
int valuation(Int n, Int p);
Int ipow(Int base, int exponent);
/// Legendre symbol (a / p) for an odd prime p.
int legendre(Int a, Int p);

}  // namespace qform
