#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace twistparity {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Exponent of the prime p in n (n != 0).
int valuation(Integer n, i64 p);
/// Exponent of p in a nonzero rational; negative when p divides the denominator.
int valuation(const Rational& q, i64 p);

i64 mod(const Integer& n, i64 m);
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 base, u64 exp, i64 m);
/// Inverse of a modulo m; a must be coprime to m.
i64 invmod(i64 a, i64 m);

bool is_prime(i64 n);
/// Miller-Rabin with enough bases to be deterministic below 3.3e24 and probabilistic beyond.
bool is_probable_prime(const Integer& n);

/// Legendre symbol (a/p) for an odd prime p.
int legendre(i64 a, i64 p);
/// Kronecker symbol (a/n) for n > 0.
int kronecker(Integer a, i64 n);

/// Square root of a quadratic residue a modulo an odd prime p (Tonelli-Shanks).
i64 sqrt_mod_prime(i64 a, i64 p);

bool is_perfect_square(const Integer& n);
Integer isqrt(const Integer& n);

/// Distinct prime factors of |n| in increasing order.
/// Throws Error(Unfactored) if a composite cofactor without small factors remains.
std::vector<i64> prime_factors(Integer n);

std::vector<i64> primes_up_to(i64 bound);

bool is_squarefree(i64 n);

std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

}  // namespace twistparity
