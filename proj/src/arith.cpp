#include "twistparity/arith.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "twistparity/errors.hpp"

namespace twistparity {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::UnsupportedPlace: return "UnsupportedPlace";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::ClassNumberNotOne: return "ClassNumberNotOne";
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::GeneratorSearchExhausted: return "GeneratorSearchExhausted";
    case ErrorKind::UnitSearchExhausted: return "UnitSearchExhausted";
    case ErrorKind::Unfactored: return "Unfactored";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::ZeroTwistParameter: return "ZeroTwistParameter";
    case ErrorKind::UnsupportedRepresentation: return "UnsupportedRepresentation";
    case ErrorKind::WrongRepClass: return "WrongRepClass";
    case ErrorKind::ParityUnavailable: return "ParityUnavailable";
    case ErrorKind::ExplosionGuard: return "ExplosionGuard";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

int valuation(Integer n, i64 p) {
  if (n == 0) throw Error(ErrorKind::ZeroElement, "valuation of 0");
  int v = 0;
  const Integer pp = p;
  while (mpz_divisible_ui_p(n.backend().data(), static_cast<unsigned long>(p))) {
    n /= pp;
    ++v;
  }
  return v;
}

int valuation(const Rational& q, i64 p) {
  if (q == 0) throw Error(ErrorKind::ZeroElement, "valuation of 0");
  return valuation(numerator(q), p) - valuation(denominator(q), p);
}

i64 mod(const Integer& n, i64 m) {
  Integer r = n % m;
  if (r < 0) r += m;
  return r.convert_to<i64>();
}

i64 mulmod(i64 a, i64 b, i64 m) {
  __int128 r = static_cast<__int128>(a) * b % m;
  if (r < 0) r += m;
  return static_cast<i64>(r);
}

i64 powmod(i64 base, u64 exp, i64 m) {
  if (m == 1) return 0;
  base %= m;
  if (base < 0) base += m;
  i64 result = 1;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

i64 invmod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1 != 0) {
    i64 q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw Error(ErrorKind::Internal, "invmod: not invertible");
  return ((x % m) + m) % m;
}

namespace {

bool miller_rabin_u64(u64 n, u64 a) {
  if (a % n == 0) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mul = [n](u64 x, u64 y) { return static_cast<u64>(static_cast<unsigned __int128>(x) * y % n); };
  u64 x = 1, b = a % n, e = d;
  while (e) {
    if (e & 1) x = mul(x, b);
    b = mul(b, b);
    e >>= 1;
  }
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul(x, x);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (!miller_rabin_u64(static_cast<u64>(n), a)) return false;
  }
  return true;
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.backend().data(), 40) != 0;
}

int legendre(i64 a, i64 p) {
  i64 r = powmod(a, static_cast<u64>((p - 1) / 2), p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

int kronecker(Integer a, i64 n) {
  return mpz_kronecker_ui(a.backend().data(), static_cast<unsigned long>(n));
}

i64 sqrt_mod_prime(i64 a, i64 p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (legendre(a, p) != 1) throw Error(ErrorKind::Internal, "sqrt_mod_prime: nonresidue");
  if (p % 4 == 3) return powmod(a, static_cast<u64>((p + 1) / 4), p);
  i64 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  i64 z = 2;
  while (legendre(z, p) != -1) ++z;
  i64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    i64 i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    i64 b = c;
    for (i64 k = 0; k < m - i - 1; ++k) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw Error(ErrorKind::Internal, "isqrt of negative");
  Integer r;
  mpz_sqrt(r.backend().data(), n.backend().data());
  return r;
}

bool is_perfect_square(const Integer& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.backend().data()) != 0;
}

std::vector<i64> primes_up_to(i64 bound) {
  std::vector<i64> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(static_cast<size_t>(bound + 1), true);
  for (i64 i = 2; i <= bound; ++i) {
    if (!sieve[static_cast<size_t>(i)]) continue;
    out.push_back(i);
    for (i64 j = i * i; j <= bound; j += i) sieve[static_cast<size_t>(j)] = false;
  }
  return out;
}

std::vector<i64> prime_factors(Integer n) {
  if (n < 0) n = -n;
  if (n == 0) throw Error(ErrorKind::ZeroElement, "prime_factors of 0");
  std::vector<i64> out;
  auto strip = [&](i64 p) {
    if (mpz_divisible_ui_p(n.backend().data(), static_cast<unsigned long>(p))) {
      out.push_back(p);
      const Integer pp = p;
      while (mpz_divisible_ui_p(n.backend().data(), static_cast<unsigned long>(p))) n /= pp;
    }
  };
  strip(2);
  strip(3);
  constexpr i64 kTrialBound = 2000000;
  for (i64 p = 5; p <= kTrialBound; p += 6) {
    if (n == 1) break;
    if (Integer(p) * p > n) break;
    strip(p);
    strip(p + 2);
  }
  if (n != 1) {
    if (!is_probable_prime(n)) {
      throw Error(ErrorKind::Unfactored, "cofactor " + to_string(n) + " has no prime factor below " +
                                             std::to_string(kTrialBound));
    }
    if (n > Integer(std::numeric_limits<i64>::max() / 4)) {
      throw Error(ErrorKind::Unfactored, "prime factor " + to_string(n) + " exceeds the supported range");
    }
    out.push_back(n.convert_to<i64>());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_squarefree(i64 n) {
  if (n == 0) return false;
  if (n < 0) n = -n;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace twistparity
