#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace zetarel {

using Int = mpz_class;
using Rat = mpq_class;

inline bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}
inline bool is_prime(int64_t n) { return is_prime(Int(n)); }

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Largest squarefree d with n = d*f^2 (n > 0), by trial division.
int64_t squarefree_part(int64_t n);

// Odd primes <= bound, increasing.
std::vector<int64_t> odd_primes_upto(int64_t bound);

int64_t mod_pow(int64_t base, int64_t e, int64_t m);

}  // namespace zetarel
