#include "zetarel/bigint.hpp"

#include "zetarel/error.hpp"

namespace zetarel {

int64_t squarefree_part(int64_t n) {
  if (n <= 0) fail(Err::InvalidInput, "squarefree_part needs n > 0");
  int64_t d = 1;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e & 1) d *= p;
  }
  return d * n;  // remaining n is prime or 1
}

std::vector<int64_t> odd_primes_upto(int64_t bound) {
  std::vector<int64_t> out;
  if (bound < 3) return out;
  std::vector<bool> composite(static_cast<size_t>(bound) + 1, false);
  for (int64_t i = 2; i * i <= bound; ++i)
    if (!composite[i])
      for (int64_t j = i * i; j <= bound; j += i) composite[j] = true;
  for (int64_t i = 3; i <= bound; i += 2)
    if (!composite[i]) out.push_back(i);
  return out;
}

int64_t mod_pow(int64_t base, int64_t e, int64_t m) {
  __int128 r = 1, b = ((base % m) + m) % m;
  while (e > 0) {
    if (e & 1) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return static_cast<int64_t>(r);
}

}  // namespace zetarel
