#include "zlab/primes.hpp"

#include "zlab/precision.hpp"

namespace zlab {

namespace detail {

std::vector<std::int64_t> small_primes(std::int64_t limit) {
  std::vector<char> mark(limit + 1, 1);
  std::vector<std::int64_t> out;
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (!mark[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) mark[j] = 0;
  }
  return out;
}

void check_sieve_bound(std::int64_t hi) {
  if (hi > (std::int64_t(1) << 42)) throw DomainError("sieve bound too large");
}

const std::vector<char>& presieve_pattern() {
  static const std::vector<char> pattern = [] {
    const std::int64_t period = 3 * 5 * 7 * 11 * 13;
    std::vector<char> v(period, 1);
    for (std::int64_t i = 0; i < period; ++i) {
      const std::int64_t n = 2 * i + 1;
      for (std::int64_t p : {3, 5, 7, 11, 13}) {
        if (n % p == 0) v[i] = 0;
      }
    }
    return v;
  }();
  return pattern;
}

}  // namespace detail

std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for_each_prime(lo, hi, [&](std::int64_t p) { out.push_back(p); });
  return out;
}

}  // namespace zlab
