#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <vector>

namespace zlab {

namespace detail {

std::vector<std::int64_t> small_primes(std::int64_t limit);
void check_sieve_bound(std::int64_t hi);

// Odd residues with 3, 5, 7, 11, 13 crossed out; period 15015 in slot units.
const std::vector<char>& presieve_pattern();

}  // namespace detail

// Calls fn(p) for every prime lo < p <= hi in increasing order, by a
// segmented odd-only sieve; nothing is stored.
template <class Fn>
void for_each_prime(std::int64_t lo, std::int64_t hi, Fn&& fn) {
  if (hi < 2 || hi <= lo) return;
  detail::check_sieve_bound(hi);
  lo = std::max<std::int64_t>(lo, 1);
  if (lo < 2) fn(std::int64_t(2));
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    if (p > lo && p <= hi) fn(p);
  }

  std::int64_t root = static_cast<std::int64_t>(std::sqrt(double(hi)));
  while (root * root > hi) --root;
  while ((root + 1) * (root + 1) <= hi) ++root;
  const auto base = detail::small_primes(root);
  const auto& pattern = detail::presieve_pattern();
  const std::int64_t period = static_cast<std::int64_t>(pattern.size());

  constexpr std::int64_t slots = 1 << 15;  // slot i stands for start + 2i
  std::vector<char> mark(slots);
  std::int64_t start = std::max<std::int64_t>(15, lo + 1);
  if (start % 2 == 0) ++start;
  // next[b]: slot (relative to the current segment) of the next odd multiple of base[b]
  std::vector<std::int64_t> next(base.size(), -1);
  std::size_t active = 6;
  for (; start <= hi; start += 2 * slots) {
    const std::int64_t end = std::min(hi, start + 2 * slots - 1);
    const std::int64_t count = (end - start) / 2 + 1;
    // slot of the odd number n in the pattern is ((n - 1) / 2) mod period
    std::int64_t off = ((start - 1) / 2) % period;
    for (std::int64_t i = 0; i < count;) {
      const std::int64_t chunk = std::min(count - i, period - off);
      std::memcpy(mark.data() + i, pattern.data() + off, chunk);
      i += chunk;
      off = 0;
    }
    for (; active < base.size() && base[active] * base[active] <= end; ++active) {
      const std::int64_t p = base[active];
      std::int64_t first = std::max(p * p, (start + p - 1) / p * p);
      if (first % 2 == 0) first += p;
      next[active] = (first - start) / 2;
    }
    for (std::size_t b = 6; b < active; ++b) {
      const std::int64_t p = base[b];
      std::int64_t j = next[b];
      for (; j < count; j += p) mark[j] = 0;
      next[b] = j - slots;
    }
    for (std::int64_t i = 0; i < count; ++i) {
      if (mark[i]) fn(start + 2 * i);
    }
  }
}

// All primes p with lo < p <= hi.
std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi);
inline std::vector<std::int64_t> primes_up_to(std::int64_t hi) { return primes_in(0, hi); }

}  // namespace zlab
