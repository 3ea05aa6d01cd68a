#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "zlab/lattice.hpp"
#include "zlab/precision.hpp"

namespace zlab {

// Q(alpha) for alpha a root of a monic integer polynomial m (ascending
// coefficients). Elements of Z[alpha] are coefficient vectors in 1, alpha, ...
class NumberField {
 public:
  using Element = std::vector<BigInt>;

  explicit NumberField(std::vector<std::int64_t> monic_poly);

  int degree() const { return static_cast<int>(poly_.size()) - 1; }
  const std::vector<std::int64_t>& poly() const { return poly_; }
  const BigInt& discriminant() const { return disc_; }
  int real_embeddings() const { return r1_; }
  int unit_rank() const { return r1_ + (degree() - r1_) / 2 - 1; }

  Element one() const;
  Element shift(std::int64_t n) const;  // n + alpha
  Element mul(const Element& a, const Element& b) const;
  Element pow(Element a, std::uint64_t e) const;

  // N(n + alpha) = (-1)^d m(-n)
  BigInt norm_of_shift(std::int64_t n) const;

  // The real root nearest `approx`, refined by Newton at the current precision.
  Real real_root(double approx) const;

  // prod (n + alpha)^{b_n} == 1 exactly
  bool is_trivial_product(const std::vector<std::pair<std::int64_t, std::int64_t>>& b) const;

 private:
  std::vector<std::int64_t> poly_;
  BigInt disc_;
  int r1_ = 0;
};

bool is_prime_u64(std::uint64_t n);
// Prime factorization (p, e), increasing p.
std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n);

}  // namespace zlab
