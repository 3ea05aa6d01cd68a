#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "zlab/precision.hpp"

namespace zlab {

using BigInt = boost::multiprecision::mpz_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

struct LllOptions {
  double delta = 0.99;
  double eta = 0.51;
  int gso_bits = 0;  // 0: chosen from the dimension
};

struct LllResult {
  IntMatrix basis;                   // reduced rows
  std::vector<double> log2_gso;      // log2 |b_i^*|
  long swaps = 0;
};

// LLL reduction of the rows of `basis` (assumed linearly independent), with an
// exact integer Gram matrix and floating Gram-Schmidt data.
LllResult lll_reduce(IntMatrix basis, const LllOptions& options = {});

struct IntegerRelationOptions {
  std::int64_t height = 20;  // max |b_i| accepted
  int scale_bits = 0;        // 0: working precision minus a margin
  int tolerance_bits = 0;    // residual must be below 2^-tolerance_bits; 0: scale_bits / 2
};

struct IntegerRelationResult {
  std::vector<std::vector<std::int64_t>> relations;  // independent rows of the reduced basis
  std::vector<Real> residuals;
  // Every relation vector of Euclidean norm below 2^min_log2_gso is in the span
  // of the returned ones (the usual lambda_1 >= min |b_i^*| bound).
  double min_log2_gso = 0.0;
};

// Integer relations sum_i b_i x_i = 0 among the given values at the current
// default precision (Kannan embedding [I | 2^scale x]).
IntegerRelationResult integer_relations(const std::vector<Real>& x, const IntegerRelationOptions& options = {});

}  // namespace zlab
