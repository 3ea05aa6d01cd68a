#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "zlab/characters.hpp"
#include "zlab/laplace.hpp"
#include "zlab/weights.hpp"

namespace zlab {

// Cut exponents 1 = c_0 < ... < c_{n+1} = 1 + xi of (P, P^{1+xi}], stored
// through their logarithms: log c_k - log c_{k-1} = log(1+xi) |b_k|.
struct PrimePartition {
  double xi = 1.0;
  double P = 2.0;
  std::vector<cplx> b;            // b_1 .. b_{n+1}, the last one 1 - sum |b_k|
  std::vector<double> log_cuts;   // log c_0 .. log c_{n+1}
  std::vector<std::int64_t> ends; // floor(P^{c_k}), k = 0 .. n+1

  int blocks() const { return static_cast<int>(b.size()); }
  double cut(int k) const;
};

PrimePartition make_partition(const std::vector<cplx>& b, double xi, double P);

struct PartitionResult {
  PrimePartition partition;
  Character aux;
  WeightAssignment weights;
  std::vector<cplx> achieved;  // (1/log(1+xi)) sum omega(p) chi_k(p)/p
  std::vector<double> errors;  // |achieved_k - b_k|
  double max_error = 0.0;
  std::int64_t prime_count = 0;
};

// Every prime in (P, P^{1+xi}] gets omega = conj(chi_k(p)) b_k/|b_k| on block k
// (aux character on the last block, omega = 1 where chi_k(p) = 0).
PartitionResult partition_primes(const std::vector<cplx>& b, const std::vector<Character>& chars, double xi,
                                 double P, std::optional<Character> aux = std::nullopt);

// Throws PreconditionError unless the characters are pairwise non-equivalent.
void require_non_equivalent(const std::vector<Character>& chars);

struct TargetConstantsOptions {
  std::int64_t min_Q0 = 30;
  int max_M = 8;
};

struct TargetConstantsResult {
  WeightAssignment weights;
  Character aux;
  int M = 0;
  std::int64_t N = 0;
  std::int64_t Q0 = 0;
  std::int64_t P = 0;  // Q0^{2^M}, the last prime cutoff
  std::vector<cplx> D;
  std::vector<cplx> E;
  std::vector<double> block_errors;  // max_k |sum over block - E_k| per block
  std::vector<cplx> achieved;        // sum_{p<=P} log(1 - omega chi_k/p) + C_k, recomputed directly
  double max_error = 0.0;
  double eps = 0.0;
  bool success = false;
};

// omega(p) = a_p for p <= N, aux character on (N, Q0], then M doubling blocks
// (Q, Q^2] with Q = Q0^{2^j} steered towards E_k by partition_primes.
TargetConstantsResult target_constants(const std::vector<cplx>& C, const std::map<std::int64_t, cplx>& seeds,
                                       const std::vector<Character>& chars, double eps, double P_budget,
                                       const TargetConstantsOptions& options = {});

// Independent check: sum_{p<=P} log(1 - omega(p) chi(p)/p) read from the assignment.
cplx log_euler_partial(const WeightAssignment& w, const Character& chi, std::int64_t P);

struct Le2Config {
  double B = 1.0;
  int M = 1;
  int fit_M = 200;
  double P1_budget = 3e3;
  double P3_cap = 1e7;
  double tail_factor = 4.0;  // the h_k sums stop at P4 = tail_factor * P3
  std::uint64_t backbone_seed = 20240101;
  FitOptions fit;
};

struct Le2Result {
  WeightAssignment weights;
  ApproximationReport report;
  std::vector<KernelGrid> kernels;
  std::vector<cplx> C;
  std::int64_t P1 = 0, P2 = 0, P3 = 0, P4 = 0;
  double delta = 0.0;
  std::vector<std::vector<cplx>> h_on_grid;  // h_k(1 + delta s) on K.grid()
};

Le2Result construct_le2(const std::vector<TargetFunction>& f, const CompactRegion& K,
                        const std::map<std::int64_t, cplx>& seeds, const std::vector<Character>& chars,
                        double delta, double eps, const Le2Config& config = {});

// -sum_{p <= cutoff} log(1 - chi(p) omega(p) p^{-z}).
cplx evaluate_h(const WeightAssignment& w, const Character& chi, cplx z, std::int64_t cutoff);

}  // namespace zlab
