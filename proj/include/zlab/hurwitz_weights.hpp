#pragma once

#include <cstdint>
#include <vector>

#include "zlab/laplace.hpp"
#include "zlab/relations.hpp"
#include "zlab/weights.hpp"

namespace zlab {

enum class OmegaMode { automatic, algebraic, transcendental };

struct HurwitzConfig {
  double eps = 0.3;         // overall budget; the staged pieces get eps/3 each
  double eps2 = 0.0;        // partial-sum tracking budget, 0 means eps/3
  int fit_M = 200;
  double index_budget = 1e6;
  double delta_max = 0.5;
  double consistency_tol = 1e-20;  // |prod omega^b - 1| for every certificate
  std::int64_t check_N = 12;       // independent small relation search checked against the weights
  std::int64_t check_height = 20;
  CasselsOptions cassels;
  FitOptions fit;
};

struct HurwitzResult {
  WeightAssignment weights{IndexKind::shifted_integer};  // omega(n + alpha), n = 0 .. N
  ApproximationReport report;
  KernelGrid kernel{0.0, 1.0, {cplx(0.0), cplx(0.0)}};
  CasselsSet membership;
  OmegaMode mode = OmegaMode::transcendental;
  double alpha = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
  double B = 0.0;
  std::int64_t N = 0;
  std::int64_t N1 = 0;  // first index with n >= exp(delta^{-1/2})
  double multiplicativity_defect = 0.0;
  std::vector<cplx> sum_on_grid;     // sum_{n <= N} omega e(lambda n) (n+alpha)^{-1-delta s}
  std::vector<cplx> target_on_grid;  // f on K.grid()

  // omega(n + alpha) e(lambda n)
  cplx combined(std::int64_t n) const;
};

// Completely multiplicative unimodular weights on {alpha, ..., N + alpha},
// N = floor(exp(B / delta)), approximating f on K after a Laplace fit on [0, B].
HurwitzResult build_omega_hurwitz(const TargetFunction& f, const CompactRegion& K, const AlphaDescriptor& alpha,
                                  double delta, double B, OmegaMode mode = OmegaMode::automatic,
                                  const HurwitzConfig& config = {});

// The same with every weighted sum carrying e(lambda n).
HurwitzResult build_omega_lerch(const TargetFunction& f, const CompactRegion& K, const AlphaDescriptor& alpha,
                                double lambda, double delta, double B, const HurwitzConfig& config = {});

const char* to_string(OmegaMode mode);

}  // namespace zlab
