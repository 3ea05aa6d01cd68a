#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zlab/characters.hpp"
#include "zlab/laplace.hpp"
#include "zlab/region.hpp"

namespace zlab {

// Find t in [0, T_max] with max_j |x_j^{-it} - omega_j| < eps.
struct ShiftProblem {
  std::vector<double> generators;  // x_j > 1, distinct
  std::vector<cplx> targets;       // |omega_j| = 1
  double eps = 0.1;
  double T_max = 1e7;
};

struct ShiftOptions {
  double grid_factor = 0.25;            // time step h = grid_factor * eps / max log x_j
  std::int64_t max_candidates = 2000000;  // lattice points enumerated before falling back to the scan
  double max_scan_evaluations = 2e7;
  std::uint64_t seed = 1;
  int verify_bits = 128;
};

struct ShiftResult {
  bool found = false;
  double t = 0.0;            // the witness, or the best t seen on a miss
  double defect = 0.0;       // max_j |x_j^{-it} - omega_j| in double
  double verified_defect = 0.0;  // the same at verify_bits
  std::string method;        // "trivial", "lattice" or "scan"
  std::int64_t candidates = 0;
  double scan_evaluations = 0.0;
};

double shift_defect(const ShiftProblem& problem, double t);
double shift_defect_precise(const ShiftProblem& problem, double t, int bits);

ShiftResult find_shift(const ShiftProblem& problem, const ShiftOptions& options = {});

// eps / (4 sum_n 1/(n + alpha)) over the support.
double default_eps2(double eps, const std::vector<std::int64_t>& support, double alpha);

struct SeriesSpec {
  enum class Kind { hurwitz, lerch, dirichlet_L } kind = Kind::hurwitz;
  double alpha = 1.0;
  double lambda = 0.0;
  Character chi = Character();

  static SeriesSpec hurwitz(double alpha) { return {Kind::hurwitz, alpha, 0.0, Character()}; }
  static SeriesSpec lerch(double lambda, double alpha) { return {Kind::lerch, alpha, lambda, Character()}; }
  static SeriesSpec dirichlet(const Character& chi) { return {Kind::dirichlet_L, 1.0, 0.0, chi}; }
  std::string describe() const;
};

struct DensitySample {
  double t;
  double defect;  // sup over the K-grid, or a lower bound when !complete
  bool complete;  // every grid point evaluated
};

struct DensityEstimate {
  double T = 0.0;
  std::int64_t sample_count = 0;
  std::int64_t hits = 0;
  double hit_fraction = 0.0;  // hits / sample_count
  double wilson_low = 0.0;    // 95% Wilson score interval
  double wilson_high = 0.0;
  std::vector<std::pair<double, double>> hit_intervals;  // runs of consecutive hit samples in t order
  std::vector<DensitySample> samples;                    // in t order
  std::uint64_t rng_seed = 0;
  double eps = 0.0;
  double delta = 0.0;
};

// Monte-Carlo measure of {t in [0, T] : max_{s in K} |Z(1 + it + delta s) - f(s)| < eps}.
DensityEstimate density_estimate(const SeriesSpec& series, const TargetFunction& f, const CompactRegion& K,
                                 double delta, double eps, double T, std::int64_t samples, std::uint64_t seed);

std::pair<double, double> wilson_interval(std::int64_t hits, std::int64_t n, double z = 1.959963984540054);

}  // namespace zlab
