#pragma once

#include <cstdint>
#include <string>

#include "zlab/region.hpp"

namespace zlab {

struct RectContour {
  double sigma1 = 1.05, sigma2 = 1.5;
  double t1 = 0.0, t2 = 1.0;
  int nodes_per_edge = 64;
};

struct ZeroCount {
  int count = 0;
  double winding_residual = 0.0;  // distance of the raw winding number from count
  double raw_winding = 0.0;
  double min_modulus = 0.0;       // over every evaluated node
  std::int64_t node_count = 0;    // including bisection nodes
};

// Zeros of zeta(s, alpha) inside the rectangle, by continuous phase along the
// boundary. Throws Error("contour_too_close") when a node comes within 10x the
// evaluator's error of zero.
ZeroCount count_zeros_rect(double alpha, const RectContour& contour);

struct IntegralBound {
  double integral = 0.0;        // int_T^{T+delta} |zeta(1+it, alpha)| dt
  double quadrature_error = 0.0;
  double log10_integral = 0.0;
  double log10_bound = 0.0;     // (7/(6 delta)) log10 delta - 9/delta
  double bound = 0.0;           // 10^log10_bound, 0 when it underflows
  bool pass = false;
};

IntegralBound integral_lower_bound_check(double alpha, double T, double delta);

struct HuntOptions {
  double t_step = 0.05;
  int sigma_samples = 5;
  double threshold = 0.05;  // modulus below which a local minimum is followed up
  double box_half = 0.01;
};

struct ZeroHunt {
  bool confirmed = false;
  std::string status;  // "confirmed" or "inconclusive"
  cplx zero{};         // Newton-refined zero when confirmed
  RectContour box;
  ZeroCount box_count;
  double min_modulus = 0.0;  // smallest scanned modulus
  cplx argmin{};
  double t_scanned = 0.0;
};

// Scan sigma1 < Re s < sigma2, t_start <= Im s <= t_max for a modulus dip,
// refine it and confirm a single zero on a tight box.
ZeroHunt hunt_zero(double alpha, double sigma1, double sigma2, double t_start, double t_max,
                   const HuntOptions& options = {});

}  // namespace zlab
