#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zlab/laplace.hpp"
#include "zlab/report.hpp"

namespace zlab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  // one line of measured values
  double seconds = 0.0;
  json data;           // the measured values in machine-readable form
};

// Laplace transform over [0, 2] of a quadratic kernel with seeded complex
// coefficients in [-1/2, 1/2]^2, in closed form.
TargetFunction seeded_quadratic_target(std::uint64_t seed);

// The region used by the Hurwitz pipelines below: the disc |s - 1/2| <= 1/4.
CompactRegion acceptance_region();

constexpr int kCriterionCount = 11;

// Runs criterion `id` (1..11); internal errors become a failing result.
CriterionResult run_criterion(int id);

// Runs the listed criteria (all when empty), reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_line(const CriterionResult& r);

}  // namespace zlab
