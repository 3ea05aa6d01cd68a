#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace zlab {

using cplx = std::complex<double>;

// A compact set K together with the finite sample grid that stands in for it.
// Every sup-norm over K in this library is a max over `grid()`.
class CompactRegion {
 public:
  enum class Shape { rectangle, disc };

  static CompactRegion rectangle(cplx lower_left, cplx upper_right, int boundary_points = 64,
                                 int interior_points = 64);
  static CompactRegion disc(cplx center, double radius, int boundary_points = 64,
                            int interior_points = 64);

  Shape shape() const { return shape_; }
  const std::vector<cplx>& grid() const { return grid_; }
  int grid_density() const { return boundary_points_ + interior_points_; }
  int boundary_points() const { return boundary_points_; }
  int interior_points() const { return interior_points_; }

  bool contains(cplx s, double tol = 0.0) const;
  double min_re() const;
  double max_abs() const;

  cplx center() const { return a_; }
  double radius() const { return radius_; }
  cplx lower_left() const { return a_; }
  cplx upper_right() const { return b_; }

  std::string describe() const;

 private:
  CompactRegion() = default;
  Shape shape_ = Shape::disc;
  cplx a_{};
  cplx b_{};
  double radius_ = 0.0;
  int boundary_points_ = 0;
  int interior_points_ = 0;
  std::vector<cplx> grid_;
};

double sup_norm(std::span<const cplx> values);
double sup_diff(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace zlab
