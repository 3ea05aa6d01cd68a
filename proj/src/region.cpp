#include "zlab/region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zlab/precision.hpp"

namespace zlab {

CompactRegion CompactRegion::rectangle(cplx lower_left, cplx upper_right, int boundary_points,
                                       int interior_points) {
  if (!(upper_right.real() > lower_left.real()) || !(upper_right.imag() > lower_left.imag())) {
    throw DomainError("rectangle corners must satisfy lower_left < upper_right componentwise");
  }
  if (boundary_points < 4 || interior_points < 0) throw DomainError("rectangle grid too small");
  CompactRegion r;
  r.shape_ = Shape::rectangle;
  r.a_ = lower_left;
  r.b_ = upper_right;
  r.boundary_points_ = boundary_points;
  r.interior_points_ = interior_points;

  const double w = upper_right.real() - lower_left.real();
  const double h = upper_right.imag() - lower_left.imag();
  const double perimeter = 2 * (w + h);
  for (int i = 0; i < boundary_points; ++i) {
    double d = perimeter * i / boundary_points;
    cplx p;
    if (d < w) {
      p = lower_left + cplx(d, 0);
    } else if (d < w + h) {
      p = cplx(upper_right.real(), lower_left.imag() + (d - w));
    } else if (d < 2 * w + h) {
      p = cplx(upper_right.real() - (d - w - h), upper_right.imag());
    } else {
      p = cplx(lower_left.real(), upper_right.imag() - (d - 2 * w - h));
    }
    r.grid_.push_back(p);
  }
  if (interior_points > 0) {
    int cols = std::max(1, static_cast<int>(std::lround(std::sqrt(interior_points * w / h))));
    int rows = (interior_points + cols - 1) / cols;
    int placed = 0;
    for (int j = 0; j < rows && placed < interior_points; ++j) {
      for (int i = 0; i < cols && placed < interior_points; ++i, ++placed) {
        r.grid_.emplace_back(lower_left.real() + w * (i + 0.5) / cols,
                             lower_left.imag() + h * (j + 0.5) / rows);
      }
    }
  }
  return r;
}

CompactRegion CompactRegion::disc(cplx center, double radius, int boundary_points, int interior_points) {
  if (!(radius > 0)) throw DomainError("disc radius must be positive");
  if (boundary_points < 4 || interior_points < 0) throw DomainError("disc grid too small");
  CompactRegion r;
  r.shape_ = Shape::disc;
  r.a_ = center;
  r.radius_ = radius;
  r.boundary_points_ = boundary_points;
  r.interior_points_ = interior_points;

  auto clamp_in = [&](cplx p) {
    double d = std::abs(p - center);
    if (d > radius) p = center + (p - center) * (radius / d) * (1.0 - 0x1p-52);
    return p;
  };
  for (int i = 0; i < boundary_points; ++i) {
    double th = 2 * std::numbers::pi * i / boundary_points;
    r.grid_.push_back(clamp_in(center + std::polar(radius, th)));
  }
  // Fermat spiral: evenly spread interior samples, deterministic.
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < interior_points; ++i) {
    double rr = radius * std::sqrt((i + 0.5) / interior_points);
    r.grid_.push_back(clamp_in(center + std::polar(rr, golden * i)));
  }
  return r;
}

bool CompactRegion::contains(cplx s, double tol) const {
  if (shape_ == Shape::disc) return std::abs(s - a_) <= radius_ + tol;
  return s.real() >= a_.real() - tol && s.real() <= b_.real() + tol && s.imag() >= a_.imag() - tol &&
         s.imag() <= b_.imag() + tol;
}

double CompactRegion::min_re() const {
  double m = grid_.front().real();
  for (auto& p : grid_) m = std::min(m, p.real());
  return m;
}

double CompactRegion::max_abs() const {
  double m = 0;
  for (auto& p : grid_) m = std::max(m, std::abs(p));
  return m;
}

std::string CompactRegion::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (shape_ == Shape::disc) {
    os << "disc(center=" << a_.real() << (a_.imag() < 0 ? "" : "+") << a_.imag() << "i, radius=" << radius_ << ")";
  } else {
    os << "rectangle(" << a_.real() << "," << a_.imag() << ";" << b_.real() << "," << b_.imag() << ")";
  }
  os << " grid=" << boundary_points_ << "+" << interior_points_;
  return os.str();
}

double sup_norm(std::span<const cplx> values) {
  double m = 0;
  for (auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double sup_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace zlab
