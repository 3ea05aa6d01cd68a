#include "zlab/analytic_checks.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "zlab/precision.hpp"
#include "zlab/zeta.hpp"

namespace zlab {

namespace {

struct Node {
  cplx s;
  cplx v;
};

class Winding {
 public:
  explicit Winding(double alpha) : alpha_(alpha) {}

  Node eval(cplx s) {
    const FastValue fv = hurwitz_zeta_fast(s, alpha_);
    ++nodes_;
    const double m = std::abs(fv.value);
    min_modulus_ = std::min(min_modulus_, m);
    if (!(m > 10 * fv.err)) {
      std::ostringstream os;
      os << "contour passes within 10x the evaluation error of a zero at s = " << s.real() << " + " << s.imag()
         << "i (|zeta| = " << m << ")";
      throw Error("contour_too_close", os.str());
    }
    return {s, fv.value};
  }

  // Phase change along the segment a -> b, bisecting while a step reaches pi/2.
  double segment(const Node& a, const Node& b, int depth = 0) {
    const double d = std::arg(b.v / a.v);
    if (std::abs(d) < std::numbers::pi / 2) return d;
    if (depth > 40) throw PrecisionError("phase continuation did not settle on the contour");
    const Node m = eval(0.5 * (a.s + b.s));
    return segment(a, m, depth + 1) + segment(m, b, depth + 1);
  }

  std::int64_t nodes() const { return nodes_; }
  double min_modulus() const { return min_modulus_; }

 private:
  double alpha_;
  std::int64_t nodes_ = 0;
  double min_modulus_ = std::numeric_limits<double>::infinity();
};

}  // namespace

ZeroCount count_zeros_rect(double alpha, const RectContour& c) {
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  if (!(c.sigma1 > 1) || !(c.sigma2 > c.sigma1) || !(c.t2 > c.t1)) {
    throw DomainError("contour needs 1 < sigma1 < sigma2 and t1 < t2");
  }
  if (c.nodes_per_edge < 16) throw DomainError("contour needs at least 16 nodes per edge");
  Winding w(alpha);
  const cplx corners[4] = {{c.sigma1, c.t1}, {c.sigma2, c.t1}, {c.sigma2, c.t2}, {c.sigma1, c.t2}};
  double total = 0.0;
  const Node start = w.eval(corners[0]);
  Node prev = start;
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e], b = corners[(e + 1) % 4];
    for (int k = 1; k <= c.nodes_per_edge; ++k) {
      const Node cur = (e == 3 && k == c.nodes_per_edge) ? start : w.eval(a + (b - a) * (double(k) / c.nodes_per_edge));
      total += w.segment(prev, cur);
      prev = cur;
    }
  }
  ZeroCount out;
  out.raw_winding = total / (2 * std::numbers::pi);
  out.count = static_cast<int>(std::lround(out.raw_winding));
  out.winding_residual = std::abs(out.raw_winding - out.count);
  out.min_modulus = w.min_modulus();
  out.node_count = w.nodes();
  if (out.winding_residual >= 0.25 || out.count < 0) {
    throw PrecisionError("winding number " + std::to_string(out.raw_winding) + " is not near a nonnegative integer");
  }
  return out;
}

IntegralBound integral_lower_bound_check(double alpha, double T, double delta) {
  if (!(delta > 0) || delta > 0.05) {
    throw DomainError("the integral lower bound is stated for 0 < delta <= 0.05");
  }
  if (!(alpha > 0) || alpha > 1) throw DomainError("the integral lower bound is stated for 0 < alpha <= 1");
  if (!(T >= 0)) throw DomainError("T must be nonnegative");
  IntegralBound out;
  auto f = [&](double t) { return std::abs(hurwitz_zeta_fast(cplx(1.0, t), alpha).value); };
  out.integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, T, T + delta, 20, 1e-10,
                                                                                &out.quadrature_error);
  out.log10_integral = std::log10(out.integral);
  out.log10_bound = (7.0 / (6.0 * delta)) * std::log10(delta) - 9.0 / delta;
  out.bound = std::pow(10.0, out.log10_bound);
  out.pass = out.integral > 0 && out.log10_integral >= out.log10_bound;
  return out;
}

ZeroHunt hunt_zero(double alpha, double sigma1, double sigma2, double t_start, double t_max, const HuntOptions& o) {
  if (!(sigma1 > 1) || !(sigma2 > sigma1) || !(t_max > t_start)) throw DomainError("hunt needs 1 < sigma1 < sigma2");
  ZeroHunt out;
  out.status = "inconclusive";
  out.min_modulus = std::numeric_limits<double>::infinity();
  const int S = std::max(2, o.sigma_samples);
  auto modulus = [&](cplx s) { return std::abs(hurwitz_zeta_fast(s, alpha).value); };
  std::vector<double> prev2(S, INFINITY), prev1(S, INFINITY);
  for (double t = t_start; t <= t_max; t += o.t_step) {
    std::vector<double> cur(S);
    for (int k = 0; k < S; ++k) {
      const double sigma = sigma1 + (sigma2 - sigma1) * (k + 0.5) / S;
      cur[k] = modulus({sigma, t});
      if (cur[k] < out.min_modulus) {
        out.min_modulus = cur[k];
        out.argmin = {sigma, t};
      }
    }
    out.t_scanned = t;
    // local minimum in t at the previous row, below threshold
    for (int k = 0; k < S; ++k) {
      if (!(prev1[k] < o.threshold && prev1[k] <= prev2[k] && prev1[k] <= cur[k])) continue;
      const double sigma = sigma1 + (sigma2 - sigma1) * (k + 0.5) / S;
      cplx z(sigma, t - o.t_step);
      bool converged = false;
      for (int it = 0; it < 50; ++it) {
        const double h = 1e-6;
        const cplx v = hurwitz_zeta_fast(z, alpha).value;
        const cplx d = (hurwitz_zeta_fast(z + h, alpha).value - hurwitz_zeta_fast(z - h, alpha).value) / (2 * h);
        const cplx step = v / d;
        z -= step;
        if (std::abs(step) < 1e-12) {
          converged = true;
          break;
        }
      }
      if (!converged || !(z.real() > sigma1 && z.real() < sigma2)) continue;
      const double r = std::min({o.box_half, 0.5 * (z.real() - 1.0)});
      RectContour box{z.real() - r, z.real() + r, z.imag() - r, z.imag() + r, 32};
      try {
        ZeroCount zc = count_zeros_rect(alpha, box);
        if (zc.count == 1) {
          out.confirmed = true;
          out.status = "confirmed";
          out.zero = z;
          out.box = box;
          out.box_count = zc;
          return out;
        }
      } catch (const Error&) {
        // fall through and keep scanning
      }
    }
    prev2 = prev1;
    prev1 = cur;
  }
  return out;
}

}  // namespace zlab
