#include "zlab/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/miller_rabin.hpp>

namespace zlab {

namespace {

using u128 = unsigned __int128;

// Bareiss fraction-free determinant.
BigInt determinant(std::vector<std::vector<BigInt>> a) {
  const int n = static_cast<int>(a.size());
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(u128(a) * b % m);
}

std::uint64_t rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  return boost::multiprecision::miller_rabin_test(BigInt(n), 25);
}

std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

NumberField::NumberField(std::vector<std::int64_t> monic_poly) : poly_(std::move(monic_poly)) {
  const int d = degree();
  if (d < 1 || poly_.back() != 1) throw DomainError("number field needs a monic integer polynomial");
  if (d > 8) throw DomainError("number field degree above 8 is not supported");

  // disc = (-1)^{d(d-1)/2} Res(m, m') for monic m, via the Sylvester matrix
  std::vector<std::int64_t> deriv(d);
  for (int i = 1; i <= d; ++i) deriv[i - 1] = i * poly_[i];
  const int size = 2 * d - 1;
  std::vector<std::vector<BigInt>> syl(size, std::vector<BigInt>(size, 0));
  for (int r = 0; r < d - 1; ++r) {
    for (int i = 0; i <= d; ++i) syl[r][r + i] = poly_[d - i];
  }
  for (int r = 0; r < d; ++r) {
    for (int i = 0; i < d; ++i) syl[d - 1 + r][r + i] = deriv[d - 1 - i];
  }
  disc_ = d == 1 ? BigInt(1) : determinant(syl);
  if ((d * (d - 1) / 2) % 2 == 1) disc_ = -disc_;
  if (disc_ == 0) throw DomainError("polynomial has a repeated root");

  if (d == 1) {
    r1_ = 1;
    return;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -double(poly_[i]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  for (int i = 0; i < d; ++i) {
    const auto z = es.eigenvalues()[i];
    if (std::abs(z.imag()) <= 1e-9 * (1.0 + std::abs(z))) ++r1_;
  }
}

NumberField::Element NumberField::one() const {
  Element e(degree(), 0);
  e[0] = 1;
  return e;
}

NumberField::Element NumberField::shift(std::int64_t n) const {
  Element e(degree(), 0);
  e[0] = n;
  if (degree() > 1) {
    e[1] += 1;
  } else {
    e[0] -= poly_[0];  // alpha = -m_0 in degree one
  }
  return e;
}

NumberField::Element NumberField::mul(const Element& a, const Element& b) const {
  const int d = degree();
  std::vector<BigInt> prod(2 * d - 1, 0);
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
  }
  // alpha^d = -sum_{i<d} m_i alpha^i
  for (int k = 2 * d - 2; k >= d; --k) {
    if (prod[k] == 0) continue;
    for (int i = 0; i < d; ++i) prod[k - d + i] -= prod[k] * poly_[i];
    prod[k] = 0;
  }
  prod.resize(d);
  return prod;
}

NumberField::Element NumberField::pow(Element a, std::uint64_t e) const {
  Element r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

BigInt NumberField::norm_of_shift(std::int64_t n) const {
  BigInt v = 0;
  for (int i = degree(); i >= 0; --i) v = v * (-n) + poly_[i];
  return degree() % 2 == 0 ? v : BigInt(-v);
}

Real NumberField::real_root(double approx) const {
  const int d = degree();
  Real x(approx);
  const long bits = static_cast<long>(mpfr_get_prec(x.backend().data()));
  const Real tol = boost::multiprecision::ldexp(Real(1), static_cast<int>(-bits + 8));
  Real last_step = 0;
  for (int it = 0; it < 200; ++it) {
    Real p = 0, dp = 0;
    for (int i = d; i >= 0; --i) {
      dp = dp * x + p;
      p = p * x + poly_[i];
    }
    if (dp == 0) throw PrecisionError("Newton step hit a critical point of the minimal polynomial");
    const Real step = p / dp;
    x -= step;
    if (abs(step) <= tol * (1 + abs(x))) return x;
    // quadratic convergence has stalled at the rounding floor
    if (it > 8 && abs(step) >= last_step && abs(step) <= 1024 * tol * (1 + abs(x))) return x;
    last_step = abs(step);
  }
  throw PrecisionError("Newton refinement of the algebraic parameter did not converge");
}

bool NumberField::is_trivial_product(const std::vector<std::pair<std::int64_t, std::int64_t>>& b) const {
  Element num = one(), den = one();
  for (auto [n, e] : b) {
    if (e > 0) num = mul(num, pow(shift(n), static_cast<std::uint64_t>(e)));
    if (e < 0) den = mul(den, pow(shift(n), static_cast<std::uint64_t>(-e)));
  }
  return num == den;
}

}  // namespace zlab
