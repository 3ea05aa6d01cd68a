#include "zlab/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace zlab {

namespace {

Real to_real(const BigInt& z) {
  Real r(0, Real::default_precision());
  mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
  return r;
}

BigInt round_to_int(const Real& x) {
  BigInt z;
  mpfr_get_z(z.backend().data(), x.backend().data(), MPFR_RNDN);
  return z;
}

double log2_abs(const Real& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x.backend().data(), MPFR_RNDN);
  return std::log2(std::abs(m)) + double(e);
}

// Float traits for the Gram-Schmidt data: long double first, MPFR as fallback.
struct LongDoubleOps {
  using T = long double;
  static T from(const BigInt& z) {
    long e = 0;
    const double m = mpz_get_d_2exp(&e, z.backend().data());
    return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
  }
  static T from_double(double d) { return d; }
  static BigInt round(T x) {
    BigInt z;
    const long double r = std::nearbyint(x);
    if (std::abs(r) < 9e18L) return BigInt(static_cast<long long>(r));
    int e = 0;
    const long double m = std::frexp(r, &e);
    z = BigInt(static_cast<long long>(std::ldexp(m, 62)));
    return e >= 62 ? BigInt(z << (e - 62)) : BigInt(z >> (62 - e));
  }
  static bool finite(T x) { return std::isfinite(x); }
};

struct MpfrOps {
  using T = Real;
  static T from(const BigInt& z) { return to_real(z); }
  static T from_double(double d) { return Real(d); }
  static BigInt round(const T& x) { return round_to_int(x); }
  static bool finite(const T& x) { return boost::multiprecision::isfinite(x); }
};

template <class Ops>
bool lll_core(IntMatrix& b, IntMatrix& G, const LllOptions& options, long& swaps) {
  using T = typename Ops::T;
  const int n = static_cast<int>(b.size());
  const std::size_t dim = b[0].size();
  std::vector<std::vector<T>> r(n, std::vector<T>(n)), mu(n, std::vector<T>(n));
  std::vector<T> s(n);
  const T eta = Ops::from_double(options.eta);
  const T delta = Ops::from_double(options.delta);

  auto compute_row = [&](int k) {
    for (int j = 0; j < k; ++j) {
      T v = Ops::from(G[k][j]);
      for (int i = 0; i < j; ++i) v -= mu[j][i] * r[k][i];
      r[k][j] = v;
      mu[k][j] = v / r[j][j];
    }
    s[0] = Ops::from(G[k][k]);
    for (int j = 1; j <= k; ++j) s[j] = s[j - 1] - mu[k][j - 1] * r[k][j - 1];
    r[k][k] = s[k];
  };

  // b_k -= X b_j, with the Gram matrix updated exactly
  auto subtract = [&](int k, int j, const BigInt& X) {
    for (std::size_t c = 0; c < dim; ++c) b[k][c] -= X * b[j][c];
    const BigInt gkj = G[k][j];
    G[k][k] = G[k][k] - 2 * X * gkj + X * X * G[j][j];
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      G[k][i] -= X * G[j][i];
      G[i][k] = G[k][i];
    }
  };

  auto size_reduce = [&](int k) {
    for (int guard = 0; guard < 200; ++guard) {
      compute_row(k);
      bool reduced = true;
      for (int j = 0; j < k; ++j) {
        if (!Ops::finite(mu[k][j])) return false;
        using std::abs;
        if (abs(mu[k][j]) > eta) reduced = false;
      }
      if (reduced) return true;
      for (int j = k - 1; j >= 0; --j) {
        const BigInt X = Ops::round(mu[k][j]);
        if (X == 0) continue;
        subtract(k, j, X);
        const T Xf = Ops::from(X);
        for (int i = 0; i < j; ++i) mu[k][i] -= Xf * mu[j][i];
        mu[k][j] -= Xf;
      }
    }
    return false;
  };

  r[0][0] = Ops::from(G[0][0]);
  int k = 1;
  while (k < n) {
    if (!size_reduce(k)) return false;
    if (delta * r[k - 1][k - 1] <= s[k - 1]) {
      ++k;
      continue;
    }
    std::swap(b[k], b[k - 1]);
    std::swap(G[k], G[k - 1]);
    for (int i = 0; i < n; ++i) std::swap(G[i][k], G[i][k - 1]);
    ++swaps;
    if (k == 1) r[0][0] = Ops::from(G[0][0]);
    k = std::max(k - 1, 1);
  }
  return true;
}

IntMatrix gram(const IntMatrix& b) {
  const int n = static_cast<int>(b.size());
  IntMatrix G(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      BigInt s = 0;
      for (std::size_t c = 0; c < b[i].size(); ++c) s += b[i][c] * b[j][c];
      G[i][j] = s;
      G[j][i] = s;
    }
  }
  return G;
}

}  // namespace

LllResult lll_reduce(IntMatrix b, const LllOptions& options) {
  const int n = static_cast<int>(b.size());
  LllResult out;
  if (n == 0) return out;
  for (const auto& row : b) {
    if (row.size() != b[0].size()) throw DomainError("lattice rows must have equal length");
  }
  const int bits = options.gso_bits > 0 ? options.gso_bits : std::max(160, 2 * n + 100);
  PrecisionScope scope(bits);

  IntMatrix G = gram(b);
  bool done = false;
  if (options.gso_bits == 0) {
    // the heuristic pass keeps its partial progress even when it gives up
    done = lll_core<LongDoubleOps>(b, G, options, out.swaps);
    if (!done) G = gram(b);
  }
  if (!done && !lll_core<MpfrOps>(b, G, options, out.swaps)) {
    throw PrecisionError("LLL size reduction does not settle; raise the Gram-Schmidt precision");
  }

  // final Gram-Schmidt profile at full precision
  std::vector<std::vector<Real>> r(n, std::vector<Real>(n)), mu(n, std::vector<Real>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      Real v = to_real(G[i][j]);
      for (int t = 0; t < j; ++t) v -= mu[j][t] * r[i][t];
      r[i][j] = v;
      if (j < i) mu[i][j] = v / r[j][j];
    }
    out.log2_gso.push_back(0.5 * log2_abs(r[i][i]));
  }
  out.basis = std::move(b);
  return out;
}

IntegerRelationResult integer_relations(const std::vector<Real>& x, const IntegerRelationOptions& options) {
  const int n = static_cast<int>(x.size());
  IntegerRelationResult out;
  if (n < 2) return out;
  const int prec = static_cast<int>(std::ceil(Real::default_precision() * 3.3219280948873623));
  const int scale = options.scale_bits > 0 ? options.scale_bits : prec - 32;
  const int tol_bits = options.tolerance_bits > 0 ? options.tolerance_bits : scale / 2;
  if (scale <= 32) throw PrecisionError("working precision too low for relation detection");

  // Progressive scaling: reduce against 2^s x for growing s, carrying the
  // unimodular part forward, so that each stage starts nearly reduced.
  IntMatrix basis(n, std::vector<BigInt>(n + 1, 0));
  for (int i = 0; i < n; ++i) basis[i][i] = 1;
  LllResult red;
  for (int s = std::min(scale, 64);; s = std::min(scale, s + 64)) {
    std::vector<BigInt> xs(n);
    {
      PrecisionScope scope(prec + 8);
      const Real factor = boost::multiprecision::ldexp(Real(1), s);
      for (int i = 0; i < n; ++i) xs[i] = round_to_int(rebind(x[i]) * factor);
    }
    for (auto& row : basis) {
      BigInt last = 0;
      for (int i = 0; i < n; ++i) last += row[i] * xs[i];
      row[n] = last;
    }
    red = lll_reduce(std::move(basis));
    basis = red.basis;
    if (s == scale) break;
  }
  out.min_log2_gso = *std::min_element(red.log2_gso.begin(), red.log2_gso.end());

  const Real tol = boost::multiprecision::ldexp(Real(1), -tol_bits);
  for (const auto& row : red.basis) {
    bool small = true;
    std::vector<std::int64_t> c(n);
    for (int i = 0; i < n && small; ++i) {
      if (abs(row[i]) > options.height) small = false;
      else c[i] = row[i].convert_to<std::int64_t>();
    }
    if (!small || std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v == 0; })) continue;
    Real res = 0;
    for (int i = 0; i < n; ++i) res += rebind(x[i]) * c[i];
    if (abs(res) < tol) {
      out.relations.push_back(c);
      out.residuals.push_back(abs(res));
    }
  }
  return out;
}

}  // namespace zlab
