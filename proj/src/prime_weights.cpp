#include "zlab/prime_weights.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "zlab/primes.hpp"

namespace zlab {

namespace {

using lcplx = std::complex<long double>;

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// floor(exp(e)) with a relative tolerance that snaps near-integers, so that
// exact powers like (10^5)^2 land on 10^10.
std::int64_t floor_exp(double e) {
  const double v = std::exp(e);
  if (v >= 9.2e18) throw DomainError("prime cutoff overflows 64-bit integers");
  const double r = std::nearbyint(v);
  if (std::abs(v - r) <= 1e-9 * v) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::floor(v));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

void require_non_equivalent(const std::vector<Character>& chars) {
  for (std::size_t i = 0; i < chars.size(); ++i) {
    for (std::size_t j = i + 1; j < chars.size(); ++j) {
      if (chars[i].equivalent_to(chars[j])) {
        throw PreconditionError("characters " + chars[i].label() + " and " + chars[j].label() +
                                " are equivalent; the construction needs pairwise non-equivalent characters");
      }
    }
  }
}

double PrimePartition::cut(int k) const { return std::exp(log_cuts[k]); }

PrimePartition make_partition(const std::vector<cplx>& b, double xi, double P) {
  if (!(xi > 0)) throw DomainError("partition needs xi > 0");
  if (!(P >= 2)) throw DomainError("partition needs P >= 2");
  double total = 0.0;
  for (cplx v : b) total += std::abs(v);
  if (total > 1.0 + 1e-12) {
    throw PreconditionError("targets violate sum_k |b_k| <= 1 (sum is " + fmt(total) + ")");
  }
  PrimePartition part;
  part.xi = xi;
  part.P = P;
  part.b = b;
  part.b.push_back(std::max(0.0, 1.0 - total));
  const double lx = std::log1p(xi);
  const double logP = std::log(P);
  part.log_cuts.push_back(0.0);
  for (cplx v : part.b) part.log_cuts.push_back(part.log_cuts.back() + lx * std::abs(v));
  part.ends.push_back(floor_exp(logP));
  for (std::size_t k = 1; k < part.log_cuts.size(); ++k) {
    const bool last = k + 1 == part.log_cuts.size();
    // the outer end is P^{1+xi} itself, not the accumulated cut
    const double e = last ? (1.0 + xi) * logP : std::exp(part.log_cuts[k]) * logP;
    part.ends.push_back(std::max(part.ends.back(), floor_exp(e)));
  }
  return part;
}

PartitionResult partition_primes(const std::vector<cplx>& b, const std::vector<Character>& chars, double xi,
                                 double P, std::optional<Character> aux_in) {
  if (b.size() != chars.size()) throw DomainError("one target b_k per character is required");
  require_non_equivalent(chars);
  Character aux = aux_in ? *aux_in : auxiliary_character(chars);
  for (const auto& c : chars) {
    if (aux.equivalent_to(c)) throw PreconditionError("auxiliary character is equivalent to " + c.label());
  }

  PartitionResult out{make_partition(b, xi, P), aux, WeightAssignment(IndexKind::prime), {}, {}, 0.0, 0};
  const auto& part = out.partition;
  const int blocks = part.blocks();
  const std::size_t n = chars.size();

  // omega on block k as a table over residues of that block's character
  std::vector<std::vector<cplx>> omega_table(blocks);
  for (int k = 0; k < blocks; ++k) {
    const Character& chi = k < static_cast<int>(n) ? chars[k] : aux;
    const cplx bk = part.b[k];
    const double phase = std::abs(bk) > 0 ? turns_of(bk / std::abs(bk)) : 0.0;
    WeightRule rule;
    rule.lo = part.ends[k];
    rule.hi = part.ends[k + 1];
    rule.chi = chi;
    rule.conjugate = true;
    rule.phase_turns = phase;
    rule.provenance = "partition:block" + std::to_string(k + 1);
    out.weights.add_rule(rule);

    const cplx u = std::polar(1.0, 2 * std::numbers::pi * phase);
    omega_table[k].resize(chi.modulus());
    for (std::int64_t r = 0; r < chi.modulus(); ++r) {
      const cplx c = chi(r);
      omega_table[k][r] = c == cplx(0.0, 0.0) ? cplx(1.0, 0.0) : std::conj(c) * u;
    }
  }

  std::vector<lcplx> acc(n, lcplx(0.0L, 0.0L));
  int k = 0;
  std::int64_t count = 0;
  for_each_prime(part.ends[0], part.ends[blocks], [&](std::int64_t p) {
    while (p > part.ends[k + 1]) ++k;
    const auto& tab = omega_table[k];
    const cplx w = tab[p % static_cast<std::int64_t>(tab.size())];
    const long double inv = 1.0L / static_cast<long double>(p);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx t = w * chars[j](p);
      acc[j] += lcplx(t.real() * inv, t.imag() * inv);
    }
    ++count;
  });

  const double lx = std::log1p(xi);
  for (std::size_t j = 0; j < n; ++j) {
    cplx a(static_cast<double>(acc[j].real()) / lx, static_cast<double>(acc[j].imag()) / lx);
    out.achieved.push_back(a);
    out.errors.push_back(std::abs(a - b[j]));
    out.max_error = std::max(out.max_error, out.errors.back());
  }
  out.prime_count = count;
  return out;
}

cplx log_euler_partial(const WeightAssignment& w, const Character& chi, std::int64_t P) {
  lcplx acc(0.0L, 0.0L);
  for_each_prime(0, P, [&](std::int64_t p) {
    const cplx c = chi(p);
    if (c == cplx(0.0, 0.0)) return;
    const cplx z = w.value(p) * c / double(p);
    const cplx l = std::log(1.0 - z);
    acc += lcplx(l.real(), l.imag());
  });
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

TargetConstantsResult target_constants(const std::vector<cplx>& C, const std::map<std::int64_t, cplx>& seeds,
                                       const std::vector<Character>& chars, double eps, double P_budget,
                                       const TargetConstantsOptions& options) {
  const std::size_t n = chars.size();
  if (C.size() != n) throw DomainError("one constant C_k per character is required");
  if (!(eps > 0)) throw DomainError("target_constants needs eps > 0");
  require_non_equivalent(chars);
  std::int64_t N = 0;
  for (const auto& [p, a] : seeds) {
    if (!is_prime(p)) throw DomainError("seed index " + std::to_string(p) + " is not prime");
    if (std::abs(std::abs(a) - 1.0) > 1e-12) throw PreconditionError("seed a_p must be unimodular");
    N = std::max(N, p);
  }

  TargetConstantsResult out;
  out.aux = auxiliary_character(chars, true);
  out.N = N;
  out.eps = eps;
  const Character& aux = out.aux;
  // the weight actually assigned on (N, Q0]: aux(p), or 1 where aux vanishes
  auto aux_omega = [&aux](std::int64_t p) { return aux.is_unit(p) ? aux(p) : cplx(1.0, 0.0); };

  // sum over seeded p of log(1 - chi_k a_p/p) - log(1 - chi_k chi/p)
  std::vector<cplx> seed_shift(n, cplx(0.0, 0.0));
  for (const auto& [p, a] : seeds) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx ck = chars[k](p);
      seed_shift[k] += std::log(1.0 - ck * a / double(p)) - std::log(1.0 - ck * aux_omega(p) / double(p));
    }
  }

  auto measure_D = [&](std::int64_t Q0) {
    std::vector<lcplx> acc(n, lcplx(0.0L, 0.0L));
    for_each_prime(0, Q0, [&](std::int64_t p) {
      for (std::size_t k = 0; k < n; ++k) {
        const cplx l = std::log(1.0 - chars[k](p) * aux_omega(p) / double(p));
        acc[k] -= lcplx(l.real(), l.imag());
      }
    });
    std::vector<cplx> D(n);
    for (std::size_t k = 0; k < n; ++k) D[k] = {double(acc[k].real()), double(acc[k].imag())};
    return D;
  };
  auto targets = [&](const std::vector<cplx>& D, int M) {
    std::vector<cplx> E(n);
    for (std::size_t k = 0; k < n; ++k) E[k] = (C[k] - D[k] + seed_shift[k]) / double(M);
    return E;
  };
  auto mass = [](const std::vector<cplx>& E) {
    double s = 0.0;
    for (cplx e : E) s += std::abs(e);
    return s;
  };

  const std::int64_t floor_Q0 = std::max(N, options.min_Q0);
  const double log2 = std::log(2.0);
  bool accepted = false;
  for (int M = 1; M <= options.max_M; ++M) {
    const std::int64_t Q0 = floor_exp(std::log(P_budget) / std::ldexp(1.0, M));
    if (Q0 < floor_Q0) break;
    auto D = measure_D(Q0);
    auto E = targets(D, M);
    if (mass(E) < log2) {
      out.M = M;
      out.Q0 = Q0;
      out.D = D;
      out.E = E;
      accepted = true;
      break;
    }
  }
  if (!accepted) {
    // smallest M that would work with Q0 at its floor
    auto D = measure_D(floor_Q0);
    int M = 1;
    while (M < 64 && mass(targets(D, M)) >= log2) ++M;
    const double minimal = std::exp(std::ldexp(1.0, M) * std::log(double(floor_Q0)));
    throw InfeasibleError("P budget too small for the doubling blocks (needs M = " + std::to_string(M) +
                              " with Q0 >= " + std::to_string(floor_Q0) + ")",
                          "P_budget", minimal);
  }

  WeightAssignment& w = out.weights;
  WeightRule base;
  base.lo = 0;
  base.hi = out.Q0;
  base.chi = aux;
  base.provenance = "constants:aux";
  for (const auto& [p, a] : seeds) w.seed(p, turns_of(a));

  std::vector<cplx> b(n);
  for (std::size_t k = 0; k < n; ++k) b[k] = out.E[k] / log2;
  std::int64_t Q = out.Q0;
  std::vector<WeightRule> rules{base};
  for (int j = 0; j < out.M; ++j) {
    if (Q > 3037000499LL) throw DomainError("doubling block exceeds 64-bit range");
    PartitionResult block = partition_primes(b, chars, 1.0, double(Q), aux);
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) err = std::max(err, std::abs(log2 * block.achieved[k] - out.E[k]));
    out.block_errors.push_back(err);
    for (auto r : block.weights.rules()) {
      r.provenance = "constants:block" + std::to_string(j) + "/" + r.provenance;
      rules.push_back(r);
    }
    Q = Q * Q;
  }
  for (auto& r : rules) w.add_rule(r);
  out.P = Q;

  out.max_error = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out.achieved.push_back(log_euler_partial(w, chars[k], out.P) + C[k]);
    out.max_error = std::max(out.max_error, std::abs(out.achieved.back()));
  }
  out.success = out.max_error < eps;
  return out;
}

cplx evaluate_h(const WeightAssignment& w, const Character& chi, cplx z, std::int64_t cutoff) {
  lcplx acc(0.0L, 0.0L);
  for_each_prime(0, cutoff, [&](std::int64_t p) {
    const cplx c = chi(p);
    if (c == cplx(0.0, 0.0)) return;
    const cplx l = std::log(1.0 - c * w.value(p) * std::exp(-z * std::log(double(p))));
    acc -= lcplx(l.real(), l.imag());
  });
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

Le2Result construct_le2(const std::vector<TargetFunction>& f, const CompactRegion& K,
                        const std::map<std::int64_t, cplx>& seeds, const std::vector<Character>& chars,
                        double delta, double eps, const Le2Config& cfg) {
  const std::size_t n = chars.size();
  if (f.size() != n) throw DomainError("one target per character is required");
  if (!(delta > 0) || !(eps > 0)) throw DomainError("construct_le2 needs delta > 0 and eps > 0");
  if (cfg.M < 1 || !(cfg.B > 0)) throw DomainError("construct_le2 needs M >= 1 and B > 0");
  require_non_equivalent(chars);

  Le2Result out;
  out.delta = delta;
  ApproximationReport& rep = out.report;
  rep.pipeline = "lemma1";
  rep.eps = eps;
  rep.param("delta", delta);
  rep.param("eps", eps);
  rep.param("B", cfg.B);
  rep.param("M", cfg.M);
  rep.param("backbone_seed", double(cfg.backbone_seed));
  const double ninth = eps / 9.0;
  const auto& grid = K.grid();
  const std::size_t G = grid.size();
  const double B = cfg.B;
  const int M = cfg.M;

  // Laplace kernels for f_k - C_k on [0, B]
  double fit_err = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const TargetFunction fk = f[k];
    const cplx Ck = fk.shift;
    auto centered = TargetFunction::callable([fk, Ck](cplx s) { return fk(s) - Ck; }, "f-C");
    FitResult fit = fit_laplace(centered, K, ninth, 0.0, B, cfg.fit_M, cfg.fit);
    fit_err = std::max(fit_err, fit.achieved_sup_error);
    out.kernels.push_back(fit.kernel);
    out.C.push_back(Ck);
  }
  rep.stage("ia0", fit_err, ninth, "Laplace fit of f_k - C_k on the K-grid");

  double normalization = 0.0;
  for (int m = 0; m <= out.kernels[0].M(); ++m) {
    const double x = out.kernels[0].node(m);
    double s = 0.0;
    for (const auto& g : out.kernels) s += std::abs(x * g.at(x));
    normalization = std::max(normalization, s);
  }
  rep.param("normalization_sum_xg", normalization);
  if (normalization > 1.0) {
    throw PreconditionError("kernels violate sum_k |x g_k(x)| <= 1 (max " + fmt(normalization) + ")");
  }

  double riemann_err = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (cplx s : grid) {
      cplx r(0.0, 0.0);
      for (int m = 1; m <= M; ++m) {
        const double x = m * B / M;
        r += out.kernels[k].at(x) * std::exp(-s * x) * (B / M);
      }
      riemann_err = std::max(riemann_err, std::abs(r - out.kernels[k].transform(s)));
    }
  }
  rep.stage("ia1", riemann_err, ninth, "Riemann sum with M nodes against the integral");

  TargetConstantsResult tc = target_constants(out.C, seeds, chars, ninth, cfg.P1_budget);
  out.P1 = tc.P;
  rep.stage("iia0", tc.max_error, ninth, "constants matched on p <= P1");

  const double logP2 = B / (M * delta);
  const double logP3 = B * (M + 1) / (M * delta);
  if (logP2 < std::log(double(out.P1))) {
    throw InfeasibleError("P2 = exp(B/(M delta)) falls below P1 = " + std::to_string(out.P1), "delta_max",
                          B / (M * std::log(double(out.P1))));
  }
  if (logP3 > std::log(cfg.P3_cap)) {
    throw InfeasibleError("P3 = exp(B(M+1)/(M delta)) exceeds the configured cap " + fmt(cfg.P3_cap), "delta_min",
                          B * (M + 1) / (M * std::log(cfg.P3_cap)));
  }

  WeightAssignment w = tc.weights;
  std::vector<std::vector<cplx>> block_targets(M);
  double ia3 = 0.0;
  std::int64_t P2 = 0, P3 = 0;
  for (int m = 1; m <= M; ++m) {
    std::vector<cplx> b(n);
    for (std::size_t k = 0; k < n; ++k) {
      b[k] = out.kernels[k].at(m * B / M) * (B / M) / std::log1p(1.0 / m);
    }
    PartitionResult block = partition_primes(b, chars, 1.0 / m, std::exp(m * logP2), tc.aux);
    if (m == 1) P2 = block.partition.ends.front();
    P3 = block.partition.ends.back();
    for (std::size_t k = 0; k < n; ++k) {
      const cplx sum = block.achieved[k] * std::log1p(1.0 / m);
      ia3 = std::max(ia3, std::abs(sum - out.kernels[k].at(m * B / M) * (B / M)));
    }
    for (auto r : block.weights.rules()) {
      r.provenance = "lemma1:m" + std::to_string(m) + "/" + r.provenance;
      w.add_rule(r);
    }
  }
  rep.stage("ia3", ia3, ninth / M, "worst block of the prime partitions");

  out.P2 = P2;
  out.P3 = P3;
  out.P4 = static_cast<std::int64_t>(std::floor(cfg.tail_factor * double(P3)));
  WeightRule bb;
  bb.kind = WeightRule::Kind::backbone;
  bb.seed = cfg.backbone_seed;
  bb.lo = out.P1;
  bb.hi = P2;
  bb.provenance = "backbone";
  w.add_rule(bb);
  bb.lo = P3;
  bb.hi = out.P4;
  w.add_rule(bb);
  rep.param("P1", double(out.P1));
  rep.param("P2", double(P2));
  rep.param("P3", double(P3));
  rep.param("P4", double(out.P4));

  // one pass over p <= P4 for h_k and every stage sum
  const std::size_t KG = n * G;
  std::vector<lcplx> h(KG), lin12(KG), lin23(KG), lin34(KG), bb1(KG), bb2(KG), bb3(KG);
  std::vector<double> uio(KG, 0.0);
  double ajaj = 0.0;
  for_each_prime(0, out.P4, [&](std::int64_t p) {
    const double lp = std::log(double(p));
    const cplx om = w.value(p);
    const int range = p <= out.P1 ? 0 : p <= P2 ? 1 : p <= P3 ? 2 : 3;
    const cplx om0 = range == 2 ? std::polar(1.0, 2 * std::numbers::pi * backbone_turns(cfg.backbone_seed, p)) : om;
    if (range > 0) ajaj += -std::log1p(-1.0 / p) - 1.0 / p;
    for (std::size_t gi = 0; gi < G; ++gi) {
      const cplx e = std::exp(-(1.0 + delta * grid[gi]) * lp);
      for (std::size_t k = 0; k < n; ++k) {
        const cplx c = chars[k](p);
        if (c == cplx(0.0, 0.0)) continue;
        const std::size_t i = k * G + gi;
        const cplx x = c * om * e;
        const cplx l = std::log(1.0 - x);
        h[i] -= lcplx(l.real(), l.imag());
        const lcplx xl(x.real(), x.imag());
        switch (range) {
          case 0:
            uio[i] += std::abs(std::log(1.0 - c * om / double(p)) - l);
            break;
          case 1:
            lin12[i] += xl;
            bb1[i] += xl;
            break;
          case 2: {
            lin23[i] += xl;
            const cplx y = c * om0 * e;
            bb2[i] += lcplx(y.real(), y.imag());
            break;
          }
          default:
            lin34[i] += xl;
            bb3[i] += xl;
        }
      }
    }
  });
  auto d = [](const lcplx& z) { return cplx(double(z.real()), double(z.imag())); };

  double oo3 = 0, uio_max = 0, ia4 = 0, ia5a = 0, ia5b = 0, final_err = 0;
  out.h_on_grid.assign(n, std::vector<cplx>(G));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t gi = 0; gi < G; ++gi) {
      const std::size_t i = k * G + gi;
      const cplx s = grid[gi];
      const cplx fk = f[k](s);
      oo3 = std::max({oo3, std::abs(d(bb1[i] + bb2[i] + bb3[i])), std::abs(d(bb2[i] + bb3[i])), std::abs(d(bb3[i]))});
      uio_max = std::max(uio_max, uio[i]);
      ia4 = std::max(ia4, std::abs(d(lin23[i]) - (fk - out.C[k])));
      ia5a = std::max(ia5a, std::abs(d(lin12[i])));
      ia5b = std::max(ia5b, std::abs(d(lin34[i])));
      out.h_on_grid[k][gi] = d(h[i]);
      final_err = std::max(final_err, std::abs(d(h[i]) - fk));
    }
  }
  ajaj += 1.0 / double(out.P4);
  rep.stage("oo3", oo3, ninth, "backbone tails from P1, P2, P3 (summed to P4)");
  rep.stage("ajaj", ajaj, ninth, "sum_{p>P1} max |log(1-z)+z| with the 1/P4 tail bound");
  rep.stage("uio", uio_max, ninth, "p <= P1 moved from 1 to 1 + delta s");
  rep.stage("ia4", ia4, 3 * ninth, "block primes against f_k - C_k");
  rep.stage("ia5:P1-P2", ia5a, 2 * ninth, "backbone on (P1, P2]");
  rep.stage("ia5:P3-", ia5b, ninth, "backbone on (P3, P4]; beyond P4 not evaluated");
  rep.final_error = final_err;
  rep.success = final_err < eps;
  rep.notes.push_back("h_k summed over p <= P4; the backbone tail beyond P4 is not included");
  out.weights = std::move(w);
  return out;
}

}  // namespace zlab
