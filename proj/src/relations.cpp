#include "zlab/relations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/math/constants/constants.hpp>

namespace zlab {

namespace {

std::string trim(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

double bit_length(const BigInt& z) {
  if (z == 0) return 0.0;
  return double(msb(abs(z)) + 1);
}

// sum_k b_k log(k + alpha) at the current precision
Real log_combination(const std::map<std::int64_t, BigInt>& b, const Real& alpha) {
  Real s = 0;
  for (const auto& [k, c] : b) {
    Real cr(0, Real::default_precision());
    mpfr_set_z(cr.backend().data(), c.backend().data(), MPFR_RNDN);
    s += cr * log(Real(k) + alpha);
  }
  return s;
}

Real residual_at(const RelationCertificate& cert, const AlphaDescriptor& alpha, int bits) {
  PrecisionScope scope(bits);
  const Real a = alpha.value();
  Real s = 0;
  for (auto [n, c] : cert.b) s += Real(c) * log(Real(n) + a);
  return abs(s);
}

void normalize_sign(RelationCertificate& cert) {
  if (!cert.b.empty() && cert.b.back().second < 0) {
    for (auto& e : cert.b) e.second = -e.second;
  }
}

}  // namespace

const char* to_string(MembershipProof proof) {
  switch (proof) {
    case MembershipProof::new_prime: return "new_prime";
    case MembershipProof::valuation_rank: return "valuation_rank";
    case MembershipProof::unit_rank: return "unit_rank";
    case MembershipProof::transcendental: return "transcendental";
    case MembershipProof::no_relation_found: return "no_relation_found";
    case MembershipProof::certificate: return "certificate";
  }
  return "?";
}

AlphaDescriptor AlphaDescriptor::algebraic(std::vector<std::int64_t> monic_poly, double approx, std::string label) {
  AlphaDescriptor a;
  a.kind = Kind::algebraic;
  a.min_poly = std::move(monic_poly);
  a.approx = approx;
  a.label = std::move(label);
  NumberField field(a.min_poly);
  if (field.degree() < 2) throw DomainError("an algebraic irrational needs a minimal polynomial of degree >= 2");
  // a monic integer polynomial has only integer rational roots
  const double r = std::round(approx);
  if (field.norm_of_shift(static_cast<std::int64_t>(-r)) == 0) {
    throw DomainError("polynomial vanishes at the integer " + std::to_string(static_cast<std::int64_t>(r)));
  }
  return a;
}

AlphaDescriptor AlphaDescriptor::transcendental(std::string label, std::function<Real()> fn) {
  AlphaDescriptor a;
  a.kind = Kind::transcendental;
  a.label = std::move(label);
  a.value_fn = std::move(fn);
  PrecisionScope scope(64);
  a.approx = a.value_fn().convert_to<double>();
  return a;
}

AlphaDescriptor AlphaDescriptor::numeric(std::string decimal) {
  AlphaDescriptor a;
  a.kind = Kind::numeric;
  a.label = "num:" + decimal;
  a.value_fn = [decimal] { return Real(decimal); };
  a.approx = std::stod(decimal);
  return a;
}

AlphaDescriptor AlphaDescriptor::rational(std::int64_t p, std::int64_t q) {
  if (q == 0) throw DomainError("rational alpha with zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
  AlphaDescriptor a;
  a.kind = Kind::rational;
  a.p = p / g;
  a.q = q / g;
  a.label = std::to_string(a.p) + "/" + std::to_string(a.q);
  a.approx = double(a.p) / double(a.q);
  return a;
}

AlphaDescriptor AlphaDescriptor::parse(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "sqrt2-1") return algebraic({-1, 2, 1}, std::sqrt(2.0) - 1, s);
  if (s == "cbrt2") return algebraic({-2, 0, 0, 1}, std::cbrt(2.0), s);
  if (s == "cbrt2-1") return algebraic({-1, 3, 3, 1}, std::cbrt(2.0) - 1, s);
  if (s == "1/pi") return transcendental(s, [] { return 1 / pi_real(); });
  if (s == "1/e") return transcendental(s, [] { return 1 / exp(Real(1)); });
  if (s == "pi-3") return transcendental(s, [] { return pi_real() - 3; });
  if (s.rfind("num:", 0) == 0) return numeric(s.substr(4));
  if (s.rfind("poly:", 0) == 0) {
    const auto at = s.find('@');
    if (at == std::string::npos) throw DomainError("poly descriptor needs '@approx'");
    std::vector<std::int64_t> coeffs;
    std::stringstream list(s.substr(5, at - 5));
    for (std::string item; std::getline(list, item, ',');) coeffs.push_back(std::stoll(item));
    return algebraic(coeffs, std::stod(s.substr(at + 1)), s);
  }
  const auto slash = s.find('/');
  if (slash != std::string::npos) return rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  // a terminating decimal is rational
  const auto dot = s.find('.');
  if (dot == std::string::npos) return rational(std::stoll(s), 1);
  const std::string frac = s.substr(dot + 1);
  if (frac.size() > 17) throw DomainError("decimal alpha has too many digits; use num:<decimal>");
  std::int64_t q = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) q *= 10;
  const std::string digits = s.substr(0, dot) + frac;
  return rational(std::stoll(digits), q);
}

Real AlphaDescriptor::value() const {
  switch (kind) {
    case Kind::algebraic: return NumberField(min_poly).real_root(approx);
    case Kind::rational: return Real(p) / Real(q);
    default: return rebind(value_fn());
  }
}

double AlphaDescriptor::value_double() const {
  PrecisionScope scope(64);
  return value().convert_to<double>();
}

std::string AlphaDescriptor::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::algebraic: {
      os << "algebraic " << label << " root of";
      for (std::size_t i = 0; i < min_poly.size(); ++i) os << (i ? "," : " [") << min_poly[i];
      os << "]";
      break;
    }
    case Kind::transcendental: os << "transcendental " << label; break;
    case Kind::numeric: os << "numeric " << label; break;
    case Kind::rational: os << "rational " << label; break;
  }
  return os.str();
}

const RelationCertificate* CasselsSet::witness(std::int64_t n) const {
  const int c = membership.at(n).certificate;
  return c < 0 ? nullptr : &certificates[c];
}

namespace {

// Exact valuation bookkeeping behind cassels_set for algebraic alpha.
class ValuationEngine {
 public:
  using Key = std::pair<std::uint64_t, std::int64_t>;  // (prime, residue of n), residue -1 for ramified primes

  ValuationEngine(const AlphaDescriptor& alpha, const CasselsOptions& options)
      : alpha_(alpha), field_(alpha.min_poly), options_(options) {
    const BigInt d = abs(field_.discriminant());
    if (d > BigInt(std::numeric_limits<std::uint64_t>::max())) throw DomainError("discriminant exceeds 64 bits");
    for (auto [p, e] : factor_u64(d.convert_to<std::uint64_t>())) disc_primes_.push_back(p);
  }

  CasselsEntry classify(std::int64_t n, std::vector<RelationCertificate>& certs, std::vector<std::string>& notes) {
    const BigInt norm = abs(field_.norm_of_shift(n));
    if (norm > BigInt(std::numeric_limits<std::uint64_t>::max())) {
      throw InfeasibleError("norm of n + alpha exceeds 64 bits at n = " + std::to_string(n), "N_max", double(n - 1));
    }
    Row cur;
    CasselsEntry entry;
    for (auto [p, e] : factor_u64(norm.convert_to<std::uint64_t>())) {
      const bool ramified = std::find(disc_primes_.begin(), disc_primes_.end(), p) != disc_primes_.end();
      cur.vec[{p, ramified ? -1 : static_cast<std::int64_t>(std::uint64_t(n) % p)}] = e;
      if (!ramified && p > std::uint64_t(n) && entry.witness_prime == 0) entry.witness_prime = p;
    }
    cur.combo[n] = 1;
    const bool independent = reduce(cur);
    if (entry.witness_prime != 0) {
      entry.proof = MembershipProof::new_prime;
      return entry;
    }
    if (independent) {
      entry.proof = MembershipProof::valuation_rank;
      return entry;
    }
    return unit_step(n, cur.combo, certs, notes);
  }

 private:
  struct Row {
    std::map<Key, BigInt> vec;
    std::map<std::int64_t, BigInt> combo;  // vec = sum combo_k v_k
  };

  static void make_primitive(Row& r) {
    BigInt g = 0;
    for (const auto& [k, v] : r.vec) g = gcd(g, v);
    for (const auto& [k, v] : r.combo) g = gcd(g, v);
    if (g > 1) {
      for (auto& [k, v] : r.vec) v /= g;
      for (auto& [k, v] : r.combo) v /= g;
    }
  }

  // Fraction-free echelon step; returns true when cur adds a new pivot.
  bool reduce(Row& cur) {
    while (!cur.vec.empty()) {
      const Key K = cur.vec.rbegin()->first;
      auto it = pivots_.find(K);
      if (it == pivots_.end()) {
        make_primitive(cur);
        pivots_.emplace(K, cur);
        return true;
      }
      const Row& R = it->second;
      const BigInt a = cur.vec.at(K);
      const BigInt p = R.vec.at(K);
      const BigInt g = gcd(a, p);
      const BigInt ca = p / g, cr = a / g;
      for (auto& [k, v] : cur.vec) v *= ca;
      for (auto& [k, v] : cur.combo) v *= ca;
      for (const auto& [k, v] : R.vec) {
        auto& slot = cur.vec[k];
        slot -= cr * v;
        if (slot == 0) cur.vec.erase(k);
      }
      for (const auto& [k, v] : R.combo) {
        auto& slot = cur.combo[k];
        slot -= cr * v;
        if (slot == 0) cur.combo.erase(k);
      }
      make_primitive(cur);
    }
    return false;
  }

  int bits_for(const std::map<std::int64_t, BigInt>& b) const {
    double top = 0;
    for (const auto& [k, v] : b) top = std::max(top, bit_length(v));
    return options_.precision_bits + static_cast<int>(top) + 16;
  }

  CasselsEntry unit_step(std::int64_t n, const std::map<std::int64_t, BigInt>& b,
                         std::vector<RelationCertificate>& certs, std::vector<std::string>& notes) {
    CasselsEntry entry;
    // b has all valuations cancelling, so prod (k+alpha)^{b_k} is a unit
    int bits = bits_for(b);
    for (const auto& u : units_) bits = std::max(bits, bits_for(u));
    PrecisionScope scope(bits);
    const Real a = alpha_.value();
    std::vector<Real> logs{log_combination(b, a)};
    for (const auto& u : units_) logs.push_back(log_combination(u, a));

    std::optional<std::map<std::int64_t, BigInt>> relation;
    const Real tiny = boost::multiprecision::ldexp(Real(1), -options_.precision_bits / 2);
    if (abs(logs[0]) < tiny) {
      relation = b;
    } else if (!units_.empty()) {
      IntegerRelationOptions ro;
      ro.height = options_.unit_height;
      ro.scale_bits = bits - 32;
      ro.tolerance_bits = options_.precision_bits / 2;
      for (const auto& c : integer_relations(logs, ro).relations) {
        if (c[0] == 0) continue;
        std::map<std::int64_t, BigInt> combo;
        for (const auto& [k, v] : b) combo[k] += BigInt(c[0]) * v;
        for (std::size_t j = 0; j < units_.size(); ++j) {
          for (const auto& [k, v] : units_[j]) combo[k] += BigInt(c[j + 1]) * v;
        }
        relation = combo;
        break;
      }
    }

    if (relation) {
      RelationCertificate cert;
      BigInt g = 0;
      for (const auto& [k, v] : *relation) g = gcd(g, v);
      bool fits = g != 0;
      for (const auto& [k, v] : *relation) {
        if (v == 0) continue;
        const BigInt q = v / g;
        if (abs(q) > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) fits = false;
        if (fits) cert.b.emplace_back(k, q.convert_to<std::int64_t>());
      }
      if (fits && !cert.b.empty() && cert.top() == n) {
        normalize_sign(cert);
        cert.exact = field_.is_trivial_product(cert.b);
        if (cert.exact) {
          cert.residual = residual_at(cert, alpha_, options_.precision_bits).convert_to<double>();
          cert.residual_check = residual_at(cert, alpha_, 2 * options_.precision_bits).convert_to<double>();
          certs.push_back(cert);
          entry.in_A = false;
          entry.proof = MembershipProof::certificate;
          entry.certificate = static_cast<int>(certs.size()) - 1;
          return entry;
        }
      }
      notes.push_back("n = " + std::to_string(n) + ": numeric unit relation failed exact confirmation");
    }
    if (static_cast<int>(units_.size()) < field_.unit_rank()) {
      units_.push_back(b);
      entry.proof = MembershipProof::unit_rank;
      return entry;
    }
    notes.push_back("n = " + std::to_string(n) + ": unit lattice full but no relation found at the height bound");
    entry.proof = MembershipProof::no_relation_found;
    return entry;
  }

  const AlphaDescriptor& alpha_;
  NumberField field_;
  CasselsOptions options_;
  std::vector<std::uint64_t> disc_primes_;
  std::map<Key, Row> pivots_;
  std::vector<std::map<std::int64_t, BigInt>> units_;
};

void fill_windows(CasselsSet& set, const CasselsOptions& options) {
  auto proven = [](MembershipProof p) {
    return p == MembershipProof::new_prime || p == MembershipProof::valuation_rank ||
           p == MembershipProof::unit_rank || p == MembershipProof::transcendental;
  };
  std::int64_t N = std::max<std::int64_t>(options.window_start, 2);
  while (true) {
    const auto M = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(N * std::pow(std::log(double(N)), -set.xi))));
    if (N + M > set.N_max()) break;
    CasselsWindow w{N, M, 0, 0, 0.0, 0.0};
    for (std::int64_t n = N + 1; n <= N + M; ++n) {
      const auto& e = set.membership[n];
      if (e.in_A) ++w.in_A;
      if (e.in_A && proven(e.proof)) ++w.proven_in_A;
    }
    w.density = double(w.in_A) / double(M);
    w.proven_density = double(w.proven_in_A) / double(M);
    set.windows.push_back(w);
    N += M;
  }
}

}  // namespace

RelationSearch detect_relations(const AlphaDescriptor& alpha, std::int64_t N, std::int64_t height,
                                const RelationSearchOptions& options) {
  if (!alpha.irrational()) {
    throw DomainError("alpha = " + alpha.label +
                      " is rational: relations are dense; use the character decomposition pipeline instead");
  }
  if (N < 1 || height < 1) throw DomainError("relation search needs N >= 1 and height >= 1");
  if (!(alpha.approx > 0)) throw DomainError("relation search needs alpha > 0");
  RelationSearch out;
  const int n = static_cast<int>(N + 1);

  if (n > options.lll_dimension_cap) {
    if (alpha.kind != AlphaDescriptor::Kind::algebraic) {
      throw InfeasibleError("lattice dimension " + std::to_string(n) + " above the cap", "N",
                            double(options.lll_dimension_cap - 1));
    }
    CasselsOptions co;
    co.window_start = N + 1;
    CasselsSet set = cassels_set(alpha, N, 0.5, co);
    for (const auto& c : set.certificates) {
      std::int64_t h = 0;
      for (auto [k, v] : c.b) h = std::max(h, v < 0 ? -v : v);
      if (h <= height) out.certificates.push_back(c);
    }
    out.method = "valuations";
    out.precision_bits = co.precision_bits;
    return out;
  }

  const double needed = n * std::log2(2.0 * double(height) + 1.0);
  if (options.precision_bits > 0 && options.precision_bits < needed + 32) {
    throw PrecisionError("precision " + std::to_string(options.precision_bits) + " bits is too low for height " +
                         std::to_string(height) + " in dimension " + std::to_string(n) + " (needs about " +
                         std::to_string(static_cast<int>(needed + 32)) + ")");
  }
  const int bits = options.precision_bits > 0 ? options.precision_bits
                                               : std::max(256, static_cast<int>(std::ceil(needed)) + 64);
  out.precision_bits = bits;
  out.method = "lll";
  PrecisionScope scope(bits);
  const Real a = alpha.value();
  std::vector<Real> x;
  for (int i = 0; i < n; ++i) x.push_back(log(Real(i) + a));
  IntegerRelationOptions ro;
  ro.height = height;
  ro.scale_bits = bits - 32;
  ro.tolerance_bits = std::max(133, (bits - 32) / 2);
  IntegerRelationResult found = integer_relations(x, ro);
  out.exclusion_log2 = found.min_log2_gso;
  const double tol = std::ldexp(1.0, -ro.tolerance_bits);

  std::optional<NumberField> field;
  if (alpha.kind == AlphaDescriptor::Kind::algebraic) field.emplace(alpha.min_poly);
  for (const auto& rel : found.relations) {
    RelationCertificate cert;
    for (int i = 0; i < n; ++i) {
      if (rel[i] != 0) cert.b.emplace_back(i, rel[i]);
    }
    normalize_sign(cert);
    cert.residual = residual_at(cert, alpha, bits).convert_to<double>();
    cert.residual_check = residual_at(cert, alpha, 2 * bits).convert_to<double>();
    if (!(cert.residual_check < tol)) continue;
    if (field) {
      cert.exact = field->is_trivial_product(cert.b);
      if (!cert.exact) continue;
    }
    out.certificates.push_back(cert);
  }
  std::sort(out.certificates.begin(), out.certificates.end(),
            [](const RelationCertificate& x, const RelationCertificate& y) { return x.b < y.b; });
  return out;
}

CasselsSet cassels_set(const AlphaDescriptor& alpha, std::int64_t N_max, double xi, const CasselsOptions& options) {
  if (!alpha.irrational()) {
    throw DomainError("alpha = " + alpha.label + " is rational; the Cassels set is defined for irrational alpha");
  }
  if (!(xi > 0 && xi < 1)) throw DomainError("window exponent xi must lie in (0, 1)");
  if (N_max < 1) throw DomainError("cassels_set needs N_max >= 1");
  if (!(alpha.approx > 0)) throw DomainError("cassels_set needs alpha > 0");
  CasselsSet set;
  set.alpha = alpha;
  set.xi = xi;
  set.membership.resize(N_max + 1);

  switch (alpha.kind) {
    case AlphaDescriptor::Kind::transcendental:
      for (auto& e : set.membership) e.proof = MembershipProof::transcendental;
      break;
    case AlphaDescriptor::Kind::numeric: {
      const std::int64_t prefix = std::min<std::int64_t>(N_max, 60);
      RelationSearch rs = detect_relations(alpha, prefix, 20);
      for (auto& e : set.membership) e.proof = MembershipProof::no_relation_found;
      for (const auto& c : rs.certificates) {
        set.certificates.push_back(c);
        auto& e = set.membership[c.top()];
        if (e.in_A) {
          e.in_A = false;
          e.proof = MembershipProof::certificate;
          e.certificate = static_cast<int>(set.certificates.size()) - 1;
        }
      }
      set.notes.push_back("numeric alpha: relations searched for n <= " + std::to_string(prefix) + " at height 20");
      break;
    }
    case AlphaDescriptor::Kind::algebraic: {
      ValuationEngine engine(alpha, options);
      for (std::int64_t n = 0; n <= N_max; ++n) set.membership[n] = engine.classify(n, set.certificates, set.notes);
      break;
    }
    case AlphaDescriptor::Kind::rational: break;
  }
  fill_windows(set, options);
  return set;
}

}  // namespace zlab
