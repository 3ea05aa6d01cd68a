#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zlab/number_field.hpp"
#include "zlab/weights.hpp"

namespace zlab {

// What is known about the shift parameter alpha > 0.
struct AlphaDescriptor {
  enum class Kind { algebraic, transcendental, numeric, rational };
  Kind kind = Kind::numeric;
  std::string label;
  std::vector<std::int64_t> min_poly;  // ascending, monic (algebraic)
  double approx = 0.0;
  std::int64_t p = 0, q = 1;           // rational
  std::function<Real()> value_fn;      // transcendental / numeric, at the current precision

  static AlphaDescriptor algebraic(std::vector<std::int64_t> monic_poly, double approx, std::string label);
  static AlphaDescriptor transcendental(std::string label, std::function<Real()> fn);
  static AlphaDescriptor numeric(std::string decimal);
  static AlphaDescriptor rational(std::int64_t p, std::int64_t q);
  // "sqrt2-1", "cbrt2", "cbrt2-1", "1/pi", "1/e", "pi-3", "p/q", "poly:c0,c1,...@approx", or a decimal.
  static AlphaDescriptor parse(const std::string& text);

  bool irrational() const { return kind != Kind::rational; }
  Real value() const;  // at the current default precision
  double value_double() const;
  std::string describe() const;
};

struct RelationSearchOptions {
  int precision_bits = 0;  // 0: enough for the height and dimension
  int lll_dimension_cap = 160;
};

struct RelationSearch {
  std::vector<RelationCertificate> certificates;
  int precision_bits = 0;
  // log2 of the radius below which no further relation vector exists in the lattice
  double exclusion_log2 = 0.0;
  std::string method;
};

// Integer relations among log(n + alpha), 0 <= n <= N, with |b_n| <= height.
RelationSearch detect_relations(const AlphaDescriptor& alpha, std::int64_t N, std::int64_t height,
                                const RelationSearchOptions& options = {});

enum class MembershipProof {
  new_prime,          // a prime ideal of n + alpha divides no earlier k + alpha
  valuation_rank,     // the valuation vector of n + alpha is independent of earlier ones
  unit_rank,          // new direction in the unit lattice
  transcendental,     // alpha transcendental: no multiplicative relations exist
  no_relation_found,  // searched, nothing at the height bound
  certificate         // dependent, witnessed by a certificate
};

struct CasselsEntry {
  bool in_A = true;
  MembershipProof proof = MembershipProof::no_relation_found;
  std::uint64_t witness_prime = 0;
  int certificate = -1;  // index into CasselsSet::certificates
};

struct CasselsWindow {
  std::int64_t N = 0;
  std::int64_t M = 0;  // window (N, N + M]
  std::int64_t in_A = 0;
  std::int64_t proven_in_A = 0;  // new_prime, valuation_rank, unit_rank or transcendental
  double density = 0.0;
  double proven_density = 0.0;
};

struct CasselsOptions {
  std::int64_t window_start = 100;
  std::int64_t unit_height = 1000000;
  int precision_bits = 256;
};

struct CasselsSet {
  AlphaDescriptor alpha;
  double xi = 0.5;
  std::vector<CasselsEntry> membership;  // n = 0 .. N_max
  std::vector<RelationCertificate> certificates;
  std::vector<CasselsWindow> windows;
  std::vector<std::string> notes;

  std::int64_t N_max() const { return static_cast<std::int64_t>(membership.size()) - 1; }
  bool in_A(std::int64_t n) const { return membership.at(n).in_A; }
  const RelationCertificate* witness(std::int64_t n) const;
};

// Membership in A = {n : log(n+alpha) not in span_Q {log(k+alpha) : k < n}} for
// 0 <= n <= N_max, and densities on the windows (N, N + N (log N)^{-xi}].
CasselsSet cassels_set(const AlphaDescriptor& alpha, std::int64_t N_max, double xi, const CasselsOptions& options = {});

const char* to_string(MembershipProof proof);

}  // namespace zlab
