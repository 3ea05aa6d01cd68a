#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zlab/characters.hpp"
#include "zlab/precision.hpp"
#include "zlab/region.hpp"

namespace zlab {

enum class IndexKind { prime, shifted_integer };

// Integer relation sum_n b_n log(n + alpha) = 0, b sparse and nonzero.
struct RelationCertificate {
  std::vector<std::pair<std::int64_t, std::int64_t>> b;  // (n, b_n), increasing n, b_n != 0
  double residual = 0.0;      // |sum b_n log(n+alpha)| at working precision
  double residual_check = 0;  // same at doubled precision
  bool exact = false;         // confirmed by exact arithmetic in the number field
  std::int64_t height() const;
  std::int64_t top() const { return b.back().first; }
  std::int64_t coefficient(std::int64_t n) const;
};

// A rule covering every prime in (lo, hi]: omega(p) = chi(p) or conj(chi(p)),
// times e^{2 pi i phase}; primes with chi(p) = 0 get omega = 1. Backbone rules
// draw a pseudorandom angle from (seed, p) instead.
struct WeightRule {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  enum class Kind { character, backbone } kind = Kind::character;
  std::optional<Character> chi;
  bool conjugate = false;
  double phase_turns = 0.0;
  std::uint64_t seed = 0;
  std::string provenance;
};

// Unit-modulus weights stored as angles in turns (so |omega| = 1 exactly).
// Explicit entries take precedence over rules; `precise` holds angles that
// need more than double precision (relation-forced values).
class WeightAssignment {
 public:
  explicit WeightAssignment(IndexKind kind = IndexKind::prime) : kind_(kind) {}

  IndexKind index_kind() const { return kind_; }
  std::string alpha_descriptor;

  void set(std::int64_t index, double turns, const std::string& provenance);
  void set_precise(std::int64_t index, const Real& turns, const std::string& provenance);
  void add_rule(WeightRule rule);
  void seed(std::int64_t index, double turns);

  bool has(std::int64_t index) const;
  // Angle in [0, 1) turns; throws if the index is not covered.
  double turns(std::int64_t index) const;
  Real turns_precise(std::int64_t index) const;
  cplx value(std::int64_t index) const;
  MpComplex value_mp(std::int64_t index) const;
  std::string provenance(std::int64_t index) const;

  // Explicit entries only, increasing index.
  std::vector<std::int64_t> explicit_indices() const;
  std::size_t explicit_count() const { return entries_.size(); }
  const std::vector<WeightRule>& rules() const { return rules_; }
  const std::map<std::int64_t, double>& seeds() const { return seeds_; }
  const std::map<std::int64_t, Real>& precise() const { return precise_; }
  const std::vector<std::string>& tags() const { return tags_; }

  std::vector<RelationCertificate> certificates;

  // Copy explicit entries, rules, seeds and certificates of `other` into this one.
  void merge(const WeightAssignment& other);

 private:
  struct Entry {
    std::int64_t index;
    double turns;
    std::uint16_t tag;
  };
  const Entry* find(std::int64_t index) const;
  const WeightRule* rule_for(std::int64_t index) const;
  std::uint16_t tag_id(const std::string& tag);

  IndexKind kind_;
  std::vector<Entry> entries_;  // sorted by index
  std::vector<WeightRule> rules_;
  std::map<std::int64_t, double> seeds_;
  std::map<std::int64_t, Real> precise_;
  std::vector<std::string> tags_;
};

// Angle of a unit complex number in [0, 1) turns.
double turns_of(cplx z);
// Pseudorandom angle in [0, 1) from (seed, index), splitmix64-based.
double backbone_turns(std::uint64_t seed, std::int64_t index);

struct BudgetStage {
  std::string name;
  double measured = 0.0;
  double budget = 0.0;
  bool pass = false;
  std::string note;
};

struct ApproximationReport {
  std::string pipeline;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<BudgetStage> stages;
  double final_error = 0.0;
  double eps = 0.0;
  bool success = false;
  std::vector<std::string> notes;

  void param(const std::string& key, const std::string& value) { parameters.emplace_back(key, value); }
  void param(const std::string& key, double value);
  BudgetStage& stage(const std::string& name, double measured, double budget, const std::string& note = "");
  const BudgetStage* find_stage(const std::string& name) const;
  bool all_stages_pass() const;
};

}  // namespace zlab
