#include "zlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace zlab {

std::int64_t RelationCertificate::height() const {
  std::int64_t h = 0;
  for (auto [n, c] : b) h = std::max(h, c < 0 ? -c : c);
  return h;
}

std::int64_t RelationCertificate::coefficient(std::int64_t n) const {
  for (auto [m, c] : b) {
    if (m == n) return c;
  }
  return 0;
}

double turns_of(cplx z) {
  double t = std::atan2(z.imag(), z.real()) / (2 * std::numbers::pi);
  if (t < 0) t += 1.0;
  if (t >= 1.0) t -= 1.0;
  return t;
}

double backbone_turns(std::uint64_t seed, std::int64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

namespace {

double wrap(double t) {
  t -= std::floor(t);
  return t >= 1.0 ? 0.0 : t;
}

}  // namespace

std::uint16_t WeightAssignment::tag_id(const std::string& tag) {
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (tags_[i] == tag) return static_cast<std::uint16_t>(i);
  }
  tags_.push_back(tag);
  return static_cast<std::uint16_t>(tags_.size() - 1);
}

void WeightAssignment::set(std::int64_t index, double turns, const std::string& provenance) {
  Entry e{index, wrap(turns), tag_id(provenance)};
  precise_.erase(index);
  if (entries_.empty() || entries_.back().index < index) {
    entries_.push_back(e);
    return;
  }
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& a, std::int64_t i) { return a.index < i; });
  if (it != entries_.end() && it->index == index) {
    *it = e;
  } else {
    entries_.insert(it, e);
  }
}

void WeightAssignment::set_precise(std::int64_t index, const Real& turns, const std::string& provenance) {
  Real t = turns - boost::multiprecision::floor(turns);
  set(index, t.convert_to<double>(), provenance);
  precise_[index] = t;
}

void WeightAssignment::add_rule(WeightRule rule) { rules_.push_back(std::move(rule)); }

void WeightAssignment::seed(std::int64_t index, double turns) {
  seeds_[index] = wrap(turns);
  set(index, turns, "seed");
}

const WeightAssignment::Entry* WeightAssignment::find(std::int64_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& a, std::int64_t i) { return a.index < i; });
  if (it != entries_.end() && it->index == index) return &*it;
  return nullptr;
}

const WeightRule* WeightAssignment::rule_for(std::int64_t index) const {
  for (const auto& r : rules_) {
    if (index > r.lo && index <= r.hi) return &r;
  }
  return nullptr;
}

bool WeightAssignment::has(std::int64_t index) const { return find(index) || rule_for(index); }

double WeightAssignment::turns(std::int64_t index) const {
  if (const Entry* e = find(index)) return e->turns;
  const WeightRule* r = rule_for(index);
  if (!r) throw DomainError("no weight assigned at index " + std::to_string(index));
  if (r->kind == WeightRule::Kind::backbone) return backbone_turns(r->seed, index);
  const std::int64_t a = r->chi->angle(index);
  if (a < 0) return 0.0;
  const double base = double(a) / double(r->chi->order());
  return wrap((r->conjugate ? -base : base) + r->phase_turns);
}

Real WeightAssignment::turns_precise(std::int64_t index) const {
  auto it = precise_.find(index);
  if (it != precise_.end()) return rebind(it->second);
  return Real(turns(index));
}

cplx WeightAssignment::value(std::int64_t index) const {
  const double t = 2 * std::numbers::pi * turns(index);
  return {std::cos(t), std::sin(t)};
}

MpComplex WeightAssignment::value_mp(std::int64_t index) const { return unit_root(turns_precise(index)); }

std::string WeightAssignment::provenance(std::int64_t index) const {
  if (const Entry* e = find(index)) return tags_[e->tag];
  if (const WeightRule* r = rule_for(index)) return r->provenance;
  return "";
}

std::vector<std::int64_t> WeightAssignment::explicit_indices() const {
  std::vector<std::int64_t> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.index);
  return out;
}

void WeightAssignment::merge(const WeightAssignment& other) {
  for (const auto& e : other.entries_) set(e.index, e.turns, other.tags_[e.tag]);
  for (const auto& [i, t] : other.precise_) precise_[i] = t;
  for (const auto& r : other.rules_) rules_.push_back(r);
  for (const auto& [i, t] : other.seeds_) seeds_[i] = t;
  for (const auto& c : other.certificates) certificates.push_back(c);
}

void ApproximationReport::param(const std::string& key, double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  parameters.emplace_back(key, os.str());
}

BudgetStage& ApproximationReport::stage(const std::string& name, double measured, double budget,
                                        const std::string& note) {
  stages.push_back({name, measured, budget, measured < budget, note});
  return stages.back();
}

const BudgetStage* ApproximationReport::find_stage(const std::string& name) const {
  for (const auto& s : stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool ApproximationReport::all_stages_pass() const {
  return std::all_of(stages.begin(), stages.end(), [](const BudgetStage& s) { return s.pass; });
}

}  // namespace zlab
