#include "zlab/report.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>

namespace zlab {

std::string dec(double x) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string dec(cplx z) { return dec(z.real()) + "," + dec(z.imag()); }

double parse_double(const std::string& text) {
  double x = 0.0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), x);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw DomainError("not a decimal number: '" + text + "'");
  }
  return x;
}

cplx parse_cplx(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text), 0.0};
  return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

json with_schema(const std::string& schema, json body) {
  json j = {{"schema", schema}, {"version", kSchemaVersion}};
  j.update(body);
  return j;
}

namespace {

void expect_schema(const json& j, const std::string& schema) {
  if (j.value("schema", "") != schema) throw DomainError("expected a " + schema + " document");
  if (j.value("version", 0) != kSchemaVersion) {
    throw DomainError(schema + " version " + std::to_string(j.value("version", 0)) + " is not supported");
  }
}

int real_bits(const Real& x) { return static_cast<int>(mpfr_get_prec(x.backend().data())); }

json character_json(const Character& chi) {
  return {{"modulus", chi.modulus()}, {"exponents", chi.exponents()}, {"label", chi.label()}};
}

Character character_from_json(const json& j) {
  const auto q = j.at("modulus").get<std::int64_t>();
  const auto ex = j.at("exponents").get<std::vector<int>>();
  const CharacterSet table = character_table(q);
  for (const Character& c : table.characters()) {
    if (c.exponents() == ex) return c;
    if (c.conjugate().exponents() == ex) return c.conjugate();
  }
  throw DomainError("no character mod " + std::to_string(q) + " with the stored exponents");
}

const char* kind_name(IndexKind k) { return k == IndexKind::prime ? "prime" : "shifted_integer"; }

}  // namespace

json to_json(const RelationCertificate& c) {
  json b = json::array();
  for (auto [n, e] : c.b) b.push_back({n, e});
  return {{"b", b},
          {"height", c.height()},
          {"residual", dec(c.residual)},
          {"residual_check", dec(c.residual_check)},
          {"exact", c.exact}};
}

RelationCertificate certificate_from_json(const json& j) {
  RelationCertificate c;
  for (const auto& p : j.at("b")) c.b.emplace_back(p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>());
  if (c.b.empty()) throw DomainError("a relation certificate needs a nonzero exponent vector");
  c.residual = parse_double(j.at("residual").get<std::string>());
  c.residual_check = parse_double(j.at("residual_check").get<std::string>());
  c.exact = j.at("exact").get<bool>();
  return c;
}

json to_json(const WeightAssignment& w) {
  json entries = json::array();
  for (std::int64_t n : w.explicit_indices()) {
    json e = {n, dec(w.turns(n)), w.provenance(n)};
    entries.push_back(std::move(e));
  }
  json precise = json::array();
  for (const auto& [n, t] : w.precise()) {
    precise.push_back({n, to_decimal(t, digits10_for_bits(real_bits(t)) + 2), real_bits(t)});
  }
  json rules = json::array();
  for (const WeightRule& r : w.rules()) {
    json jr = {{"lo", r.lo},
               {"hi", r.hi},
               {"kind", r.kind == WeightRule::Kind::character ? "character" : "backbone"},
               {"conjugate", r.conjugate},
               {"phase_turns", dec(r.phase_turns)},
               {"seed", r.seed},
               {"provenance", r.provenance}};
    if (r.chi) jr["chi"] = character_json(*r.chi);
    rules.push_back(std::move(jr));
  }
  json seeds = json::array();
  for (const auto& [n, t] : w.seeds()) seeds.push_back({n, dec(t)});
  json certs = json::array();
  for (const auto& c : w.certificates) certs.push_back(to_json(c));
  return with_schema("zlab.weights", {{"index_kind", kind_name(w.index_kind())},
                                      {"alpha", w.alpha_descriptor},
                                      {"angle_unit", "turns"},
                                      {"entries", entries},
                                      {"precise", precise},
                                      {"rules", rules},
                                      {"seeds", seeds},
                                      {"certificates", certs}});
}

WeightAssignment weights_from_json(const json& j) {
  expect_schema(j, "zlab.weights");
  const std::string kind = j.at("index_kind").get<std::string>();
  if (kind != "prime" && kind != "shifted_integer") throw DomainError("unknown index_kind '" + kind + "'");
  WeightAssignment w(kind == "prime" ? IndexKind::prime : IndexKind::shifted_integer);
  w.alpha_descriptor = j.value("alpha", "");
  for (const auto& e : j.at("entries")) {
    w.set(e.at(0).get<std::int64_t>(), parse_double(e.at(1).get<std::string>()), e.at(2).get<std::string>());
  }
  for (const auto& e : j.at("precise")) {
    const std::int64_t n = e.at(0).get<std::int64_t>();
    const std::string prov = w.has(n) ? w.provenance(n) : "relation";
    PrecisionScope scope(e.at(2).get<int>());
    w.set_precise(n, Real(e.at(1).get<std::string>()), prov);
  }
  for (const auto& jr : j.at("rules")) {
    WeightRule r;
    r.lo = jr.at("lo").get<std::int64_t>();
    r.hi = jr.at("hi").get<std::int64_t>();
    r.kind = jr.at("kind").get<std::string>() == "backbone" ? WeightRule::Kind::backbone : WeightRule::Kind::character;
    r.conjugate = jr.at("conjugate").get<bool>();
    r.phase_turns = parse_double(jr.at("phase_turns").get<std::string>());
    r.seed = jr.at("seed").get<std::uint64_t>();
    r.provenance = jr.at("provenance").get<std::string>();
    if (jr.contains("chi")) r.chi = character_from_json(jr.at("chi"));
    w.add_rule(std::move(r));
  }
  for (const auto& s : j.at("seeds")) w.seed(s.at(0).get<std::int64_t>(), parse_double(s.at(1).get<std::string>()));
  for (const auto& c : j.at("certificates")) w.certificates.push_back(certificate_from_json(c));
  return w;
}

json to_json(const KernelGrid& g) {
  json values = json::array();
  for (cplx v : g.values()) values.push_back(dec(v));
  return with_schema("zlab.kernel",
                     {{"A", dec(g.A())}, {"B", dec(g.B())}, {"M", g.M()}, {"bound_N", dec(g.bound_N())}, {"values", values}});
}

KernelGrid kernel_from_json(const json& j) {
  expect_schema(j, "zlab.kernel");
  std::vector<cplx> values;
  for (const auto& v : j.at("values")) values.push_back(parse_cplx(v.get<std::string>()));
  if (static_cast<int>(values.size()) != j.at("M").get<int>() + 1) throw DomainError("kernel value count is not M + 1");
  return KernelGrid(parse_double(j.at("A").get<std::string>()), parse_double(j.at("B").get<std::string>()),
                    std::move(values));
}

std::string kernel_csv(const KernelGrid& g) {
  std::ostringstream os;
  os << "x,re_g,im_g\n";
  for (int m = 0; m <= g.M(); ++m) {
    os << dec(g.node(m)) << ',' << dec(g.values()[m].real()) << ',' << dec(g.values()[m].imag()) << '\n';
  }
  return os.str();
}

json to_json(const ApproximationReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  json stages = json::array();
  for (const BudgetStage& s : r.stages) {
    stages.push_back({{"stage", s.name},
                      {"measured", dec(s.measured)},
                      {"budget", dec(s.budget)},
                      {"pass", s.pass},
                      {"note", s.note}});
  }
  return with_schema("zlab.approximation", {{"pipeline", r.pipeline},
                                            {"parameters", params},
                                            {"budget_table", stages},
                                            {"final_error", dec(r.final_error)},
                                            {"eps", dec(r.eps)},
                                            {"success", r.success},
                                            {"notes", r.notes}});
}

json to_json(const CasselsSet& c) {
  std::map<std::string, std::int64_t> proofs;
  json dependent = json::array();
  for (std::int64_t n = 0; n <= c.N_max(); ++n) {
    const CasselsEntry& e = c.membership[n];
    ++proofs[to_string(e.proof)];
    if (!e.in_A) dependent.push_back({n, e.certificate});
  }
  json windows = json::array();
  for (const CasselsWindow& w : c.windows) {
    windows.push_back({{"N", w.N},
                       {"M", w.M},
                       {"in_A", w.in_A},
                       {"proven_in_A", w.proven_in_A},
                       {"density", dec(w.density)},
                       {"proven_density", dec(w.proven_density)}});
  }
  json certs = json::array();
  for (const auto& cert : c.certificates) certs.push_back(to_json(cert));
  return with_schema("zlab.cassels", {{"alpha", c.alpha.describe()},
                                      {"xi", dec(c.xi)},
                                      {"N_max", c.N_max()},
                                      {"proof_counts", proofs},
                                      {"dependent", dependent},
                                      {"certificates", certs},
                                      {"windows", windows},
                                      {"notes", c.notes}});
}

json to_json(const RelationSearch& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  return with_schema("zlab.relations", {{"certificates", certs},
                                        {"precision_bits", r.precision_bits},
                                        {"exclusion_log2", dec(r.exclusion_log2)},
                                        {"method", r.method}});
}

json to_json(const ShiftProblem& p, const ShiftResult& r) {
  json gens = json::array(), targets = json::array();
  for (double x : p.generators) gens.push_back(dec(x));
  for (cplx w : p.targets) targets.push_back(dec(w));
  return with_schema("zlab.shift", {{"generators", gens},
                                    {"targets", targets},
                                    {"eps", dec(p.eps)},
                                    {"T_max", dec(p.T_max)},
                                    {"found", r.found},
                                    {"t", dec(r.t)},
                                    {"defect", dec(r.defect)},
                                    {"verified_defect", dec(r.verified_defect)},
                                    {"method", r.method},
                                    {"candidates", r.candidates},
                                    {"scan_evaluations", dec(r.scan_evaluations)}});
}

json to_json(const DensityEstimate& d) {
  json intervals = json::array();
  for (auto [a, b] : d.hit_intervals) intervals.push_back({dec(a), dec(b)});
  return with_schema("zlab.density", {{"T", dec(d.T)},
                                      {"sample_count", d.sample_count},
                                      {"hits", d.hits},
                                      {"hit_fraction", dec(d.hit_fraction)},
                                      {"wilson_95", {dec(d.wilson_low), dec(d.wilson_high)}},
                                      {"hit_intervals", intervals},
                                      {"rng_seed", d.rng_seed},
                                      {"eps", dec(d.eps)},
                                      {"delta", dec(d.delta)}});
}

std::string density_csv(const DensityEstimate& d) {
  std::ostringstream os;
  os << "t,sup_defect,complete\n";
  for (const DensitySample& s : d.samples) os << dec(s.t) << ',' << dec(s.defect) << ',' << (s.complete ? 1 : 0) << '\n';
  return os.str();
}

namespace {

json box_json(const RectContour& b) {
  return {{"sigma1", dec(b.sigma1)}, {"sigma2", dec(b.sigma2)}, {"t1", dec(b.t1)}, {"t2", dec(b.t2)},
          {"nodes_per_edge", b.nodes_per_edge}};
}

}  // namespace

json to_json(double alpha, const RectContour& box, const ZeroCount& z) {
  return with_schema("zlab.zeros", {{"alpha", dec(alpha)},
                                    {"box", box_json(box)},
                                    {"count", z.count},
                                    {"residual", dec(z.winding_residual)},
                                    {"min_modulus", dec(z.min_modulus)},
                                    {"node_count", z.node_count}});
}

json to_json(double alpha, const ZeroHunt& h) {
  json j = {{"alpha", dec(alpha)},
            {"status", h.status},
            {"min_modulus_scanned", dec(h.min_modulus)},
            {"argmin", dec(h.argmin)},
            {"t_scanned", dec(h.t_scanned)}};
  if (h.confirmed) {
    j["zero"] = dec(h.zero);
    j["box"] = box_json(h.box);
    j["count"] = h.box_count.count;
    j["residual"] = dec(h.box_count.winding_residual);
    j["min_modulus"] = dec(h.box_count.min_modulus);
    j["node_count"] = h.box_count.node_count;
  }
  return with_schema("zlab.zero_hunt", j);
}

json to_json(double alpha, double T, double delta, const IntegralBound& b) {
  return with_schema("zlab.bound_check", {{"alpha", dec(alpha)},
                                          {"T", dec(T)},
                                          {"delta", dec(delta)},
                                          {"integral", dec(b.integral)},
                                          {"quadrature_error", dec(b.quadrature_error)},
                                          {"log10_integral", dec(b.log10_integral)},
                                          {"log10_bound", dec(b.log10_bound)},
                                          {"bound", dec(b.bound)},
                                          {"pass", b.pass}});
}

}  // namespace zlab
