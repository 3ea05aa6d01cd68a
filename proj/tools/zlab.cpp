#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "zlab/acceptance.hpp"
#include "zlab/analytic_checks.hpp"
#include "zlab/characters.hpp"
#include "zlab/diophantine.hpp"
#include "zlab/hurwitz_weights.hpp"
#include "zlab/laplace.hpp"
#include "zlab/lfunction.hpp"
#include "zlab/prime_weights.hpp"
#include "zlab/relations.hpp"
#include "zlab/report.hpp"
#include "zlab/zeta.hpp"

using namespace zlab;

namespace {

enum Exit { ok = 0, invariant_failed = 1, config_error = 2, infeasible = 3 };

// Raised for a bad flag or config value; names the field.
struct ConfigError : std::runtime_error {
  ConfigError(std::string field, const std::string& what) : std::runtime_error(what), field(std::move(field)) {}
  std::string field;
};

struct RunConfig {
  int precision_bits = 128;
  int grid_boundary = 64;
  int grid_interior = 64;
  double relation_tolerance = 1e-20;  // |prod omega^b - 1| accepted for every certificate
  double index_budget = 1e6;
  double P_budget = 1e6;
  double T_max = 1e7;
  std::uint64_t rng_seed = 1;
  std::string out_dir;

  json to_json() const {
    return {{"precision_bits", precision_bits}, {"grid_boundary", grid_boundary},
            {"grid_interior", grid_interior},   {"relation_tolerance", dec(relation_tolerance)},
            {"index_budget", dec(index_budget)}, {"P_budget", dec(P_budget)},
            {"T_max", dec(T_max)},              {"rng_seed", rng_seed}};
  }
};

template <class T>
void read_field(const json& j, const char* key, T& into) {
  if (!j.contains(key)) return;
  try {
    if constexpr (std::is_same_v<T, double>) {
      into = j[key].is_string() ? parse_double(j[key].get<std::string>()) : j[key].get<double>();
    } else {
      into = j[key].get<T>();
    }
  } catch (const std::exception& e) {
    throw ConfigError(key, std::string("config field '") + key + "' has the wrong type");
  }
}

void validate(const RunConfig& c) {
  auto positive = [](const char* field, double v) {
    if (!(v > 0)) throw ConfigError(field, std::string(field) + " must be positive");
  };
  if (c.precision_bits < 53 || c.precision_bits > 1 << 16) {
    throw ConfigError("precision_bits", "precision_bits must lie in [53, 65536]");
  }
  if (c.grid_boundary < 4) throw ConfigError("grid_boundary", "grid_boundary must be at least 4");
  if (c.grid_interior < 0) throw ConfigError("grid_interior", "grid_interior must be nonnegative");
  positive("relation_tolerance", c.relation_tolerance);
  positive("index_budget", c.index_budget);
  positive("P_budget", c.P_budget);
  positive("T_max", c.T_max);
}

// Complex literals: "2", "-0.4i", "0.3-0.4i", "i", "e:0.25" (unit root, turns).
cplx parse_complex(std::string text) {
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  if (text.rfind("e:", 0) == 0) {
    const double t = parse_double(text.substr(2));
    return std::polar(1.0, 2 * M_PI * t);
  }
  auto number = [&](const std::string& t) {
    try {
      return parse_double(t);
    } catch (const Error&) {
      throw ConfigError("complex", "cannot read '" + text + "' as a complex number");
    }
  };
  if (text.empty()) throw ConfigError("complex", "empty complex number");
  if (text.back() != 'i') return {number(text), 0.0};
  // split before the last sign that does not start the string or an exponent
  std::size_t cut = 0;
  for (std::size_t k = 1; k + 1 < text.size(); ++k) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') cut = k;
  }
  const std::string re = text.substr(0, cut);
  std::string im = text.substr(cut, text.size() - 1 - cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  if (im[0] == '+') im = im.substr(1);
  return {re.empty() ? 0.0 : number(re), number(im)};
}

std::vector<cplx> parse_complex_list(const std::vector<std::string>& items) {
  std::vector<cplx> out;
  for (const auto& s : items) out.push_back(parse_complex(s));
  return out;
}

CompactRegion parse_region(const std::string& spec, const RunConfig& c) {
  auto numbers = [&](const std::string& body) {
    std::vector<double> v;
    std::stringstream ss(body);
    for (std::string item; std::getline(ss, item, ',');) v.push_back(parse_double(item));
    return v;
  };
  if (spec.rfind("disc:", 0) == 0) {
    const auto v = numbers(spec.substr(5));
    if (v.size() != 3) throw ConfigError("K", "disc needs cx,cy,r");
    return CompactRegion::disc({v[0], v[1]}, v[2], c.grid_boundary, c.grid_interior);
  }
  if (spec.rfind("rect:", 0) == 0) {
    const auto v = numbers(spec.substr(5));
    if (v.size() != 4) throw ConfigError("K", "rect needs x0,y0,x1,y1");
    return CompactRegion::rectangle({v[0], v[1]}, {v[2], v[3]}, c.grid_boundary, c.grid_interior);
  }
  throw ConfigError("K", "K must be disc:cx,cy,r or rect:x0,y0,x1,y1");
}

// "zero", "poly:c0,c1,..." (ascending, complex literals), "quad:SEED", or "csv:FILE"
// with rows re_s,im_s,re_f,im_f.
TargetFunction parse_target(const std::string& spec) {
  if (spec == "zero") return TargetFunction::zero();
  if (spec.rfind("poly:", 0) == 0) {
    std::vector<cplx> coeffs;
    std::stringstream ss(spec.substr(5));
    for (std::string item; std::getline(ss, item, ',');) coeffs.push_back(parse_complex(item));
    return TargetFunction::polynomial(coeffs);
  }
  if (spec.rfind("quad:", 0) == 0) return seeded_quadratic_target(std::stoull(spec.substr(5)));
  if (spec.rfind("csv:", 0) == 0) {
    std::ifstream in(spec.substr(4));
    if (!in) throw ConfigError("target", "cannot open " + spec.substr(4));
    std::vector<cplx> pts, vals;
    for (std::string line; std::getline(in, line);) {
      if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
      std::stringstream ss(line);
      std::vector<double> v;
      for (std::string item; std::getline(ss, item, ',');) v.push_back(parse_double(item));
      if (v.size() != 4) throw ConfigError("target", "sample rows need re_s,im_s,re_f,im_f");
      pts.emplace_back(v[0], v[1]);
      vals.emplace_back(v[2], v[3]);
    }
    return TargetFunction::samples(pts, vals);
  }
  throw ConfigError("target", "target must be zero, poly:..., quad:SEED or csv:FILE");
}

// "q:index" in character_table(q).
Character parse_character(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("chi", "characters are written q:index");
  const std::int64_t q = std::stoll(spec.substr(0, colon));
  const std::size_t idx = std::stoul(spec.substr(colon + 1));
  const CharacterSet table = character_table(q);
  if (idx >= table.size()) throw ConfigError("chi", "mod " + std::to_string(q) + " has only " + std::to_string(table.size()) + " characters");
  return table[idx];
}

std::vector<Character> parse_characters(const std::vector<std::string>& items) {
  std::vector<Character> out;
  for (const auto& s : items) out.push_back(parse_character(s));
  return out;
}

std::map<std::int64_t, cplx> parse_seeds(const std::vector<std::string>& items) {
  std::map<std::int64_t, cplx> out;
  for (const auto& s : items) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("seeds", "seeds are written p=value");
    out[std::stoll(s.substr(0, eq))] = parse_complex(s.substr(eq + 1));
  }
  return out;
}

OmegaMode parse_mode(const std::string& s) {
  if (s == "auto") return OmegaMode::automatic;
  if (s == "algebraic") return OmegaMode::algebraic;
  if (s == "transcendental") return OmegaMode::transcendental;
  throw ConfigError("mode", "mode must be auto, algebraic or transcendental");
}

// Components below `err` print as 0.
std::string complex_text(const MpComplex& z, int digits, double err = 0.0) {
  const Real re = abs(z.re) <= err ? Real(0) : z.re;
  std::string im = to_decimal(abs(z.im) <= err ? Real(0) : z.im, digits);
  const bool neg = !im.empty() && im[0] == '-';
  return to_decimal(re, digits) + (neg ? " - " : " + ") + (neg ? im.substr(1) : im) + "i";
}

struct Output {
  std::string command;
  std::vector<std::string> argv;
  RunConfig config;

  // Report wrapper shared by every subcommand: the budget table is empty for
  // pipelines without staged epsilon shares.
  json wrap(json result, const json& budget_table = json::array()) const {
    return with_schema("zlab.run", {{"command", command},
                                    {"config", config.to_json()},
                                    {"rng_seed", config.rng_seed},
                                    {"budget_table", budget_table},
                                    {"result", std::move(result)}});
  }

  void emit(const std::string& name, const json& report, const std::map<std::string, std::string>& csv = {}) const {
    if (config.out_dir.empty()) {
      std::cout << report.dump(2) << "\n";
      return;
    }
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    const fs::path base = fs::path(config.out_dir) / name;
    std::ofstream(base.string() + ".json") << report.dump(2) << "\n";
    for (const auto& [suffix, text] : csv) std::ofstream(base.string() + "." + suffix + ".csv") << text;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    std::ofstream(base.string() + ".meta.json") << json{{"written_at", stamp}, {"argv", argv}}.dump(2) << "\n";
    std::cout << "wrote " << base.string() << ".json\n";
  }
};

json stages_of(const ApproximationReport& r) { return to_json(r)["budget_table"]; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zlab: Hurwitz zeta universality laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string config_path;
  int precision_flag = 0;
  std::int64_t seed_flag = -1;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--precision", precision_flag, "working precision in bits (overrides config and ZLAB_PRECISION)");
  app.add_option("--seed", seed_flag, "RNG seed (overrides config and ZLAB_SEED)");
  app.add_option("--out", cfg.out_dir, "directory for report files; stdout when absent");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate zeta(s, alpha), L(lambda, alpha, s) or L(s, chi)");
  std::string e_alpha = "1", e_s, e_chi;
  double e_lambda = 0.0;
  int e_digits = 30;
  eval->add_option("--alpha", e_alpha, "shift parameter (decimal, p/q, 1/pi, sqrt2-1, ...)");
  eval->add_option("--s", e_s, "point s as a complex literal")->required();
  eval->add_option("--lambda", e_lambda, "Lerch parameter");
  eval->add_option("--chi", e_chi, "Dirichlet character q:index instead of alpha");
  eval->add_option("--digits", e_digits, "significant digits printed");

  // decompose
  auto* decompose = app.add_subcommand("decompose", "character decomposition of zeta(s, p/q)");
  std::int64_t d_p = 1, d_q = 3;
  std::string d_s = "2";
  decompose->add_option("--p", d_p)->required();
  decompose->add_option("--q", d_q)->required();
  decompose->add_option("--s", d_s);

  // fit
  auto* fit = app.add_subcommand("fit", "truncated Laplace fit of a target on K");
  std::string f_target = "zero", f_K = "disc:1,0,0.5";
  double f_eps = 1e-2, f_A = 0.0, f_B = 40.0;
  int f_M = 400;
  fit->add_option("--target", f_target, "zero | poly:c0,c1,... | quad:SEED | csv:FILE");
  fit->add_option("--K", f_K, "disc:cx,cy,r or rect:x0,y0,x1,y1");
  fit->add_option("--eps", f_eps);
  fit->add_option("--A", f_A);
  fit->add_option("--B", f_B);
  fit->add_option("--M", f_M);

  // weights-primes
  auto* wprimes = app.add_subcommand("weights-primes", "prime-indexed weights: partition, constants or le2");
  std::string p_mode = "partition", p_K = "disc:0.5,0,0.25", p_aux;
  std::vector<std::string> p_b, p_C, p_chars, p_seeds, p_targets;
  double p_xi = 1.0, p_P = 1e4, p_eps = 0.05, p_delta = 0.5;
  wprimes->add_option("--mode", p_mode, "partition | constants | le2");
  wprimes->add_option("--b", p_b, "block targets b_k")->delimiter(',');
  wprimes->add_option("--C", p_C, "constants C_k")->delimiter(',');
  wprimes->add_option("--chars", p_chars, "characters q:index")->delimiter(',');
  wprimes->add_option("--aux", p_aux, "auxiliary character q:index");
  wprimes->add_option("--seeds", p_seeds, "pinned values p=value")->delimiter(',');
  wprimes->add_option("--targets", p_targets, "le2 targets, one per character");
  wprimes->add_option("--K", p_K);
  wprimes->add_option("--xi", p_xi);
  wprimes->add_option("--P", p_P);
  wprimes->add_option("--eps", p_eps);
  wprimes->add_option("--delta", p_delta);

  // weights-hurwitz and weights-lerch
  std::string h_alpha = "1/pi", h_target = "zero", h_K = "disc:0.5,0,0.25", h_mode = "auto";
  double h_delta = 0.25, h_B = 2.0, h_eps = 0.3, h_lambda = 0.0;
  auto* whurwitz = app.add_subcommand("weights-hurwitz", "completely multiplicative weights on n + alpha");
  auto* wlerch = app.add_subcommand("weights-lerch", "the same with the factor e(lambda n)");
  for (auto* sc : {whurwitz, wlerch}) {
    sc->add_option("--alpha", h_alpha, "irrational alpha descriptor");
    sc->add_option("--target", h_target);
    sc->add_option("--K", h_K);
    sc->add_option("--delta", h_delta);
    sc->add_option("--B", h_B);
    sc->add_option("--eps", h_eps);
  }
  whurwitz->add_option("--mode", h_mode, "auto | algebraic | transcendental");
  wlerch->add_option("--lambda", h_lambda)->required();

  // cassels
  auto* cassels = app.add_subcommand("cassels", "Cassels set membership and window densities");
  std::string c_alpha = "sqrt2-1";
  std::int64_t c_N = 10000;
  double c_xi = 0.5;
  cassels->add_option("--alpha", c_alpha);
  cassels->add_option("--N", c_N);
  cassels->add_option("--xi", c_xi);

  // shift
  auto* shift = app.add_subcommand("shift", "find t with x_j^{-it} close to the targets");
  std::vector<double> s_gens;
  std::vector<std::string> s_targets;
  double s_eps = 0.1;
  double s_T = 0.0;
  shift->add_option("--generators", s_gens)->delimiter(',')->required();
  shift->add_option("--targets", s_targets, "unit targets, e.g. -1 or e:0.25")->delimiter(',')->required();
  shift->add_option("--eps", s_eps);
  shift->add_option("--T-max", s_T, "search horizon (default from config)");

  // density
  auto* density = app.add_subcommand("density", "Monte-Carlo measure of the approximating t-set");
  std::string n_series = "hurwitz", n_alpha = "1/pi", n_chi = "4:1", n_target = "zero", n_K = "disc:0.5,0,0.25";
  double n_lambda = 0.0, n_delta = 0.2, n_eps = 1.0, n_T = 1e4;
  std::int64_t n_samples = 1000;
  density->add_option("--series", n_series, "hurwitz | lerch | L");
  density->add_option("--alpha", n_alpha);
  density->add_option("--lambda", n_lambda);
  density->add_option("--chi", n_chi);
  density->add_option("--target", n_target);
  density->add_option("--K", n_K);
  density->add_option("--delta", n_delta);
  density->add_option("--eps", n_eps);
  density->add_option("--T", n_T);
  density->add_option("--samples", n_samples);

  // zeros
  auto* zeros = app.add_subcommand("zeros", "count zeros in a rectangle, or hunt for one");
  double z_alpha = 0.25, z_s1 = 1.05, z_s2 = 1.5, z_t1 = 0.0, z_t2 = 10.0;
  int z_nodes = 64;
  bool z_hunt = false;
  zeros->add_option("--alpha", z_alpha);
  zeros->add_option("--sigma1", z_s1);
  zeros->add_option("--sigma2", z_s2);
  zeros->add_option("--t1", z_t1);
  zeros->add_option("--t2", z_t2);
  zeros->add_option("--nodes", z_nodes, "nodes per edge");
  zeros->add_flag("--hunt", z_hunt, "scan [t1, t2] for a modulus dip and confirm it");

  // bound-check
  auto* bound = app.add_subcommand("bound-check", "integral of |zeta(1+it, alpha)| against the explicit lower bound");
  double b_alpha = 0.25, b_T = 10.0, b_delta = 0.05;
  bound->add_option("--alpha", b_alpha);
  bound->add_option("--T", b_T);
  bound->add_option("--delta", b_delta);

  // verify-all
  auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
  std::vector<int> v_only;
  verify->add_option("--only", v_only, "criterion numbers")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  Output out;
  out.argv.assign(argv, argv + argc);
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("config", "cannot open " + config_path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError("config", std::string("config is not valid JSON: ") + e.what());
      }
      read_field(j, "precision_bits", cfg.precision_bits);
      read_field(j, "grid_boundary", cfg.grid_boundary);
      read_field(j, "grid_interior", cfg.grid_interior);
      read_field(j, "relation_tolerance", cfg.relation_tolerance);
      read_field(j, "index_budget", cfg.index_budget);
      read_field(j, "P_budget", cfg.P_budget);
      read_field(j, "T_max", cfg.T_max);
      read_field(j, "rng_seed", cfg.rng_seed);
      if (cfg.out_dir.empty()) read_field(j, "out_dir", cfg.out_dir);
    }
    if (const char* env = std::getenv("ZLAB_PRECISION")) cfg.precision_bits = std::atoi(env);
    if (const char* env = std::getenv("ZLAB_SEED")) cfg.rng_seed = std::strtoull(env, nullptr, 10);
    if (precision_flag) cfg.precision_bits = precision_flag;
    if (seed_flag >= 0) cfg.rng_seed = static_cast<std::uint64_t>(seed_flag);
    validate(cfg);
    out.config = cfg;
    out.command = app.get_subcommands().front()->get_name();
    PrecisionScope scope(cfg.precision_bits);

    if (*eval) {
      const cplx s = parse_complex(e_s);
      const int bits = cfg.precision_bits;
      PrecisionComplex v;
      json result = {{"s", dec(s)}};
      if (!e_chi.empty()) {
        const Character chi = parse_character(e_chi);
        v = dirichlet_L(PrecisionComplex::exact(s, bits), chi, bits);
        result["chi"] = chi.label();
      } else {
        const AlphaDescriptor a = AlphaDescriptor::parse(e_alpha);
        const Real alpha = a.value();
        v = e_lambda == 0.0 ? hurwitz_zeta(s, alpha, bits) : lerch_zeta(e_lambda, alpha, s, bits);
        result["alpha"] = a.describe();
        result["lambda"] = dec(e_lambda);
      }
      result["value"] = complex_text(v.value(), e_digits);
      result["err_abs"] = dec(v.err_abs());
      result["prec_bits"] = v.prec_bits();
      if (out.config.out_dir.empty()) {
         std::cout << complex_text(v.value(), e_digits, v.err_abs()) << "  (err <= " << v.err_abs() << ")\n";
      } else {
        out.emit("eval", out.wrap(result));
      }
      return ok;
    }

    if (*decompose) {
      const PrecisionComplex s = PrecisionComplex::exact(parse_complex(d_s), cfg.precision_bits);
      const DecompositionResult d = hurwitz_char_decomposition(s, d_p, d_q, cfg.precision_bits);
      const PrecisionComplex direct = hurwitz_zeta(s, Real(Real(d_p) / d_q), cfg.precision_bits);
      const double diff = abs_diff(d.value, direct);
      const bool agree = within_combined_error(d.value, direct);
      json result = {{"p", d_p},
                     {"q", d_q},
                     {"decomposition", complex_text(d.value.value(), 30)},
                     {"direct", complex_text(direct.value(), 30)},
                     {"difference", dec(diff)},
                     {"within_error", agree},
                     {"flags", d.orthogonality_gap ? json::array({"orthogonality_gap: p = 1 mod q, so the character sum is phi(q)"})
                                                   : json::array()}};
      out.emit("decompose", out.wrap(result));
      return agree ? ok : invariant_failed;
    }

    if (*fit) {
      const CompactRegion K = parse_region(f_K, cfg);
      const FitResult r = fit_laplace(parse_target(f_target), K, f_eps, f_A, f_B, f_M);
      json result = {{"K", K.describe()},
                     {"achieved_sup_error", dec(r.achieved_sup_error)},
                     {"eps", dec(f_eps)},
                     {"success", r.success},
                     {"ridge", dec(r.ridge)},
                     {"message", r.message},
                     {"kernel", to_json(r.kernel)}};
      out.emit("fit", out.wrap(result), {{"kernel", kernel_csv(r.kernel)}});
      if (!r.success) throw InfeasibleError(r.message, "eps", r.achieved_sup_error);
      return ok;
    }

    if (*wprimes) {
      const std::vector<Character> chars = parse_characters(p_chars);
      if (chars.empty()) throw ConfigError("chars", "weights-primes needs --chars");
      if (p_mode == "partition") {
        std::optional<Character> aux;
        if (!p_aux.empty()) aux = parse_character(p_aux);
        const PartitionResult r = partition_primes(parse_complex_list(p_b), chars, p_xi, p_P, aux);
        json achieved = json::array(), errors = json::array();
        for (cplx a : r.achieved) achieved.push_back(dec(a));
        for (double e : r.errors) errors.push_back(dec(e));
        json result = {{"aux", r.aux.label()},        {"prime_count", r.prime_count}, {"achieved", achieved},
                       {"errors", errors},            {"max_error", dec(r.max_error)}, {"weights", to_json(r.weights)}};
        out.emit("weights-primes", out.wrap(result));
        return ok;
      }
      if (p_mode == "constants") {
        const TargetConstantsResult r =
            target_constants(parse_complex_list(p_C), parse_seeds(p_seeds), chars, p_eps, cfg.P_budget);
        json achieved = json::array();
        for (cplx a : r.achieved) achieved.push_back(dec(a));
        json result = {{"M", r.M},   {"P", r.P},       {"achieved", achieved}, {"max_error", dec(r.max_error)},
                       {"eps", dec(r.eps)}, {"success", r.success}, {"weights", to_json(r.weights)}};
        out.emit("weights-primes", out.wrap(result));
        bool echoed = true;
        for (const auto& [p, a] : parse_seeds(p_seeds)) echoed = echoed && r.weights.turns(p) == turns_of(a);
        return r.success && echoed ? ok : invariant_failed;
      }
      if (p_mode == "le2") {
        std::vector<TargetFunction> f;
        for (const auto& t : p_targets) f.push_back(parse_target(t));
        while (f.size() < chars.size()) f.push_back(TargetFunction::zero());
        Le2Config lc;
        lc.P3_cap = cfg.P_budget;
        const Le2Result r = construct_le2(f, parse_region(p_K, cfg), parse_seeds(p_seeds), chars, p_delta, p_eps, lc);
        json result = {{"P1", r.P1}, {"P2", r.P2}, {"P3", r.P3}, {"P4", r.P4}, {"report", to_json(r.report)}};
        out.emit("weights-primes", out.wrap(result, stages_of(r.report)));
        return r.report.all_stages_pass() ? ok : invariant_failed;
      }
      throw ConfigError("mode", "weights-primes mode must be partition, constants or le2");
    }

    if (*whurwitz || *wlerch) {
      HurwitzConfig hc;
      hc.eps = h_eps;
      hc.index_budget = cfg.index_budget;
      hc.consistency_tol = cfg.relation_tolerance;
      const CompactRegion K = parse_region(h_K, cfg);
      const AlphaDescriptor alpha = AlphaDescriptor::parse(h_alpha);
      const TargetFunction f = parse_target(h_target);
      const HurwitzResult r = *wlerch ? build_omega_lerch(f, K, alpha, h_lambda, h_delta, h_B, hc)
                                      : build_omega_hurwitz(f, K, alpha, h_delta, h_B, parse_mode(h_mode), hc);
      json result = {{"alpha", alpha.describe()},
                     {"mode", to_string(r.mode)},
                     {"lambda", dec(r.lambda)},
                     {"delta", dec(r.delta)},
                     {"B", dec(r.B)},
                     {"N", r.N},
                     {"N1", r.N1},
                     {"multiplicativity_defect", dec(r.multiplicativity_defect)},
                     {"report", to_json(r.report)},
                     {"weights", to_json(r.weights)}};
      out.emit(out.command, out.wrap(result, stages_of(r.report)));
      // unit modulus holds by construction; multiplicativity is checked here
      return r.multiplicativity_defect < cfg.relation_tolerance ? ok : invariant_failed;
    }

    if (*cassels) {
      CasselsOptions co;
      co.precision_bits = std::max(256, cfg.precision_bits);
      const CasselsSet c = cassels_set(AlphaDescriptor::parse(c_alpha), c_N, c_xi, co);
      out.emit("cassels", out.wrap(to_json(c)));
      return ok;
    }

    if (*shift) {
      ShiftProblem p;
      p.generators = s_gens;
      p.targets = parse_complex_list(s_targets);
      p.eps = s_eps;
      p.T_max = s_T > 0 ? s_T : cfg.T_max;
      ShiftOptions o;
      o.seed = cfg.rng_seed;
      o.verify_bits = cfg.precision_bits;
      const ShiftResult r = find_shift(p, o);
      out.emit("shift", out.wrap(to_json(p, r)));
      if (out.config.out_dir.empty()) std::cerr << (r.found ? "t = " : "best t = ") << dec(r.t) << "\n";
      if (!r.found) throw InfeasibleError("no witness with defect < eps below T_max", "T_max", NAN);
      return ok;
    }

    if (*density) {
      SeriesSpec series;
      if (n_series == "hurwitz") {
        series = SeriesSpec::hurwitz(AlphaDescriptor::parse(n_alpha).value_double());
      } else if (n_series == "lerch") {
        series = SeriesSpec::lerch(n_lambda, AlphaDescriptor::parse(n_alpha).value_double());
      } else if (n_series == "L") {
        series = SeriesSpec::dirichlet(parse_character(n_chi));
      } else {
        throw ConfigError("series", "series must be hurwitz, lerch or L");
      }
      const DensityEstimate d = density_estimate(series, parse_target(n_target), parse_region(n_K, cfg), n_delta,
                                                 n_eps, n_T, n_samples, cfg.rng_seed);
      json result = to_json(d);
      result["series"] = series.describe();
      out.emit("density", out.wrap(result), {{"samples", density_csv(d)}});
      return ok;
    }

    if (*zeros) {
      if (z_hunt) {
        const ZeroHunt h = hunt_zero(z_alpha, z_s1, z_s2, z_t1, z_t2);
        out.emit("zeros", out.wrap(to_json(z_alpha, h)));
        return ok;
      }
      const RectContour box{z_s1, z_s2, z_t1, z_t2, z_nodes};
      const ZeroCount z = count_zeros_rect(z_alpha, box);
      out.emit("zeros", out.wrap(to_json(z_alpha, box, z)));
      return ok;
    }

    if (*bound) {
      const IntegralBound b = integral_lower_bound_check(b_alpha, b_T, b_delta);
      out.emit("bound-check", out.wrap(to_json(b_alpha, b_T, b_delta, b)));
      return b.pass ? ok : invariant_failed;
    }

    if (*verify) {
      json results = json::array();
      int failed = 0;
      run_acceptance(v_only, [&](const CriterionResult& r) {
        std::cout << format_line(r) << std::endl;
        failed += !r.pass;
        results.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail},
                           {"data", r.data}});
      });
      if (!out.config.out_dir.empty()) out.emit("verify-all", out.wrap(results));
      return failed == 0 ? ok : invariant_failed;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error [" << e.field << "]: " << e.what() << "\n";
    return config_error;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what();
    if (!e.parameter.empty()) {
      std::cerr << " (parameter " << e.parameter;
      if (!std::isnan(e.minimal)) std::cerr << ", feasible from " << e.minimal;
      std::cerr << ")";
    }
    std::cerr << "\n";
    return infeasible;
  } catch (const Error& e) {
    std::cerr << e.kind() << " error: " << e.what() << "\n";
    const std::string& k = e.kind();
    return k == "domain" || k == "precondition" || k == "out_of_regime" || k == "pole" ? config_error
                                                                                         : invariant_failed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: unreadable number (" << e.what() << ")\n";
    return config_error;
  }
  return ok;
}
