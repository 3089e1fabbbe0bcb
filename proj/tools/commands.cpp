#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "talbot/errors.hpp"
#include "talbot/evolve.hpp"
#include "talbot/experiments.hpp"
#include "talbot/gaunt.hpp"

namespace talbot::cli {

namespace {

namespace ex = talbot::experiments;

Param integer(std::string key, json v, std::string help) {
  return {std::move(key), Kind::integer, std::move(v), std::move(help)};
}
Param real(std::string key, json v, std::string help) {
  return {std::move(key), Kind::real, std::move(v), std::move(help)};
}
Param text(std::string key, json v, std::string help) {
  return {std::move(key), Kind::text, std::move(v), std::move(help)};
}

std::vector<Param> panel_params() {
  return {integer("seed", evolve::kDefaultSeed, "seed of the random panel times"),
          text("t_panel", "default", "'default' or a comma list of times (t or p/q for 2pi p/q)"),
          integer("draws", 4, "random times added to the four fixed ones")};
}

template <typename... Ts>
std::vector<Param> join(std::vector<Param> a, const Ts&... rest) {
  (a.insert(a.end(), rest.begin(), rest.end()), ...);
  return a;
}

std::vector<evolve::TimePoint> panel_of(const json& cfg) {
  const std::string spec = cfg["t_panel"];
  if (spec == "default") return evolve::time_panel(cfg["seed"].get<std::uint64_t>(), cfg["draws"].get<int>());
  std::vector<evolve::TimePoint> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      if (auto slash = item.find('/'); slash != std::string::npos)
        out.push_back(evolve::TimePoint::rational(std::stoll(item.substr(0, slash)), std::stoll(item.substr(slash + 1))));
      else
        out.push_back(evolve::TimePoint::sampled(std::stod(item)));
    } catch (const std::logic_error&) {
      throw ConfigError("config key 't_panel': cannot read '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("config key 't_panel': empty panel");
  return out;
}

template <typename T>
T get_or(const json& cfg, const std::string& key, T fallback) {
  return cfg[key].is_null() ? fallback : cfg[key].get<T>();
}

json panel_json(const ex::PanelReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"t", row.label}, {"real", row.real}, {"imag", row.imag}, {"value", row.value}});
  return {{"median", r.median}, {"rows", rows}};
}

std::ostringstream csv_stream() {
  std::ostringstream os;
  os << std::setprecision(17);
  return os;
}

// ---------------------------------------------------------------------------

Outcome run_specfun(const json& cfg) {
  const auto ns = cfg["degrees"].get<std::vector<int>>();
  const auto r = ex::run_specfun_check(cfg["n_ortho"], ns, cfg["window"]);
  Outcome o;
  auto os = csv_stream();
  os << "n,constant,literal\n";
  for (std::size_t i = 0; i < r.n.size(); ++i) os << r.n[i] << ',' << r.constants[i] << ',' << r.literal[i] << '\n';
  o.csv = os.str();
  o.metrics = {{"orthonormality_max", r.orthonormality_max},
               {"fitted_constant", r.fitted_constant},
               {"spread", r.spread}};
  o.pass = r.orthonormality_max < cfg["tol_orthonormality"].get<double>() &&
           r.spread <= cfg["max_spread"].get<double>();
  return o;
}

Outcome run_kappa(const json& cfg) {
  gaunt::LambdaConstants c{cfg["c1"], cfg["c2"]};
  if (cfg["calibrate"].get<bool>()) c = gaunt::calibrate_lambda(cfg["lambda_n"], cfg["d"]);
  const auto r = ex::run_kappa_suite(cfg["entries"], cfg["lambda_n"], c);

  gaunt::KappaTable table(cfg["d"], cfg["n_max"]);
  const int top = cfg["n_max"];
  table.fill(top);
  std::ostringstream saved;
  table.save(saved);

  Outcome o;
  auto os = csv_stream();
  os << "n1,n2,n3,value\n";
  for (int a = 0; a <= top; ++a)
    for (int b = a; b <= top; ++b)
      for (int e = b; e <= top; ++e) os << a << ',' << b << ',' << e << ',' << table(a, b, e) << '\n';
  o.csv = os.str();
  o.extra.emplace_back(".table", saved.str());

  json counts;
  for (int k = 0; k < 4; ++k) counts[gaunt::to_string(static_cast<gaunt::Lambda>(k))] = r.scan.counts[k];
  o.metrics = {{"min_value", r.min_value},         {"support_max", r.support_max},
               {"permutation_max", r.permutation_max}, {"direct_max", r.direct_max},
               {"parseval_max", r.parseval_max},   {"c1", c.c1},
               {"c2", c.c2},                       {"admissible", r.scan.admissible},
               {"lambda_counts", counts}};
  o.pass = r.min_value >= -cfg["tol_negative"].get<double>() &&
           r.support_max < cfg["tol_support"].get<double>() && r.permutation_max == 0.0 &&
           r.parseval_max < cfg["tol_parseval"].get<double>() &&
           r.scan.counts[static_cast<int>(gaunt::Lambda::unclassified)] == 0;
  return o;
}

Outcome run_quantize(const json& cfg) {
  const auto r = ex::run_quantization(cfg["radius"], cfg["q"], cfg["q_min"]);
  Outcome o;
  auto os = csv_stream();
  os << "p,q,residual\n";
  for (const auto& row : r.rows) os << row.p << ',' << row.q << ',' << row.residual << '\n';
  o.csv = os.str();
  o.metrics = {{"worst_residual", r.worst}, {"cases", r.rows.size()}, {"seconds", r.seconds}};
  o.pass = r.worst < cfg["tolerance"].get<double>() && r.seconds < cfg["max_seconds"].get<double>();
  return o;
}

Outcome run_dimension(const json& cfg) {
  const std::string kind = cfg["kind"];
  const auto panel = panel_of(cfg);
  ex::PanelReport r;
  json target = cfg["target"], tolerance = cfg["tolerance"];
  if (kind == "torus-step") {
    const fractal::FitWindow w{get_or(cfg, "k_lo", 5), get_or(cfg, "k_hi", 11)};
    r = ex::run_torus_step_dimension(get_or(cfg, "radius", 1 << 14), get_or<std::size_t>(cfg, "grid", 1 << 16), w, panel);
    if (target.is_null()) target = 1.5;
    if (tolerance.is_null()) tolerance = 0.1;
  } else if (kind == "torus-polygon") {
    const fractal::FitWindow w{get_or(cfg, "k_lo", fractal::kSurfaceWindow.k_lo),
                               get_or(cfg, "k_hi", fractal::kSurfaceWindow.k_hi)};
    r = ex::run_polygon_dimension(get_or(cfg, "radius", 1 << 9), get_or<std::size_t>(cfg, "grid", 2048), w, panel);
    if (target.is_null()) target = 2.5;
    if (tolerance.is_null()) tolerance = 0.2;
  } else if (kind == "zonal" || kind == "beam") {
    const fractal::FitWindow w{get_or(cfg, "k_lo", 5), get_or(cfg, "k_hi", 11)};
    const double p = get_or(cfg, "p", 1.5);
    const int n_max = get_or(cfg, "n_max", 4095);
    const auto points = get_or<std::size_t>(cfg, "grid", 1 << 15);
    r = kind == "zonal" ? ex::run_zonal_dimension(p, n_max, points, w, panel)
                        : ex::run_beam_dimension(p, n_max, points, w, panel);
  } else {
    throw ConfigError("config key 'kind': expected torus-step, torus-polygon, zonal or beam");
  }
  Outcome o;
  auto os = csv_stream();
  os << "t,real,imag,max\n";
  for (const auto& row : r.rows) os << row.label << ',' << row.real << ',' << row.imag << ',' << row.value << '\n';
  o.csv = os.str();
  o.metrics = panel_json(r);
  o.metrics["seconds"] = r.seconds;
  // Great-circle slices carry no stated target; they are reported only.
  if (!target.is_null()) {
    o.metrics["target"] = target;
    o.metrics["tolerance"] = tolerance;
    o.pass = std::abs(r.median - target.get<double>()) <= tolerance.get<double>();
  }
  return o;
}

Outcome run_weyl(const json& cfg) {
  const auto panel = panel_of(cfg);
  const int d = cfg["torus_d"];
  const auto r = d == 0 ? ex::run_weyl(cfg["p"], cfg["log2_lo"], cfg["log2_hi"], panel)
                        : ex::run_torus_weyl(d, cfg["log2_lo"], cfg["log2_hi"], panel);
  Outcome o;
  auto os = csv_stream();
  os << "t,N,sup\n";
  for (std::size_t i = 0; i < r.sups.size(); ++i)
    for (std::size_t k = 0; k < r.Ns.size(); ++k)
      os << r.exponents.rows[i].label << ',' << r.Ns[k] << ',' << r.sups[i][k] << '\n';
  o.csv = os.str();
  o.metrics = panel_json(r.exponents);
  if (d == 0) {
    o.pass = std::abs(r.exponents.median - cfg["target"].get<double>()) <= cfg["tolerance"].get<double>();
  }
  return o;
}

Outcome run_strichartz(const json& cfg) {
  const auto r = ex::run_strichartz(cfg["p"], cfg["N"], cfg["M_lo"], cfg["M_hi"], cfg["beam_lo"], cfg["beam_hi"]);
  Outcome o;
  auto os = csv_stream();
  os << "kind,N,M,norm,ratio\n";
  for (std::size_t i = 0; i < r.M.size(); ++i)
    os << "zonal," << r.N << ',' << r.M[i] << ',' << r.bilinear[i] << ',' << r.ratio[i] << '\n';
  for (std::size_t i = 0; i < r.beam_n.size(); ++i) os << "beam," << r.beam_n[i] << ",," << r.beam_l4[i] << ",\n";
  o.csv = os.str();
  o.metrics = {{"zonal_exponent", r.zonal_exponent}, {"beam_exponent", r.beam_exponent}, {"seconds", r.seconds}};
  o.pass = r.zonal_exponent <= cfg["max_zonal_exponent"].get<double>() &&
           std::abs(r.beam_exponent - cfg["beam_target"].get<double>()) <= cfg["beam_tolerance"].get<double>();
  return o;
}

Outcome run_nls(const json& cfg) {
  const auto r = ex::run_nls_smoothing(cfg["n_max"], cfg["p"], cfg["dt"], cfg["final_time"], cfg["s"], cfg["eps"],
                                       cfg["single_mode_dt"]);
  Outcome o;
  std::ostringstream os;
  r.tails.write_csv(os);
  o.csv = os.str();
  o.metrics = {{"mass_drift", r.mass_drift},
               {"residual_exponent", r.tails.residual_exponent},
               {"solution_exponent", r.tails.solution_exponent},
               {"exponent_gap", r.exponent_gap},
               {"single_mode_error", r.single_mode_error},
               {"seconds", r.seconds}};
  o.pass = r.mass_drift < cfg["tol_mass"].get<double>() && r.exponent_gap >= cfg["min_gap"].get<double>() &&
           r.single_mode_error < cfg["tol_single"].get<double>();
  return o;
}

std::vector<Command> build() {
  std::vector<Command> out;
  out.push_back({"specfun-check", "orthonormality of zonal harmonics and the Szego remainder constant",
                 {integer("n_ortho", 48, "largest degree in the Gram matrix"),
                  {"degrees", Kind::integers, json::array({64, 128, 256, 512}), "degrees for the remainder constant"},
                  real("window", 8.0, "theta >= window / n"),
                  real("tol_orthonormality", 1e-10, "max |G - I|"),
                  real("max_spread", 1.25, "max/min of the per-degree constants")},
                 run_specfun, nullptr});
  out.push_back({"kappa-table", "Gaunt table, identity checks and the Lambda trichotomy",
                 {integer("d", 2, "sphere dimension of the written table"),
                  integer("n_max", 12, "largest index in the written table"),
                  integer("entries", 12, "largest index in the identity checks"),
                  integer("lambda_n", 64, "largest index in the trichotomy scan"),
                  real("c1", gaunt::kCalibratedLambda.c1, "Lambda1 constant"),
                  real("c2", gaunt::kCalibratedLambda.c2, "Lambda2 constant"),
                  {"calibrate", Kind::boolean, false, "recalibrate c1, c2 before the scan"},
                  real("tol_negative", 1e-10, "kappa >= -tol"),
                  real("tol_support", 1e-10, "|kappa| off the support"),
                  real("tol_parseval", 1e-8, "Parseval composition residual")},
                 run_kappa, nullptr});
  out.push_back({"quantize", "rational-time reconstruction of step data from translates",
                 {integer("radius", 4096, "frequency cutoff"), integer("q", 12, "largest denominator"),
                  integer("q_min", 1, "smallest denominator"), real("tolerance", 1e-8, "sup-norm residual"),
                  real("max_seconds", 10.0, "runtime budget")},
                 run_quantize, nullptr});
  out.push_back({"dimension", "panel box-counting dimension",
                 join({text("kind", "torus-step", "torus-step | torus-polygon | zonal | beam"),
                       integer("k_lo", nullptr, "first fit level"), integer("k_hi", nullptr, "last fit level"),
                       integer("radius", nullptr, "torus frequency cutoff"),
                       integer("grid", nullptr, "samples per axis"), real("p", nullptr, "sphere decay exponent"),
                       integer("n_max", nullptr, "sphere degree cutoff"),
                       real("target", nullptr, "expected median"), real("tolerance", nullptr, "allowed deviation")},
                      panel_params()),
                 run_dimension, [](const json& cfg) { return "dimension-" + cfg["kind"].get<std::string>(); }});
  out.push_back({"weyl", "decay of weighted Weyl sums over dyadic blocks",
                 join({real("p", 1.5, "weights n^{-p}"), integer("log2_lo", 4, "smallest block 2^lo"),
                       integer("log2_hi", 11, "largest block 2^hi"),
                       integer("torus_d", 0, "0: weighted sums; 1 or 2: unweighted torus shells"),
                       real("target", -1.0, "expected median exponent"), real("tolerance", 0.1, "allowed deviation")},
                      panel_params()),
                 run_weyl, nullptr});
  out.push_back({"strichartz", "zonal bilinear growth against the Gaussian beam",
                 {real("p", 1.5, "zonal decay exponent"), integer("N", 128, "high block"),
                  integer("M_lo", 4, "smallest low block"), integer("M_hi", 64, "largest low block"),
                  integer("beam_lo", 8, "smallest beam degree"), integer("beam_hi", 512, "largest beam degree"),
                  real("max_zonal_exponent", 0.15, "bound on the zonal growth exponent"),
                  real("beam_target", 0.5, "expected beam exponent"), real("beam_tolerance", 0.1, "allowed deviation")},
                 run_strichartz, nullptr});
  out.push_back({"nls-smoothing", "zonal cubic NLS and the smoothing residual",
                 {integer("n_max", 256, "degree cutoff"), real("p", 1.1, "initial decay a_n = n^{-p}"),
                  real("dt", 1e-3, "time step"), real("final_time", 0.1, "final time"),
                  real("s", 0.5, "regularity for the weighted columns"), real("eps", 0.05, "extra weight"),
                  real("single_mode_dt", 1e-4, "time step of the single-mode check"),
                  real("tol_mass", 1e-8, "mass drift"), real("min_gap", 0.2, "tail exponent gap"),
                  real("tol_single", 1e-10, "single-mode error")},
                 run_nls, nullptr});
  return out;
}

void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string());
  out << body;
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> all = build();
  return all;
}

const Command* find_command(const std::string& name) {
  for (const auto& c : commands())
    if (c.name == name) return &c;
  return nullptr;
}

int execute(const Command& cmd, const json& cfg, const std::filesystem::path& out, bool force,
            std::ostream& log) {
  const std::string stem = cmd.stem ? cmd.stem(cfg) : cmd.name;
  const auto csv_path = out / (stem + ".csv");
  const auto json_path = out / (stem + ".json");
  if (!force)
    for (const auto& p : {csv_path, json_path})
      if (std::filesystem::exists(p)) throw ConfigError(p.string() + " exists; pass --force to overwrite");

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = cmd.run(cfg);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string hash = config_hash(cfg);
  std::filesystem::create_directories(out);
  const json seed = cfg.contains("seed") ? cfg["seed"] : json(evolve::kDefaultSeed);
  write_file(csv_path, "# talbot " TALBOT_VERSION " seed=" + seed.dump() + " config=" + hash + "\n" + o.csv);
  for (const auto& [suffix, body] : o.extra) write_file(out / (stem + suffix), body);

  json summary = {{"subcommand", cmd.name}, {"version", TALBOT_VERSION}, {"config", cfg},
                  {"config_sha256", hash},  {"seed", seed},            {"metrics", o.metrics},
                  {"pass", o.pass},         {"seconds", seconds}};
  write_file(json_path, summary.dump(2) + "\n");
  json brief = o.metrics;
  brief.erase("rows");
  log << stem << ": " << (o.pass ? "pass" : "FAIL") << "  " << brief.dump() << "\n";
  return o.pass ? 0 : 1;
}

}  // namespace talbot::cli
