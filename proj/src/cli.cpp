#include "aotoc/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <ostream>
#include <sstream>

namespace aotoc {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

AlgebraSpec load_algebra(const std::string& path, const CommandConfig& cfg) {
  const JsonDocument doc = JsonDocument::load(path);
  return algebra_from_json(JsonView(doc, ""), cfg.seed, cfg.tolerances());
}

Operator load_unitary(const std::string& path) {
  const JsonDocument doc = JsonDocument::load(path);
  return unitary_from_json(JsonView(doc, ""));
}

FamilyFile load_family(const std::string& path, const CommandConfig& cfg) {
  const JsonDocument doc = JsonDocument::load(path);
  return family_from_json(JsonView(doc, ""), cfg.seed, cfg.tolerances());
}

void emit(std::ostream& out, const CommandConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    write_text_file(cfg.out_path, text);
  }
}

void require_same_dim(const MatrixAlgebra& a, const Operator& x, const std::string& what) {
  if (x.rows() != a.dim())
    throw ConfigError(what + " has dimension " + std::to_string(x.rows()) + " but the algebra acts on dimension " +
                      std::to_string(a.dim()));
}

Json algebra_report(const MatrixAlgebra& a) {
  Json blocks = Json::array();
  for (const auto& b : a.blocks()) blocks.push_back({b.n, b.d});
  return {{"d", a.dim()},
          {"dimA", a.size()},
          {"dimAprime", a.commutant().size()},
          {"dimCenter", a.center().size()},
          {"blocks", blocks},
          {"factor", is_factor(a)},
          {"abelian", is_abelian(a)},
          {"collinear", is_collinear(a)}};
}

int run_algebra(const CommandConfig& cfg, std::ostream& out) {
  const AlgebraSpec spec = load_algebra(cfg.spec_path, cfg);
  Json j = algebra_report(spec.algebra);
  if (!cfg.report) j = {{"d", spec.algebra.dim()}, {"dimA", spec.algebra.size()}};
  emit(out, cfg, j.dump(2) + "\n");
  return kExitOk;
}

int run_otoc(const CommandConfig& cfg, std::ostream& out) {
  const AlgebraSpec spec = load_algebra(cfg.algebra_path, cfg);
  const Operator u = load_unitary(cfg.unitary_path);
  require_same_dim(spec.algebra, u, "unitary");
  std::string form = cfg.form.empty() ? "exact" : cfg.form;
  Json j;
  if (form == "exact") {
    if (spec.algebra.dim() > kMaxOmegaDim) throw ConfigError("exact form supports d <= 32; try --form entropic");
    j["value"] = a_otoc_exact(spec.algebra, u);
  } else if (form == "bipartite") {
    if (!spec.shape) throw ConfigError("--form bipartite needs a bipartite algebra spec");
    j["value"] = a_otoc_bipartite(u, *spec.shape);
  } else if (form == "cgp") {
    if (spec.type != "masa") throw ConfigError("--form cgp needs a masa algebra spec");
    j["value"] = cgp(u, spec.basis ? *spec.basis : identity(spec.algebra.dim()));
  } else if (form == "stabilizer") {
    if (!spec.group) throw ConfigError("--form stabilizer needs a stabilizer algebra spec without commutant");
    j["value"] = a_otoc_stabilizer(u, *spec.group);
  } else if (form == "entropic") {
    const EntropicBreakdown e = a_otoc_entropic(spec.algebra, u);
    j["value"] = e.g;
    j["sector_terms"] = e.sector_terms;
    j["weights"] = e.weights;
    if (!e.probabilities.empty()) j["probabilities"] = e.probabilities;
  } else if (form == "mc") {
    const MonteCarloEstimate m = a_otoc_haar_mc(spec.algebra, u, cfg.samples, cfg.seed, cfg.threads);
    j["value"] = m.estimate;
    j["std_error"] = m.std_error;
    j["samples"] = m.samples;
  } else {
    throw UsageError("unknown --form '" + form + "'");
  }
  j["form"] = form;
  emit(out, cfg, j.dump(2) + "\n");
  return kExitOk;
}

int run_rate(const CommandConfig& cfg, std::ostream& out) {
  const AlgebraSpec spec = load_algebra(cfg.algebra_path, cfg);
  const Operator h = load_hamiltonian(cfg.hamiltonian_path);
  require_same_dim(spec.algebra, h, "Hamiltonian");
  std::string form = cfg.form.empty() ? "general" : cfg.form;
  if (form == "auto") {
    if (spec.shape && spec.side == Side::A) form = "bipartite";
    else if (spec.group) form = "stabilizer";
    else if (is_abelian(spec.algebra) || is_abelian(spec.algebra.commutant())) form = "abelian";
    else form = "general";
  }
  Json j;
  if (form == "general") {
    j = rate_report_to_json(gaussian_rate(h, spec.algebra));
  } else {
    double r = 0.0;
    if (form == "bipartite") {
      if (!spec.shape) throw ConfigError("--form bipartite needs a bipartite algebra spec");
      r = rate_bipartite(h, *spec.shape);
    } else if (form == "abelian") {
      r = rate_abelian(h, spec.algebra);
    } else if (form == "stabilizer") {
      if (!spec.group) throw ConfigError("--form stabilizer needs a stabilizer algebra spec without commutant");
      r = rate_stabilizer(h, *spec.group);
    } else {
      throw UsageError("unknown --form '" + form + "'");
    }
    j = {{"rate", r}, {"eta", eta(h)}};
  }
  j["form"] = form;
  emit(out, cfg, j.dump(2) + "\n");
  return kExitOk;
}

Operator family_hamiltonian(const CommandConfig& cfg, const FamilyFile& fam) {
  if (!cfg.hamiltonian_path.empty()) return load_hamiltonian(cfg.hamiltonian_path);
  if (fam.hamiltonian) return *fam.hamiltonian;
  throw ConfigError(cfg.family_path + ": no Hamiltonian (add a \"hamiltonian\" key or pass --hamiltonian)");
}

int run_rate_sweep(const CommandConfig& cfg, std::ostream& out) {
  const FamilyFile fam = load_family(cfg.family_path, cfg);
  const Operator h = family_hamiltonian(cfg, fam);
  const FamilyResult res = minimize_rate(h, fam.family, cfg.threads);
  std::string csv;
  if (fam.family.kind == FamilySpec::Kind::explicit_list) {
    csv = "index,label,rate\n";
    for (std::size_t k = 0; k < res.rates.size(); ++k)
      csv += std::to_string(k) + "," + fam.family.labels[k] + "," + format_double(res.rates[k]) + "\n";
  } else {
    csv = "theta,rate\n";
    for (std::size_t k = 0; k < res.rates.size(); ++k)
      csv += format_double(fam.family.thetas[k]) + "," + format_double(res.rates[k]) + "\n";
  }
  emit(out, cfg, csv);
  return kExitOk;
}

int run_minimize(const CommandConfig& cfg, std::ostream& out) {
  const FamilyFile fam = load_family(cfg.family_path, cfg);
  const Operator h = family_hamiltonian(cfg, fam);
  const FamilyResult res = minimize_rate(h, fam.family, cfg.threads);
  const bool listed = fam.family.kind == FamilySpec::Kind::explicit_list;
  auto member = [&](int k) {
    Json m = {{"index", k}, {"rate", res.rates[static_cast<std::size_t>(k)]}};
    if (listed) m["label"] = fam.family.labels[static_cast<std::size_t>(k)];
    else m["theta"] = fam.family.thetas[static_cast<std::size_t>(k)];
    return m;
  };
  Json argmin = Json::array(), argmax = Json::array();
  for (int k : res.argmin) argmin.push_back(member(k));
  for (int k : res.argmax) argmax.push_back(member(k));
  const Json j = {{"kind", family_kind_name(fam.family.kind)},
                  {"min_rate", res.min_rate},
                  {"argmin", argmin},
                  {"argmax", argmax},
                  {"rates", res.rates}};
  emit(out, cfg, j.dump(2) + "\n");
  return kExitOk;
}

int run_mincut(const CommandConfig& cfg, std::ostream& out) {
  const InteractionGraph g = load_graph(cfg.graph_path);
  if (g.n() < 2) throw ConfigError(cfg.graph_path + ": min cut needs at least two vertices");
  Json j;
  if (cfg.brute_force || cfg.constrain_size) {
    if (cfg.constrain_size && (*cfg.constrain_size < 1 || *cfg.constrain_size >= g.n()))
      throw UsageError("--constrain-size must be in [1, n)");
    const auto cuts = brute_force_mincut(g, cfg.constrain_size, cfg.threads);
    Json list = Json::array();
    for (const auto& c : cuts) list.push_back(cut_to_json(c));
    j = {{"weight", cuts.front().weight}, {"rate", cuts.front().rate}, {"minimizers", list}};
  } else {
    j = cut_to_json(stoer_wagner(g));
  }
  emit(out, cfg, j.dump(2) + "\n");
  return kExitOk;
}

int run_experiment(const CommandConfig& cfg, std::ostream& out) {
  const SweepConfig sweep = load_sweep_config(cfg.config_path);
  if (cfg.out_path.empty()) throw UsageError("experiment sweep needs --out");
  if (cfg.svg_field != "mean_rate" && cfg.svg_field != "mean_S_size")
    throw UsageError("--svg-field must be mean_rate or mean_S_size");
  const auto records = run_sweep(sweep, cfg.threads);
  write_csv(records, cfg.out_path);
  if (!cfg.svg_path.empty()) render_svg(records, cfg.svg_path, cfg.svg_field);
  out << Json{{"records", records.size()}, {"csv", cfg.out_path}}.dump() << "\n";
  return kExitOk;
}

}  // namespace

Tolerances CommandConfig::tolerances() const {
  Tolerances t = kDefaultTolerances;
  if (tolerance) t.rank = *tolerance;
  return t;
}

SweepConfig load_sweep_config(const std::string& path) {
  const JsonDocument doc = JsonDocument::load(path);
  return sweep_config_from_json(JsonView(doc, ""));
}

InteractionGraph load_graph(const std::string& path) {
  const JsonDocument doc = JsonDocument::load(path);
  return graph_from_json(JsonView(doc, ""));
}

void validate_config(const std::string& path, ConfigKind kind, const CommandConfig& ctx) {
  switch (kind) {
    case ConfigKind::algebra: (void)load_algebra(path, ctx); return;
    case ConfigKind::hamiltonian: (void)load_hamiltonian(path); return;
    case ConfigKind::unitary: (void)load_unitary(path); return;
    case ConfigKind::family: (void)load_family(path, ctx); return;
    case ConfigKind::graph: (void)load_graph(path); return;
    case ConfigKind::sweep: (void)load_sweep_config(path); return;
  }
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CommandConfig cfg;
  CLI::App app{"Algebraic OTOCs, scrambling rates and minimum-cut subsystems", "aotoc"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  // Global flags are accepted before the subcommand and listed in each
  // subcommand's --help.
  auto add_globals = [&cfg](CLI::App* a) {
    a->add_option("--seed", cfg.seed, "Seed for randomized operations");
    a->add_option("--tolerance", cfg.tolerance, "Relative rank tolerance for algebra computations")
        ->check(CLI::PositiveNumber);
    a->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  };
  add_globals(&app);

  auto* algebra = app.add_subcommand("algebra", "Structure of an algebra: dimensions, center, blocks");
  add_globals(algebra);
  algebra->add_option("--spec", cfg.spec_path, "Algebra spec JSON")->required();
  algebra->add_flag("--report,!--no-report", cfg.report, "Print the full structure report");

  auto* otoc = app.add_subcommand("otoc", "A-OTOC of a unitary");
  add_globals(otoc);
  otoc->add_option("--algebra", cfg.algebra_path, "Algebra spec JSON")->required();
  otoc->add_option("--unitary", cfg.unitary_path, "Unitary JSON")->required();
  otoc->add_option("--form", cfg.form, "exact|bipartite|cgp|stabilizer|entropic|mc")
      ->check(CLI::IsMember({"exact", "bipartite", "cgp", "stabilizer", "entropic", "mc"}));
  otoc->add_option("--samples", cfg.samples, "Monte Carlo samples")->check(CLI::Range(2, 100'000'000));

  auto* rate = app.add_subcommand("rate", "Gaussian scrambling rate of a Hamiltonian");
  add_globals(rate);
  rate->add_option("--hamiltonian", cfg.hamiltonian_path, "Hamiltonian (JSON or `coeff WORD` lines)")->required();
  rate->add_option("--algebra", cfg.algebra_path, "Algebra spec JSON")->required();
  rate->add_option("--form", cfg.form, "auto|general|bipartite|abelian|stabilizer")
      ->check(CLI::IsMember({"auto", "general", "bipartite", "abelian", "stabilizer"}));

  auto* sweep = app.add_subcommand("rate-sweep", "Rate over a family of algebras as CSV");
  add_globals(sweep);
  sweep->add_option("--family", cfg.family_path, "Family JSON")->required();
  sweep->add_option("--hamiltonian", cfg.hamiltonian_path, "Hamiltonian overriding the family file");
  sweep->add_option("--out", cfg.out_path, "CSV output path (default stdout)");

  auto* minimize = app.add_subcommand("minimize", "Minimizers of the rate over a family of algebras");
  add_globals(minimize);
  minimize->add_option("--family", cfg.family_path, "Family JSON")->required();
  minimize->add_option("--hamiltonian", cfg.hamiltonian_path, "Hamiltonian overriding the family file");
  minimize->add_option("--out", cfg.out_path, "JSON output path (default stdout)");

  auto* mincut = app.add_subcommand("mincut", "Minimum-weight bipartition of an interaction graph");
  add_globals(mincut);
  mincut->add_option("--graph", cfg.graph_path, "Graph JSON")->required();
  mincut->add_option("--constrain-size", cfg.constrain_size, "Only cuts with |S| = k (exhaustive)");
  mincut->add_flag("--brute-force", cfg.brute_force, "Enumerate every cut and list all minimizers");
  mincut->add_option("--out", cfg.out_path, "JSON output path (default stdout)");

  auto* experiment = app.add_subcommand("experiment", "Randomized lattice experiments");
  experiment->require_subcommand(1);
  auto* exp_sweep = experiment->add_subcommand("sweep", "Min-cut statistics over NNN strength");
  add_globals(exp_sweep);
  exp_sweep->add_option("--config", cfg.config_path, "Sweep config JSON")->required();
  exp_sweep->add_option("--out", cfg.out_path, "CSV output path")->required();
  exp_sweep->add_option("--svg", cfg.svg_path, "SVG plot output path");
  exp_sweep->add_option("--svg-field", cfg.svg_field, "mean_rate|mean_S_size")
      ->check(CLI::IsMember({"mean_rate", "mean_S_size"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (const auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();

  try {
    if (algebra->parsed()) return run_algebra(cfg, out);
    if (otoc->parsed()) return run_otoc(cfg, out);
    if (rate->parsed()) return run_rate(cfg, out);
    if (sweep->parsed()) return run_rate_sweep(cfg, out);
    if (minimize->parsed()) return run_minimize(cfg, out);
    if (mincut->parsed()) return run_mincut(cfg, out);
    if (exp_sweep->parsed()) return run_experiment(cfg, out);
    err << "error: no command\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace aotoc
