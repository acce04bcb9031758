#include <cmath>

#include "noiselab/conjectures.hpp"
#include "noiselab/experiment.hpp"
#include "noiselab/parallel.hpp"
#include "noiselab/report.hpp"

// Preset catalog: the named, frozen experiment pipelines exposed by the
// runner, each mapping a resolved ExperimentConfig to a ResultRecord of
// JSON payload + CSV tables + SVG figures.

namespace noiselab {

namespace {

double binom_pmf(int n, int s, double p) {
  if (s < 0 || s > n) return 0.0;
  double logc = std::lgamma(n + 1.0) - std::lgamma(s + 1.0) - std::lgamma(n - s + 1.0);
  double lp = (s > 0 ? s * std::log(p) : 0.0) + (n - s > 0 ? (n - s) * std::log1p(-p) : 0.0);
  return std::exp(logc + lp);
}

QuantumChannel make_noise(const std::string& type, int n, double p) {
  if (type == "depolarizing") return depolarizing(n, p);
  if (type == "correlated_depolarizing") return correlated_depolarizing(n, p);
  fail(ErrorKind::ValidationError, "noise.type: unknown type '" + type + "'");
}

Json base_payload(const ExperimentConfig& cfg) {
  Json j;
  j["schema"] = 1;
  j["experiment"] = cfg.experiment;
  j["seed"] = cfg.seed;
  return j;
}

// --- bell-detrimental --------------------------------------------------------
// Two-cycle Bell circuit with fresh product noise per cycle; the smoothed
// (detrimental) channels pick up positive 0-1 fault correlation while the
// fresh baseline stays exactly uncorrelated.
ResultRecord run_bell_detrimental(const ExperimentConfig& cfg) {
  const Circuit c = bell_circuit();
  const QuantumChannel fresh = make_noise(cfg.noise_type, 2, cfg.noise_p);
  const std::vector<QuantumChannel> base(std::size_t(c.T()), fresh);
  const DetrimentalSchedule ds = detrimental_transform(c, base, *cfg.kernel);

  Json payload = base_payload(cfg);
  payload["n"] = 2;
  payload["noise"] = {{"type", cfg.noise_type}, {"p", cfg.noise_p}};
  payload["kernel"] = kernel_to_json(*cfg.kernel);

  Json cycles = Json::array();
  WeightProfile wp_last;
  for (int t = 1; t <= c.T(); ++t) {
    const QuantumChannel& e = ds.derived[std::size_t(t - 1)];
    const WeightProfile wp = weight_profile(pauli_mass(e));
    const Eigh ei = eigh(choi_matrix(e));
    Json row;
    row["t"] = t;
    row["alpha"] = wp.alpha;
    row["f"] = wp.f;
    row["min_choi_eigenvalue"] = ei.values(0);
    cycles.push_back(std::move(row));
    wp_last = wp;
  }
  payload["cycles"] = std::move(cycles);

  const CoarseDistribution cd = coarse_distribution(pauli_mass(ds.derived.back()));
  const CorrelationRecord cor = pair_correlation(cd, 0, 1);
  const CorrelationRecord base_cor =
      pair_correlation(coarse_distribution(pauli_mass(fresh)), 0, 1);
  payload["cor_01"] = cor.pearson;
  payload["cor_01_covariance"] = cor.covariance;
  payload["baseline_cor_01"] = base_cor.pearson;

  RMat m = RMat::Zero(2, 2);
  m(0, 1) = m(1, 0) = cor.pearson;

  ResultRecord rec;
  rec.payload = std::move(payload);
  rec.tables.emplace_back("weight_profile", weight_profile_csv(wp_last));
  rec.tables.emplace_back("pair_correlation", pair_correlation_csv(m));
  rec.figures.emplace_back("weight_profile", bar_chart_svg(wp_last.f, {}, "s", "f(s)"));
  return rec;
}

// --- ghz-sync ----------------------------------------------------------------
// Conjugates per-qubit product noise through the GHZ preparation Clifford:
// the pushed-forward channel concentrates weight far above its alpha and is
// flagged synchronized, while the unconjugated base noise is not.
ResultRecord run_ghz_sync(const ExperimentConfig& cfg) {
  const int n = cfg.n;
  const double delta = 0.1;
  const Circuit c = ghz_circuit(n);
  const QuantumChannel e0 = make_noise(cfg.noise_type, n, cfg.noise_p);
  const NoiseEnvelope env = memory_example_envelope(zero_state(n), e0);
  const PrepUnitary u = PrepUnitary::from_circuit(c);
  const DensityMatrix reached = simulate_ideal(c, zero_state(n)).snapshots.back();
  const QuantumChannel e1 = env.generator(reached, u);

  const WeightProfile wp0 = weight_profile(pauli_mass(e0));
  const WeightProfile wp1 = weight_profile(pauli_mass(e1));
  const SyncClassification s0 = synchronization_report(wp0, delta);
  const SyncClassification s1 = synchronization_report(wp1, delta);

  Json payload = base_payload(cfg);
  payload["n"] = n;
  payload["noise"] = {{"type", cfg.noise_type}, {"p", cfg.noise_p}};
  payload["delta"] = delta;
  payload["base"] = {{"alpha", wp0.alpha},
                     {"f", wp0.f},
                     {"synchronized", s0.synchronized},
                     {"very_strong", s0.very_strong}};
  payload["conjugated"] = {{"alpha", wp1.alpha},
                           {"f", wp1.f},
                           {"synchronized", s1.synchronized},
                           {"very_strong", s1.very_strong},
                           {"sync_witness_s", s1.sync_witness_s}};

  std::vector<double> xs;
  for (int s = 0; s <= n; ++s) xs.push_back(double(s));

  ResultRecord rec;
  rec.payload = std::move(payload);
  rec.tables.emplace_back("weight_profile_base", weight_profile_csv(wp0));
  rec.tables.emplace_back("weight_profile_conjugated", weight_profile_csv(wp1));
  rec.figures.emplace_back("weight_profiles",
                           line_chart_svg(xs, {wp1.f, wp0.f}, "s", "f(s)"));
  return rec;
}

// --- haar-weight -------------------------------------------------------------
// Conditioned near-identity Haar channels: conditional fault-weight profile
// against the Binomial(n, 3/4) reference.
ResultRecord run_haar_weight(const ExperimentConfig& cfg) {
  const SyncExperimentReport rep =
      run_random_unitary_sync(cfg.n, cfg.target_alpha, cfg.trials, cfg.seed);

  Json payload = base_payload(cfg);
  payload["n"] = rep.n;
  payload["trials"] = rep.trials;
  payload["target_alpha"] = rep.target_alpha;
  payload["mean_weight_fraction"] = rep.mean_weight_fraction;
  payload["mean_tv_to_binomial"] = rep.mean_tv_to_binomial;
  payload["degenerate_single_qubit"] = rep.degenerate_single_qubit;
  payload["vanishing_noise"] = rep.vanishing_noise;
  payload["per_trial_fraction"] = rep.per_trial_fraction;
  payload["per_trial_tv"] = rep.per_trial_tv;
  payload["mean_conditional_profile"] = rep.mean_conditional_profile;

  std::vector<double> reference, trial_idx;
  for (int s = 0; s <= rep.n; ++s) reference.push_back(binom_pmf(rep.n, s, 0.75));
  for (int t = 0; t < rep.trials; ++t) trial_idx.push_back(double(t));
  payload["binomial_reference"] = reference;

  std::vector<double> svals;
  for (int s = 0; s <= rep.n; ++s) svals.push_back(double(s));

  ResultRecord rec;
  rec.payload = std::move(payload);
  rec.tables.emplace_back("mean_profile",
                          table_csv({"s", "f"}, {svals, rep.mean_conditional_profile}));
  rec.tables.emplace_back(
      "per_trial",
      table_csv({"trial", "weight_fraction", "tv_to_binomial"},
                {trial_idx, rep.per_trial_fraction, rep.per_trial_tv}));
  rec.figures.emplace_back(
      "histogram", bar_chart_svg(rep.mean_conditional_profile, reference, "s", "f~(s)"));
  return rec;
}

// --- rate-compare ------------------------------------------------------------
// Independent vs correlated depolarizing noise at matched expected qubit
// errors: basis-state trace-distance error rates and their ratio over a
// sweep of system sizes.
ResultRecord run_rate_compare(const ExperimentConfig& cfg) {
  std::vector<double> ns, alphas, rind, rcor, ratio;
  Json rows = Json::array();
  for (int m = 2; m <= cfg.n; ++m) {
    const RateReport r = rate_comparison(m, cfg.noise_p, RateStrategy::basis());
    ns.push_back(double(m));
    alphas.push_back(r.alpha_independent);
    rind.push_back(r.rate_independent);
    rcor.push_back(r.rate_correlated);
    ratio.push_back(r.ratio);
    Json row;
    row["n"] = m;
    row["alpha"] = r.alpha_independent;
    row["rate_independent"] = r.rate_independent;
    row["rate_correlated"] = r.rate_correlated;
    row["ratio"] = r.ratio;
    rows.push_back(std::move(row));
  }

  Json payload = base_payload(cfg);
  payload["p"] = cfg.noise_p;
  payload["strategy"] = "basis";
  payload["rows"] = std::move(rows);

  ResultRecord rec;
  rec.payload = std::move(payload);
  rec.tables.emplace_back(
      "rates", table_csv({"n", "alpha", "rate_independent", "rate_correlated", "ratio"},
                         {ns, alphas, rind, rcor, ratio}));
  rec.figures.emplace_back("ratio", line_chart_svg(ns, {ratio}, "n", "rate ratio"));
  return rec;
}

// --- rate-scaling ------------------------------------------------------------
// Expected qubit errors of the final smoothed channel over the GHZ circuit
// family, with a least-squares slope over n.
ResultRecord run_rate_scaling(const ExperimentConfig& cfg) {
  const ScalingReport rep =
      rate_scaling_experiment(CircuitFamily::Ghz, *cfg.kernel, cfg.noise_p, 2, cfg.n);

  std::vector<double> ns, alphas;
  Json rows = Json::array();
  for (const ScalingRow& row : rep.rows) {
    ns.push_back(double(row.n));
    alphas.push_back(row.alpha);
    Json jr;
    jr["n"] = row.n;
    jr["alpha"] = row.alpha;
    rows.push_back(std::move(jr));
  }

  Json payload = base_payload(cfg);
  payload["family"] = "ghz";
  payload["p"] = cfg.noise_p;
  payload["kernel"] = kernel_to_json(*cfg.kernel);
  payload["rows"] = std::move(rows);
  payload["slope"] = rep.slope;
  payload["intercept"] = rep.intercept;

  ResultRecord rec;
  rec.payload = std::move(payload);
  rec.tables.emplace_back("scaling", table_csv({"n", "alpha"}, {ns, alphas}));
  rec.figures.emplace_back("scaling", line_chart_svg(ns, {alphas}, "n", "alpha"));
  return rec;
}

// --- cor2q-search ------------------------------------------------------------
// Randomized falsification search for the two-qubit correlation proposition
// over the product/synchronized mixture family.
ResultRecord run_cor2q_search(const ExperimentConfig& cfg) {
  const double eta = 0.04, s = 0.2;
  const SearchReport rep = search_cor2q(Cor2qFamily::MixtureOfProductAndSync, cfg.n,
                                        cfg.trials, eta, s, cfg.seed);

  Json payload = base_payload(cfg);
  payload["family"] = "mixture-of-product-and-sync";
  payload["n"] = cfg.n;
  payload["trials"] = cfg.trials;
  payload["eta"] = eta;
  payload["s"] = s;
  payload["sampled"] = rep.sampled;
  payload["hypotheses_satisfied"] = rep.hypotheses_satisfied;
  payload["conclusion_failures"] = rep.conclusion_failures;
  if (rep.counterexample) {
    Json ce;
    ce["trial"] = rep.counterexample->trial;
    ce["n"] = rep.counterexample->n;
    ce["lambda"] = rep.counterexample->lambda;
    ce["q"] = rep.counterexample->q;
    ce["p"] = rep.counterexample->p;
    ce["tail_probability"] = rep.counterexample->tail_probability;
    ce["bound"] = rep.counterexample->bound;
    payload["counterexample"] = std::move(ce);
  } else {
    payload["counterexample"] = nullptr;
  }

  ResultRecord rec;
  rec.payload = std::move(payload);
  rec.tables.emplace_back(
      "search", table_csv({"sampled", "hypotheses_satisfied", "conclusion_failures"},
                          {{double(rep.sampled)},
                           {double(rep.hypotheses_satisfied)},
                           {double(rep.conclusion_failures)}}));
  return rec;
}

// --- maxent-ent --------------------------------------------------------------
// Max-entropy completion functionals on the canonical states: ENT values,
// constraint residuals, and the Bell negativity.
ResultRecord run_maxent_ent(const ExperimentConfig& cfg) {
  const DensityMatrix bell = bell_state();
  const DensityMatrix ghz3 = ghz_state(3);
  const DensityMatrix product = basis_state(3, 0);

  const MaxEntSolution mbell = max_entropy_completion(bell);
  const MaxEntSolution mghz = max_entropy_completion(ghz3);
  const double ent_bell = ent_measure(bell);
  const double ent_ghz = ent_measure(ghz3);
  const double ent_product = ent_measure(product);
  const EntReport tilde = ent_tilde(ghz3);

  Json payload = base_payload(cfg);
  payload["bell"] = {{"ent_bits", ent_bell},
                     {"negativity", negativity(bell, {1})},
                     {"maxent_entropy_bits", double(mbell.entropy)},
                     {"constraint_residual", mbell.constraint_residual}};
  payload["ghz3"] = {{"ent_bits", ent_ghz},
                     {"ent_tilde_bits", tilde.ent_tilde},
                     {"maxent_entropy_bits", double(mghz.entropy)},
                     {"constraint_residual", mghz.constraint_residual}};
  payload["product3"] = {{"ent_bits", ent_product}};

  ResultRecord rec;
  rec.payload = std::move(payload);
  rec.tables.emplace_back("ent",
                          table_csv({"case", "ent_bits", "constraint_residual"},
                                    {{0.0, 1.0, 2.0},
                                     {ent_bell, ent_ghz, ent_product},
                                     {mbell.constraint_residual, mghz.constraint_residual, 0.0}}));
  return rec;
}

// --- emergent-ghz ------------------------------------------------------------
// Best post-measurement pair entanglement for GHZ3 under optimized local
// measurement of the third qubit, against the product-state floor.
ResultRecord run_emergent_ghz(const ExperimentConfig& cfg) {
  const EmergentResult ghz = emergent_entanglement(ghz_state(3), 0, 1, cfg.budget, cfg.seed);
  const EmergentResult flat =
      emergent_entanglement(basis_state(3, 0), 0, 1, std::min(cfg.budget, 400), cfg.seed);

  Json payload = base_payload(cfg);
  payload["budget"] = cfg.budget;
  payload["ghz3_pair01"] = {{"value_ebits", ghz.value},
                            {"budget_exhausted", ghz.budget_exhausted},
                            {"evals", ghz.evals}};
  payload["product3_pair01"] = {{"value_ebits", flat.value},
                                {"budget_exhausted", flat.budget_exhausted},
                                {"evals", flat.evals}};

  ResultRecord rec;
  rec.payload = std::move(payload);
  rec.tables.emplace_back("emergent", table_csv({"case", "value_ebits"},
                                                {{0.0, 1.0}, {ghz.value, flat.value}}));
  return rec;
}

// --- dnoise-check ------------------------------------------------------------
// Commutation scores against the canonical cases: depolarizing (commutes
// with everything), Z-dephasing with a diagonal state (commutes with the
// admissible rotations), and a bit flip (no admissible commutant).
ResultRecord run_dnoise_check(const ExperimentConfig& cfg) {
  Mat z = Mat::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  Mat x = Mat::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const QuantumChannel dephasing(1, {std::sqrt(0.8) * Mat::Identity(2, 2), std::sqrt(0.2) * z});

  struct Case {
    const char* name;
    QuantumChannel channel;
  };
  const Case cases[] = {{"depolarizing", depolarizing(1, 0.3)},
                        {"z_dephasing", dephasing},
                        {"bit_flip_unitary", unitary_channel(x)}};

  Json rows = Json::array();
  std::vector<double> idx, scores;
  for (std::size_t i = 0; i < 3; ++i) {
    const DnoiseResult r = dnoise_score(cases[i].channel, basis_state(1, 0), cfg.budget, cfg.seed);
    Json row;
    row["case"] = cases[i].name;
    row["score"] = r.score;
    row["budget_exhausted"] = r.budget_exhausted;
    row["evals"] = r.evals;
    rows.push_back(std::move(row));
    idx.push_back(double(i));
    scores.push_back(r.score);
  }

  Json payload = base_payload(cfg);
  payload["budget"] = cfg.budget;
  payload["state"] = "|0><0|";
  payload["cases"] = std::move(rows);

  ResultRecord rec;
  rec.payload = std::move(payload);
  rec.tables.emplace_back("dnoise", table_csv({"case", "score"}, {idx, scores}));
  return rec;
}

// --- smoothing-compare -------------------------------------------------------
// Forward (detrimental) vs reverse smoothing of the same base noise run
// through the circuit: per-cycle trace distances between the trajectories.
ResultRecord run_smoothing_compare(const ExperimentConfig& cfg) {
  const Circuit c = cfg.circuit ? *cfg.circuit : bell_circuit();
  const QuantumChannel fresh = make_noise(cfg.noise_type, c.n, cfg.noise_p);
  const std::vector<QuantumChannel> base(std::size_t(c.T()), fresh);
  const SmoothingComparison cmp = smoothing_comparison(c, base, *cfg.kernel, zero_state(c.n));

  Json payload = base_payload(cfg);
  payload["n"] = c.n;
  payload["T"] = c.T();
  payload["circuit"] = circuit_to_json(c);
  payload["noise"] = {{"type", cfg.noise_type}, {"p", cfg.noise_p}};
  payload["kernel"] = kernel_to_json(*cfg.kernel);
  payload["per_cycle_distance"] = cmp.per_cycle;
  payload["final_distance"] = cmp.final_distance;

  std::vector<double> ts;
  for (int t = 1; t <= c.T(); ++t) ts.push_back(double(t));

  ResultRecord rec;
  rec.payload = std::move(payload);
  rec.tables.emplace_back("distances", table_csv({"t", "trace_distance"}, {ts, cmp.per_cycle}));
  rec.figures.emplace_back("distances",
                           line_chart_svg(ts, {cmp.per_cycle}, "t", "trace distance"));
  return rec;
}

// --- registry ----------------------------------------------------------------

struct PresetDef {
  PresetInfo info;
  ExperimentConfig defaults;
  ResultRecord (*run)(const ExperimentConfig&);
};

ExperimentConfig make_defaults(const std::string& name, int n, const std::string& noise_type,
                               double p, KernelSpec kernel, int trials, int budget,
                               double target_alpha) {
  ExperimentConfig c;
  c.experiment = name;
  c.n = n;
  c.noise_type = noise_type;
  c.noise_p = p;
  c.kernel = kernel;
  c.seed = 1;
  c.has_seed = true;
  c.trials = trials;
  c.budget = budget;
  c.target_alpha = target_alpha;
  return c;
}

const std::vector<PresetDef>& registry() {
  static const std::vector<PresetDef> defs = [] {
    std::vector<PresetDef> v;
    auto add = [&](PresetInfo info, ExperimentConfig defaults,
                   ResultRecord (*run)(const ExperimentConfig&)) {
      defaults.experiment = info.name;
      v.push_back({std::move(info), std::move(defaults), run});
    };
    add({"bell-detrimental",
         "Bell circuit, per-cycle product noise: smoothed channels gain fault correlation",
         2, 2, false, true, true},
        make_defaults("", 2, "depolarizing", 0.05, KernelSpec::uniform(), 1, 0, -1.0),
        &run_bell_detrimental);
    add({"ghz-sync",
         "GHZ-preparation conjugation of product noise: synchronization flags vs the base",
         2, 8, false, false, true},
        make_defaults("", 5, "depolarizing", 0.01, KernelSpec::uniform(), 1, 0, -1.0),
        &run_ghz_sync);
    add({"haar-weight",
         "Conditioned near-identity Haar channels: conditional weight profile vs Binomial(n,3/4)",
         1, 8, false, false, false},
        make_defaults("", 6, "depolarizing", 0.0, KernelSpec::uniform(), 20, 0, 0.3),
        &run_haar_weight);
    add({"rate-compare",
         "Independent vs correlated depolarizing at equal alpha: basis error-rate ratio over n",
         2, 6, false, false, true},
        make_defaults("", 6, "depolarizing", 0.01, KernelSpec::uniform(), 1, 0, -1.0),
        &run_rate_compare);
    add({"rate-scaling",
         "Final smoothed-channel alpha over the GHZ circuit family with a least-squares slope",
         2, 12, false, true, true},
        make_defaults("", 5, "depolarizing", 0.02, KernelSpec::uniform(), 1, 0, -1.0),
        &run_rate_scaling);
    add({"cor2q-search",
         "Randomized falsification search for the two-qubit correlation proposition",
         2, 12, false, false, false},
        make_defaults("", 8, "depolarizing", 0.0, KernelSpec::uniform(), 20000, 0, -1.0),
        &run_cor2q_search);
    add({"maxent-ent",
         "Max-entropy completion functionals (ENT, residuals, negativity) on canonical states",
         2, 3, false, false, false},
        make_defaults("", 3, "depolarizing", 0.0, KernelSpec::uniform(), 1, 0, -1.0),
        &run_maxent_ent);
    add({"emergent-ghz",
         "Optimized post-measurement pair entanglement for GHZ3 vs a product state",
         3, 3, false, false, false},
        make_defaults("", 3, "depolarizing", 0.0, KernelSpec::uniform(), 1, 4000, -1.0),
        &run_emergent_ghz);
    add({"dnoise-check",
         "Commutation scores of canonical channels against stabilizers of |0><0|",
         1, 1, false, false, false},
        make_defaults("", 1, "depolarizing", 0.0, KernelSpec::uniform(), 1, 800, -1.0),
        &run_dnoise_check);
    add({"smoothing-compare",
         "Forward (detrimental) vs reverse smoothing: per-cycle trajectory trace distances",
         1, 6, true, true, true},
        make_defaults("", 2, "depolarizing", 0.05, KernelSpec::uniform(), 1, 0, -1.0),
        &run_smoothing_compare);
    return v;
  }();
  return defs;
}

const PresetDef& find_preset(const std::string& name) {
  for (const PresetDef& d : registry())
    if (d.info.name == name) return d;
  fail(ErrorKind::UnknownPreset, "no preset named '" + name + "'");
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const PresetDef& d : registry()) v.push_back(d.info.name);
    return v;
  }();
  return names;
}

bool is_preset(const std::string& name) {
  for (const PresetDef& d : registry())
    if (d.info.name == name) return true;
  return false;
}

const PresetInfo& preset_info(const std::string& name) { return find_preset(name).info; }

ExperimentConfig preset_default_config(const std::string& name) {
  return find_preset(name).defaults;
}

namespace {

struct ThreadGuard {
  int prev;
  explicit ThreadGuard(int cap) : prev(max_threads()) { set_max_threads(cap); }
  ~ThreadGuard() { set_max_threads(prev); }
  ThreadGuard(const ThreadGuard&) = delete;
  ThreadGuard& operator=(const ThreadGuard&) = delete;
};

struct CapsGuard {
  Caps saved;
  explicit CapsGuard(const Json& overrides) : saved(caps()) {
    caps() = apply_caps_overrides(saved, overrides);
  }
  ~CapsGuard() { caps() = saved; }
  CapsGuard(const CapsGuard&) = delete;
  CapsGuard& operator=(const CapsGuard&) = delete;
};

}  // namespace

ResultRecord run_experiment(const ExperimentConfig& resolved) {
  const PresetDef& def = find_preset(resolved.experiment);
  const ThreadGuard threads(resolved.threads);
  const CapsGuard limits(resolved.caps_override);
  ResultRecord rec = def.run(resolved);
  require_finite_numbers(rec.payload);
  return rec;
}

}  // namespace noiselab
