#include "noiselab/experiment.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>

#include "noiselab/circuit_ir.hpp"

namespace fs = std::filesystem;

namespace noiselab {

namespace {

constexpr const char* kArtifactVersion = "0.1.0";

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed,
                    const std::string& prefix) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    require(ok, ErrorKind::ValidationError,
            (prefix.empty() ? std::string("config") : prefix) + ": unknown key '" + it.key() +
                "'");
  }
}

int get_int(const Json& j, const std::string& path, int lo) {
  require(j.is_number_integer(), ErrorKind::ValidationError, path + ": expected an integer");
  const long long v = j.get<long long>();
  require(v >= lo, ErrorKind::ValidationError,
          path + ": must be >= " + std::to_string(lo));
  return int(v);
}

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void deep_merge(Json& base, const Json& patch) {
  if (!base.is_object() || !patch.is_object()) {
    base = patch;
    return;
  }
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    if (base.contains(it.key()) && base[it.key()].is_object() && it.value().is_object())
      deep_merge(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
}

}  // namespace

Caps apply_caps_overrides(Caps base, const Json& overrides) {
  require(overrides.is_object(), ErrorKind::ValidationError, "caps: expected an object");
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    const std::string path = "caps." + it.key();
    require(it.value().is_number_integer(), ErrorKind::ValidationError,
            path + ": expected an integer");
    const long long v = it.value().get<long long>();
    require(v >= 1, ErrorKind::ValidationError, path + ": must be >= 1");
    if (it.key() == "dense_state_qubits")
      base.dense_state_qubits = int(v);
    else if (it.key() == "superop_qubits")
      base.superop_qubits = int(v);
    else if (it.key() == "kraus_cap")
      base.kraus_cap = int(v);
    else if (it.key() == "trajectory_bytes")
      base.trajectory_bytes = std::size_t(v);
    else if (it.key() == "kraus_bytes")
      base.kraus_bytes = std::size_t(v);
    else
      fail(ErrorKind::ValidationError, path + ": unknown cap");
  }
  return base;
}

ExperimentConfig config_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::ParseError, "config: expected a JSON object");
  reject_unknown(j,
                 {"experiment", "n", "circuit", "noise", "kernel", "seed", "trials", "budget",
                  "target_alpha", "threads", "caps", "output_dir"},
                 "");

  ExperimentConfig c;

  require(j.contains("experiment") && j["experiment"].is_string(), ErrorKind::ValidationError,
          "experiment: a preset name string is required");
  c.experiment = j["experiment"].get<std::string>();
  require(is_preset(c.experiment), ErrorKind::UnknownPreset,
          "experiment: no preset named '" + c.experiment + "'");

  if (j.contains("n")) c.n = get_int(j["n"], "n", 1);

  if (j.contains("circuit")) c.circuit = circuit_from_json(j["circuit"]);

  if (j.contains("noise")) {
    const Json& jn = j["noise"];
    require(jn.is_object(), ErrorKind::ValidationError, "noise: expected an object");
    reject_unknown(jn, {"type", "p"}, "noise");
    if (jn.contains("type")) {
      require(jn["type"].is_string(), ErrorKind::ValidationError, "noise.type: expected a string");
      c.noise_type = jn["type"].get<std::string>();
      require(c.noise_type == "depolarizing" || c.noise_type == "correlated_depolarizing",
              ErrorKind::ValidationError,
              "noise.type: unknown type '" + c.noise_type + "'");
    }
    if (jn.contains("p")) {
      require(jn["p"].is_number(), ErrorKind::ValidationError, "noise.p: expected a number");
      c.noise_p = jn["p"].get<double>();
      require(c.noise_p >= 0.0 && c.noise_p <= 1.0, ErrorKind::ValidationError,
              "noise.p: probability out of range [0, 1]");
    }
  }

  if (j.contains("kernel")) c.kernel = kernel_from_json(j["kernel"]);

  require(j.contains("seed"), ErrorKind::ValidationError,
          "seed: a seed is mandatory (there is no wall-clock default)");
  require(j["seed"].is_number_integer(), ErrorKind::ValidationError,
          "seed: expected a 64-bit integer");
  require(j["seed"].is_number_unsigned() || j["seed"].get<long long>() >= 0,
          ErrorKind::ValidationError, "seed: must be nonnegative");
  c.seed = j["seed"].get<uint64_t>();
  c.has_seed = true;

  if (j.contains("trials")) c.trials = get_int(j["trials"], "trials", 1);
  if (j.contains("budget")) c.budget = get_int(j["budget"], "budget", 1);
  if (j.contains("target_alpha")) {
    require(j["target_alpha"].is_number(), ErrorKind::ValidationError,
            "target_alpha: expected a number");
    c.target_alpha = j["target_alpha"].get<double>();
    require(c.target_alpha > 0.0, ErrorKind::ValidationError, "target_alpha: must be positive");
  }
  if (j.contains("threads")) c.threads = get_int(j["threads"], "threads", 0);
  if (j.contains("caps")) {
    (void)apply_caps_overrides(Caps{}, j["caps"]);  // validate keys and values
    c.caps_override = j["caps"];
  }
  if (j.contains("output_dir")) {
    require(j["output_dir"].is_string(), ErrorKind::ValidationError,
            "output_dir: expected a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  return config_from_json(read_json_file(path));
}

ExperimentConfig resolve_config(const ExperimentConfig& c) {
  require(!c.experiment.empty(), ErrorKind::ValidationError,
          "experiment: a preset name is required");
  const PresetInfo& info = preset_info(c.experiment);  // UnknownPreset
  const ExperimentConfig d = preset_default_config(c.experiment);

  ExperimentConfig r = c;
  require(r.has_seed, ErrorKind::ValidationError,
          "seed: a seed is mandatory (there is no wall-clock default)");

  if (r.circuit && !info.takes_circuit)
    fail(ErrorKind::ValidationError,
         "circuit: preset '" + info.name + "' does not take a circuit");
  if (info.takes_circuit && !r.circuit) {
    // Size-aware default pipeline: Bell at the default size, a GHZ chain for
    // larger n, a two-cycle single-qubit Clifford at n = 1.
    const int want_n = r.n == 0 ? d.n : r.n;
    if (want_n <= 1)
      r.circuit = Circuit{1, {{Gate::h(0)}, {Gate::s(0)}}};
    else if (want_n == 2)
      r.circuit = bell_circuit();
    else
      r.circuit = ghz_circuit(want_n);
  }
  if (r.circuit) {
    require(r.n == 0 || r.n == r.circuit->n, ErrorKind::ValidationError,
            "n: does not match circuit.n");
    r.n = r.circuit->n;
  }
  if (r.n == 0) r.n = d.n;
  if (r.noise_type.empty()) r.noise_type = d.noise_type;
  if (r.noise_p < 0.0) r.noise_p = d.noise_p;
  if (!r.kernel) r.kernel = d.kernel;
  if (r.trials == 0) r.trials = d.trials;
  if (r.budget == 0) r.budget = d.budget;
  if (r.target_alpha < 0.0) r.target_alpha = d.target_alpha;

  const bool dense_capped = info.max_n == caps().superop_qubits;
  require(r.n >= info.min_n && r.n <= info.max_n, ErrorKind::ValidationError,
          "n: preset '" + info.name + "' accepts n in [" + std::to_string(info.min_n) + ", " +
              std::to_string(info.max_n) + "]" +
              (dense_capped ? " (dense superoperator cap " + std::to_string(info.max_n) + ")"
                            : ""));
  require(r.noise_p >= 0.0 && r.noise_p <= 1.0, ErrorKind::ValidationError,
          "noise.p: probability out of range [0, 1]");
  require(r.trials >= 1, ErrorKind::ValidationError, "trials: must be >= 1");
  require(d.budget == 0 || r.budget >= 1, ErrorKind::ValidationError, "budget: must be >= 1");
  if (d.target_alpha > 0.0)
    require(r.target_alpha > 0.0 && r.target_alpha < 0.75 * r.n, ErrorKind::ValidationError,
            "target_alpha: must lie in (0, 3n/4)");
  require(r.threads >= 0, ErrorKind::ValidationError, "threads: must be >= 0");
  if (!r.caps_override.empty()) (void)apply_caps_overrides(caps(), r.caps_override);
  return r;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = c.experiment;
  if (c.n > 0) j["n"] = c.n;
  if (c.circuit) j["circuit"] = circuit_to_json(*c.circuit);
  if (!c.noise_type.empty() || c.noise_p >= 0.0) {
    Json jn;
    if (!c.noise_type.empty()) jn["type"] = c.noise_type;
    if (c.noise_p >= 0.0) jn["p"] = c.noise_p;
    j["noise"] = std::move(jn);
  }
  if (c.kernel) j["kernel"] = kernel_to_json(*c.kernel);
  if (c.has_seed) j["seed"] = c.seed;
  if (c.trials > 0) j["trials"] = c.trials;
  if (c.budget > 0) j["budget"] = c.budget;
  if (c.target_alpha >= 0.0) j["target_alpha"] = c.target_alpha;
  j["threads"] = c.threads;
  {
    const Caps effective = apply_caps_overrides(caps(), c.caps_override);
    Json jc;
    jc["dense_state_qubits"] = effective.dense_state_qubits;
    jc["superop_qubits"] = effective.superop_qubits;
    jc["kraus_cap"] = effective.kraus_cap;
    jc["trajectory_bytes"] = effective.trajectory_bytes;
    jc["kraus_bytes"] = effective.kraus_bytes;
    j["caps"] = std::move(jc);
  }
  if (!c.output_dir.empty()) j["output_dir"] = c.output_dir;
  return j;
}

std::vector<std::string> emit_report(const ResultRecord& record, const std::string& out_dir) {
  require_finite_numbers(record.payload);
  std::vector<std::string> paths;
  try {
    fs::create_directories(out_dir);
    if (!record.tables.empty()) fs::create_directories(fs::path(out_dir) / "tables");
    if (!record.figures.empty()) fs::create_directories(fs::path(out_dir) / "figures");
  } catch (const fs::filesystem_error& e) {
    fail(ErrorKind::IoError, std::string("cannot create output directories: ") + e.what());
  }

  write_text_file((fs::path(out_dir) / "results.json").string(), record.payload.dump(2) + "\n");
  paths.push_back("results.json");
  for (const auto& [name, csv] : record.tables) {
    const std::string rel = "tables/" + name + ".csv";
    write_text_file((fs::path(out_dir) / rel).string(), csv);
    paths.push_back(rel);
  }
  for (const auto& [name, svg] : record.figures) {
    const std::string rel = "figures/" + name + ".svg";
    write_text_file((fs::path(out_dir) / rel).string(), svg);
    paths.push_back(rel);
  }
  return paths;
}

RunManifest run_config(const ExperimentConfig& cfg, const std::string& out_dir) {
  ExperimentConfig r = resolve_config(cfg);
  std::string out = out_dir;
  if (out.empty()) out = r.output_dir;
  if (out.empty()) out = "noiselab-out/" + r.experiment;
  r.output_dir = out;

  RunManifest m;
  m.out_dir = out;
  m.artifact_version = kArtifactVersion;
  m.config = config_to_json(r);
  m.started_utc = now_utc();

  try {
    fs::create_directories(out);
  } catch (const fs::filesystem_error& e) {
    fail(ErrorKind::IoError, std::string("cannot create output directory: ") + e.what());
  }
  const std::string config_bytes = m.config.dump(2) + "\n";
  write_text_file((fs::path(out) / "config.json").string(), config_bytes);
  m.checksums.emplace_back("config.json", fnv1a_hex(config_bytes));

  auto write_manifest = [&] {
    Json j;
    j["schema"] = m.schema;
    j["artifact_version"] = m.artifact_version;
    j["experiment"] = r.experiment;
    j["started_utc"] = m.started_utc;
    j["finished_utc"] = m.finished_utc;
    j["config"] = m.config;
    Json files;
    for (const auto& [rel, sum] : m.checksums) files[rel] = sum;
    j["files"] = std::move(files);
    if (!m.error.empty()) j["error"] = m.error;
    write_text_file((fs::path(out) / "manifest.json").string(), j.dump(2) + "\n");
  };

  try {
    const ResultRecord rec = run_experiment(r);
    m.checksums.emplace_back("results.json", fnv1a_hex(rec.payload.dump(2) + "\n"));
    for (const auto& [name, csv] : rec.tables)
      m.checksums.emplace_back("tables/" + name + ".csv", fnv1a_hex(csv));
    for (const auto& [name, svg] : rec.figures)
      m.checksums.emplace_back("figures/" + name + ".svg", fnv1a_hex(svg));
    emit_report(rec, out);
  } catch (const std::exception& e) {
    m.error = e.what();
    m.finished_utc = now_utc();
    write_manifest();
    throw;
  }
  m.finished_utc = now_utc();
  write_manifest();
  return m;
}

RunManifest run_preset(const std::string& name, const Json& overrides,
                       const std::string& out_dir) {
  Json merged = config_to_json(preset_default_config(name));  // UnknownPreset
  if (!overrides.is_null() && !overrides.empty()) {
    require(overrides.is_object(), ErrorKind::ValidationError,
            "overrides: expected a JSON object");
    deep_merge(merged, overrides);
  }
  return run_config(config_from_json(merged), out_dir);
}

DeterminismReport verify_determinism(const ExperimentConfig& cfg,
                                     const std::vector<int>& thread_counts) {
  require(!thread_counts.empty(), ErrorKind::BadRange,
          "verify_determinism: need at least one thread count");
  ExperimentConfig r = resolve_config(cfg);

  auto artifacts = [&](int threads) {
    r.threads = threads;
    const ResultRecord rec = run_experiment(r);
    std::vector<std::pair<std::string, std::string>> a;
    a.emplace_back("results.json", rec.payload.dump(2) + "\n");
    for (const auto& [name, csv] : rec.tables) a.emplace_back("tables/" + name + ".csv", csv);
    for (const auto& [name, svg] : rec.figures) a.emplace_back("figures/" + name + ".svg", svg);
    return a;
  };

  const auto baseline = artifacts(thread_counts.front());
  for (std::size_t i = 1; i < thread_counts.size(); ++i) {
    const auto other = artifacts(thread_counts[i]);
    if (other.size() != baseline.size())
      return {false, "artifact sets differ between worker caps " +
                         std::to_string(thread_counts.front()) + " and " +
                         std::to_string(thread_counts[i])};
    for (std::size_t k = 0; k < baseline.size(); ++k) {
      if (baseline[k].first != other[k].first || baseline[k].second != other[k].second)
        return {false, "artifact '" + baseline[k].first + "' differs between worker caps " +
                           std::to_string(thread_counts.front()) + " and " +
                           std::to_string(thread_counts[i])};
    }
  }
  std::string counts;
  for (int k : thread_counts) counts += (counts.empty() ? "" : ", ") + std::to_string(k);
  return {true, "byte-identical artifacts across worker caps {" + counts + "}"};
}

}  // namespace noiselab
