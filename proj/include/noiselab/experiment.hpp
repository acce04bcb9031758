#pragma once

// Reproducible experiment execution: validated configuration ingestion, the
// preset catalog, seeded deterministic runs under an explicit worker-count
// cap, flat-file persistence, and checksummed run manifests. Same (config,
// seed) always yields byte-identical results regardless of thread count.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noiselab/json_io.hpp"

namespace noiselab {

// A configuration with unset sentinels (0 / -1 / empty) that resolution
// fills from the preset's defaults. `seed` is mandatory in config files —
// there is no wall-clock fallback — while preset defaults carry seed 1.
struct ExperimentConfig {
  std::string experiment;            // preset name; catalog membership enforced
  int n = 0;                         // 0 = preset default
  std::optional<Circuit> circuit;    // only circuit-taking presets accept it
  std::string noise_type;            // "" = default; depolarizing | correlated_depolarizing
  double noise_p = -1.0;             // < 0 = preset default
  std::optional<KernelSpec> kernel;  // preset default if unset
  uint64_t seed = 0;
  bool has_seed = false;
  int trials = 0;        // 0 = preset default
  int budget = 0;        // 0 = preset default (optimizer experiments)
  double target_alpha = -1.0;  // < 0 = preset default (haar-weight)
  int threads = 0;       // worker cap; 0 = hardware concurrency
  Json caps_override = Json::object();
  std::string output_dir;  // empty = decided by the caller
};

// --- Preset catalog ----------------------------------------------------------

struct PresetInfo {
  std::string name;
  std::string summary;  // one line for listings
  int min_n = 1;
  int max_n = 1;
  bool takes_circuit = false;
  bool uses_kernel = false;
  bool uses_noise = false;
};

const std::vector<std::string>& preset_names();   // canonical order
bool is_preset(const std::string& name);
const PresetInfo& preset_info(const std::string& name);         // UnknownPreset
ExperimentConfig preset_default_config(const std::string& name);  // UnknownPreset

// --- Configuration ingestion -------------------------------------------------

// Unknown keys anywhere are rejected; every error names the offending field
// path (e.g. "noise.p"). The experiment name must be in the catalog and a
// seed must be present.
ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::string& path);  // + ParseError, IoError

// Fills every unset field from the preset defaults and validates ranges and
// per-preset size caps. Idempotent on resolved configs.
ExperimentConfig resolve_config(const ExperimentConfig& c);

// Canonical JSON form of a config; resolved configs serialize every field
// (including the effective caps), so emitted config.json files are complete.
Json config_to_json(const ExperimentConfig& c);

// Applies a caps-override object (e.g. {"superop_qubits": 5}) to a caps
// record. Unknown keys and non-positive values are ValidationErrors at
// "caps.<key>". Also used for the NOISELAB_CAPS_JSON environment override.
Caps apply_caps_overrides(Caps base, const Json& overrides);

// --- Execution ---------------------------------------------------------------

struct ResultRecord {
  Json payload;  // carries "schema": 1; all numbers finite
  std::vector<std::pair<std::string, std::string>> tables;   // name -> CSV bytes
  std::vector<std::pair<std::string, std::string>> figures;  // name -> SVG bytes
};

// Runs a resolved config entirely in memory, honoring its worker cap.
ResultRecord run_experiment(const ExperimentConfig& resolved);

// Writes payload -> results.json, tables/<name>.csv, figures/<name>.svg
// under out_dir; returns the relative paths written, in order.
std::vector<std::string> emit_report(const ResultRecord& record,
                                     const std::string& out_dir);  // IoError

struct RunManifest {
  Json config;                  // resolved copy
  std::string artifact_version;
  int schema = 1;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::pair<std::string, std::string>> checksums;  // rel path -> fnv1a64
  std::string out_dir;
  std::string error;  // nonempty when the experiment failed
};

// Executes a preset merged with JSON overrides (same schema as config
// files), persisting config.json, results.json, tables/, figures/ and
// manifest.json under out_dir. Experiment failures are recorded in the
// manifest and rethrown.
RunManifest run_preset(const std::string& name, const Json& overrides,
                       const std::string& out_dir);
RunManifest run_config(const ExperimentConfig& cfg, const std::string& out_dir);

// --- Determinism audit ---------------------------------------------------------

struct DeterminismReport {
  bool pass = false;
  std::string detail;  // which artifact diverged between which worker caps
};

// Runs the experiment once per worker cap and byte-compares every artifact.
DeterminismReport verify_determinism(const ExperimentConfig& cfg,
                                     const std::vector<int>& thread_counts);

}  // namespace noiselab
