// Command-line experiment runner.
//
//   noiselab run <preset|config.json> [--seed N] [--out DIR] [--threads K]
//                [--set key=value]...
//   noiselab list-presets
//   noiselab verify-determinism <config.json> [--threads K,K,...]
//
// The environment variable NOISELAB_CAPS_JSON may hold a JSON object of
// resource-cap overrides applied at startup. Exit codes: 0 success,
// 1 experiment failure, 2 usage/configuration error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noiselab/experiment.hpp"

namespace {

using noiselab::Json;

bool is_usage_error(noiselab::ErrorKind k) {
  return k == noiselab::ErrorKind::ParseError || k == noiselab::ErrorKind::ValidationError ||
         k == noiselab::ErrorKind::UnknownPreset;
}

// "noise.p=0.05" -> nested JSON {"noise": {"p": 0.05}}. Values parse as JSON
// literals when possible and fall back to strings ("kernel.kind=uniform").
Json override_from_assignment(const std::string& kv) {
  const std::size_t eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    noiselab::fail(noiselab::ErrorKind::ValidationError,
                   "--set expects key=value, got '" + kv + "'");
  const std::string key = kv.substr(0, eq);
  const std::string raw = kv.substr(eq + 1);
  Json value = Json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  Json out = value;
  std::size_t end = key.size();
  for (;;) {
    const std::size_t dot = key.rfind('.', end == 0 ? std::string::npos : end - 1);
    const std::size_t start = (dot == std::string::npos) ? 0 : dot + 1;
    const std::string part = key.substr(start, end - start);
    if (part.empty())
      noiselab::fail(noiselab::ErrorKind::ValidationError,
                     "--set key has an empty path segment: '" + key + "'");
    Json wrapped;
    wrapped[part] = std::move(out);
    out = std::move(wrapped);
    if (dot == std::string::npos) break;
    end = dot;
  }
  return out;
}

void merge(Json& base, const Json& patch) {
  if (!base.is_object() || !patch.is_object()) {
    base = patch;
    return;
  }
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    if (base.contains(it.key()) && base[it.key()].is_object() && it.value().is_object())
      merge(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
}

void apply_env_caps() {
  const char* env = std::getenv("NOISELAB_CAPS_JSON");
  if (!env || !*env) return;
  Json j = Json::parse(env, nullptr, false);
  if (j.is_discarded())
    noiselab::fail(noiselab::ErrorKind::ParseError, "NOISELAB_CAPS_JSON: malformed JSON");
  noiselab::caps() = noiselab::apply_caps_overrides(noiselab::caps(), j);
}

std::vector<int> parse_thread_counts(const std::string& spec) {
  std::vector<int> counts;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = spec.find(',', pos);
    const std::string part =
        spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size() || v < 0) throw std::invalid_argument(part);
      counts.push_back(v);
    } catch (const std::exception&) {
      noiselab::fail(noiselab::ErrorKind::ValidationError,
                     "--threads expects a comma-separated list of worker caps, got '" + spec +
                         "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (counts.empty())
    noiselab::fail(noiselab::ErrorKind::ValidationError, "--threads: empty list");
  return counts;
}

bool looks_like_config_file(const std::string& target) {
  return target.size() > 5 && target.substr(target.size() - 5) == ".json";
}

int cmd_run(const std::string& target, const std::vector<std::string>& sets, bool has_seed,
            uint64_t seed, const std::string& out_dir, int threads) {
  Json overrides = Json::object();
  for (const std::string& kv : sets) {
    const Json patch = override_from_assignment(kv);
    merge(overrides, patch);
  }
  if (has_seed) overrides["seed"] = seed;
  if (threads >= 0) overrides["threads"] = threads;

  noiselab::RunManifest manifest;
  if (looks_like_config_file(target)) {
    if (!std::filesystem::exists(target))
      noiselab::fail(noiselab::ErrorKind::ValidationError,
                     "run target '" + target + "' is neither a preset nor a readable config file");
    Json merged = noiselab::config_to_json(noiselab::load_config(target));
    merge(merged, overrides);
    manifest = noiselab::run_config(noiselab::config_from_json(merged), out_dir);
  } else {
    manifest = noiselab::run_preset(target, overrides, out_dir);
  }

  std::cout << "wrote " << manifest.out_dir << "/manifest.json ("
            << manifest.checksums.size() << " files)\n";
  return 0;
}

int cmd_list_presets() {
  for (const std::string& name : noiselab::preset_names()) {
    const noiselab::PresetInfo& info = noiselab::preset_info(name);
    std::cout << name << "\t" << info.summary << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& path, const std::string& threads_spec) {
  if (!std::filesystem::exists(path))
    noiselab::fail(noiselab::ErrorKind::ValidationError, "no config file at '" + path + "'");
  const noiselab::ExperimentConfig cfg = noiselab::load_config(path);
  const std::vector<int> counts = parse_thread_counts(threads_spec);
  const noiselab::DeterminismReport rep = noiselab::verify_determinism(cfg, counts);
  std::cout << (rep.pass ? "PASS" : "FAIL") << ": " << rep.detail << "\n";
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noiselab: reproducible noise-propagation experiments"};
  app.require_subcommand(1);

  std::string run_target, run_out, verify_path;
  std::string verify_threads = "1,4,8";
  std::vector<std::string> run_sets;
  uint64_t run_seed = 0;
  int run_threads = -1;

  CLI::App* run = app.add_subcommand("run", "Run a preset or a config.json");
  run->add_option("target", run_target, "Preset name or path to a config.json")->required();
  CLI::Option* seed_opt = run->add_option("--seed", run_seed, "Master seed override");
  run->add_option("--out", run_out, "Output directory");
  run->add_option("--threads", run_threads, "Worker cap (0 = hardware)");
  run->add_option("--set", run_sets, "Config override as key=value (repeatable)");

  CLI::App* list = app.add_subcommand("list-presets", "List the preset catalog");

  CLI::App* verify =
      app.add_subcommand("verify-determinism", "Re-run a config under several worker caps");
  verify->add_option("config", verify_path, "Path to a config.json")->required();
  verify->add_option("--threads", verify_threads, "Comma-separated worker caps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0; any parse failure is a usage error
  }

  try {
    apply_env_caps();
    if (run->parsed())
      return cmd_run(run_target, run_sets, seed_opt->count() > 0, run_seed, run_out, run_threads);
    if (list->parsed()) return cmd_list_presets();
    if (verify->parsed()) return cmd_verify(verify_path, verify_threads);
  } catch (const noiselab::Error& e) {
    std::cerr << "noiselab: " << e.what() << "\n";
    return is_usage_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "noiselab: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
