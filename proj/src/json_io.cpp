#include "noiselab/json_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace noiselab {

namespace {

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    require(ok, ErrorKind::ValidationError,
            where + ": unknown key '" + it.key() + "'");
  }
}

}  // namespace

Json circuit_to_json(const Circuit& c) {
  Json j;
  j["n"] = c.n;
  j["cycles"] = Json::array();
  for (const auto& cycle : c.cycles) {
    Json jc = Json::array();
    for (const Gate& g : cycle) {
      Json jg;
      jg["gate"] = gate_name(g.kind);
      Json qs = Json::array();
      for (int a = 0; a < g.arity(); ++a) qs.push_back(g.qubits[std::size_t(a)]);
      jg["qubits"] = std::move(qs);
      if (gate_takes_angle(g.kind)) jg["angle"] = g.angle;
      jc.push_back(std::move(jg));
    }
    j["cycles"].push_back(std::move(jc));
  }
  return j;
}

Circuit circuit_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::ParseError, "circuit: expected an object");
  reject_unknown_keys(j, {"n", "cycles"}, "circuit");
  require(j.contains("n") && j["n"].is_number_integer(), ErrorKind::ParseError,
          "circuit.n: expected an integer");
  require(j.contains("cycles") && j["cycles"].is_array(), ErrorKind::ParseError,
          "circuit.cycles: expected an array");

  Circuit c;
  c.n = j["n"].get<int>();
  for (std::size_t t = 0; t < j["cycles"].size(); ++t) {
    const Json& jc = j["cycles"][t];
    const std::string at = "circuit.cycles[" + std::to_string(t) + "]";
    require(jc.is_array(), ErrorKind::ParseError, at + ": expected an array of gates");
    std::vector<Gate> cycle;
    for (std::size_t gidx = 0; gidx < jc.size(); ++gidx) {
      const Json& jg = jc[gidx];
      const std::string gat = at + "[" + std::to_string(gidx) + "]";
      require(jg.is_object(), ErrorKind::ParseError, gat + ": expected a gate object");
      reject_unknown_keys(jg, {"gate", "qubits", "angle"}, gat);
      require(jg.contains("gate") && jg["gate"].is_string(), ErrorKind::ParseError,
              gat + ".gate: expected a gate name string");
      Gate g;
      g.kind = gate_kind_from_name(jg["gate"].get<std::string>());
      require(jg.contains("qubits") && jg["qubits"].is_array(), ErrorKind::ParseError,
              gat + ".qubits: expected an array");
      require(int(jg["qubits"].size()) == gate_arity(g.kind), ErrorKind::ValidationError,
              gat + ".qubits: wrong qubit count for " + jg["gate"].get<std::string>());
      for (std::size_t q = 0; q < jg["qubits"].size(); ++q) {
        require(jg["qubits"][q].is_number_integer(), ErrorKind::ParseError,
                gat + ".qubits: expected integers");
        g.qubits[q] = jg["qubits"][q].get<int>();
      }
      if (gate_takes_angle(g.kind)) {
        require(jg.contains("angle") && jg["angle"].is_number(), ErrorKind::ParseError,
                gat + ".angle: rotation gates need a numeric angle");
        g.angle = jg["angle"].get<double>();
      } else {
        require(!jg.contains("angle"), ErrorKind::ValidationError,
                gat + ".angle: only rotation gates take an angle");
      }
      cycle.push_back(g);
    }
    c.cycles.push_back(std::move(cycle));
  }

  const ValidationReport vr = validate(c);
  require(vr.ok, ErrorKind::ValidationError,
          "circuit: " + (vr.problems.empty() ? std::string("invalid") : vr.problems.front()));
  return c;
}

Json kernel_to_json(const KernelSpec& k) {
  Json j;
  switch (k.kind) {
    case KernelSpec::Kind::Uniform: j["kind"] = "uniform"; break;
    case KernelSpec::Kind::ExpDecay:
      j["kind"] = "exp_decay";
      j["tau"] = k.tau;
      break;
    case KernelSpec::Kind::Window:
      j["kind"] = "window";
      j["w"] = k.w;
      break;
  }
  return j;
}

KernelSpec kernel_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::ParseError, "kernel: expected an object");
  reject_unknown_keys(j, {"kind", "tau", "w"}, "kernel");
  require(j.contains("kind") && j["kind"].is_string(), ErrorKind::ParseError,
          "kernel.kind: expected a string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "uniform") {
    require(!j.contains("tau") && !j.contains("w"), ErrorKind::ValidationError,
            "kernel: uniform takes no parameters");
    return KernelSpec::uniform();
  }
  if (kind == "exp_decay") {
    require(j.contains("tau") && j["tau"].is_number(), ErrorKind::ParseError,
            "kernel.tau: exp_decay needs a numeric tau");
    require(!j.contains("w"), ErrorKind::ValidationError, "kernel: exp_decay takes tau only");
    return KernelSpec::exp_decay(j["tau"].get<double>());
  }
  if (kind == "window") {
    require(j.contains("w") && j["w"].is_number(), ErrorKind::ParseError,
            "kernel.w: window needs a numeric width");
    require(!j.contains("tau"), ErrorKind::ValidationError, "kernel: window takes w only");
    return KernelSpec::window(j["w"].get<double>());
  }
  fail(ErrorKind::ValidationError, "kernel.kind: unknown kind '" + kind + "'");
}

namespace {

void walk_finite(const Json& j, const std::string& path) {
  if (j.is_number_float())
    require(std::isfinite(j.get<double>()), ErrorKind::ValidationError,
            "non-finite number at " + (path.empty() ? "/" : path));
  else if (j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it) walk_finite(it.value(), path + "/" + it.key());
  else if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i)
      walk_finite(j[i], path + "/" + std::to_string(i));
}

}  // namespace

void require_finite_numbers(const Json& j) { walk_finite(j, ""); }

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorKind::IoError, "cannot open " + path + " for writing");
  out << content;
  out.flush();
  require(out.good(), ErrorKind::IoError, "short write to " + path);
}

std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[std::size_t(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace noiselab
