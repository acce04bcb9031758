#pragma once

// JSON (de)serialization for circuits, kernels, and experiment payloads.
// Uses insertion-ordered JSON throughout so emitted files are byte-stable.

#include <string>

#include <json.hpp>

#include "noiselab/circuit_ir.hpp"
#include "noiselab/smoothing.hpp"

namespace noiselab {

using Json = nlohmann::ordered_json;

// Circuit <-> {"n": 2, "cycles": [[{"gate": "H", "qubits": [0]}], ...]};
// rotation gates carry an extra "angle". Parsing validates gate names,
// arities, and the structural circuit invariants.
Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);  // ParseError, ValidationError

// KernelSpec <-> {"kind": "uniform" | "exp_decay" | "window", "tau"?, "w"?}.
Json kernel_to_json(const KernelSpec& k);
KernelSpec kernel_from_json(const Json& j);  // ParseError, ValidationError

// Throws ValidationError naming the JSON pointer of the first non-finite
// number; emitted result payloads must contain finite numbers only.
void require_finite_numbers(const Json& j);

// File helpers (IoError on failure). read_json throws ParseError with the
// path and parse position on malformed input.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// FNV-1a 64-bit checksum of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace noiselab
