#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace noiselab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline Eigen::Index dim_of(int n) { return Eigen::Index(1) << n; }

// Error taxonomy. One exception type; the kind drives CLI exit codes
// (config/usage kinds exit 2, everything else exits 1).
enum class ErrorKind {
  DimensionMismatch,
  LengthMismatch,
  CapExceeded,
  BadWeights,
  BadProbability,
  BadRange,
  BadIndex,
  EmptySet,
  NotClifford,
  MissingSuperop,
  CalibrationFailed,
  NoConvergence,
  ParseError,
  ValidationError,
  UnknownPreset,
  IoError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BadWeights: return "BadWeights";
    case ErrorKind::BadProbability: return "BadProbability";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NotClifford: return "NotClifford";
    case ErrorKind::MissingSuperop: return "MissingSuperop";
    case ErrorKind::CalibrationFailed: return "CalibrationFailed";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

inline void require(bool cond, ErrorKind k, const std::string& msg) {
  if (!cond) fail(k, msg);
}

// Resource caps. Mutable process-global so the CLI can apply
// NOISELAB_CAPS_JSON once at startup; library code treats it as read-only.
struct Caps {
  int dense_state_qubits = 12;   // dense state / Pauli matrix cap
  int superop_qubits = 6;        // 4^6 = 4096-dim superoperators
  int kraus_cap = 4096;          // max Kraus count before canonicalization
  std::size_t trajectory_bytes = std::size_t(2) << 30;  // snapshot memory guard
  std::size_t kraus_bytes = std::size_t(64) << 20;      // dense Kraus materialization guard
};

inline Caps& caps() {
  static Caps c;
  return c;
}

// Validation tolerances, centralized (one configuration record).
namespace tol {
inline constexpr double herm = 1e-10;       // Hermiticity defect
inline constexpr double trace = 1e-10;      // trace-one defect
inline constexpr double psd = -1e-10;       // state eigenvalue floor
inline constexpr double tp_resid = 1e-9;    // channel trace preservation
inline constexpr double choi_psd = -1e-9;   // Choi eigenvalue floor
inline constexpr double mass_sum = 1e-9;    // syndrome normalization
inline constexpr double weight_sum = 1e-12; // mixture weight normalization
inline constexpr double kraus_drop = 1e-12; // Choi eigenvalue cut in re-extraction
}  // namespace tol

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> problems;
  void flag(const std::string& p) {
    ok = false;
    problems.push_back(p);
  }
};

}  // namespace noiselab
