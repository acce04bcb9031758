#include "noiselab/circuit.hpp"

#include <cmath>
#include <set>

namespace noiselab {

//============================================================================
// Gate and circuit IR
//============================================================================

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::SWAP: return "SWAP";
  }
  return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
  static const std::pair<const char*, GateKind> table[] = {
      {"H", GateKind::H},   {"S", GateKind::S},     {"T", GateKind::T},
      {"X", GateKind::X},   {"Y", GateKind::Y},     {"Z", GateKind::Z},
      {"RX", GateKind::RX}, {"RY", GateKind::RY},   {"RZ", GateKind::RZ},
      {"CNOT", GateKind::CNOT}, {"CX", GateKind::CNOT}, {"CZ", GateKind::CZ},
      {"SWAP", GateKind::SWAP},
  };
  for (const auto& [n, k] : table)
    if (name == n) return k;
  fail(ErrorKind::ParseError, "unknown gate name '" + name + "'");
}

int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP: return 2;
    default: return 1;
  }
}

bool gate_is_clifford(GateKind k) {
  switch (k) {
    case GateKind::T:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ: return false;
    default: return true;
  }
}

bool gate_takes_angle(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

Mat gate_matrix(const Gate& g) {
  const double isq = 1.0 / std::sqrt(2.0);
  const cplx i(0, 1);
  switch (g.kind) {
    case GateKind::H: return (Mat(2, 2) << isq, isq, isq, -isq).finished();
    case GateKind::S: return (Mat(2, 2) << 1, 0, 0, i).finished();
    case GateKind::T: return (Mat(2, 2) << 1, 0, 0, std::exp(i * (M_PI / 4))).finished();
    case GateKind::X: return (Mat(2, 2) << 0, 1, 1, 0).finished();
    case GateKind::Y: return (Mat(2, 2) << 0, -i, i, 0).finished();
    case GateKind::Z: return (Mat(2, 2) << 1, 0, 0, -1).finished();
    case GateKind::RX: {
      const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
      return (Mat(2, 2) << c, -i * s, -i * s, c).finished();
    }
    case GateKind::RY: {
      const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
      return (Mat(2, 2) << c, -s, s, c).finished();
    }
    case GateKind::RZ: {
      const double half = g.angle / 2;
      return (Mat(2, 2) << std::exp(-i * half), 0, 0, std::exp(i * half)).finished();
    }
    case GateKind::CNOT:
      return (Mat(4, 4) << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0).finished();
    case GateKind::CZ:
      return (Mat(4, 4) << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1).finished();
    case GateKind::SWAP:
      return (Mat(4, 4) << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1).finished();
  }
  fail(ErrorKind::ParseError, "gate_matrix: unhandled gate kind");
}

bool Circuit::all_clifford() const {
  for (const auto& cycle : cycles)
    for (const Gate& g : cycle)
      if (!gate_is_clifford(g.kind)) return false;
  return true;
}

ValidationReport validate(const Circuit& c) {
  ValidationReport rep;
  if (c.n < 1) rep.flag("qubit count must be positive");
  for (std::size_t t = 0; t < c.cycles.size(); ++t) {
    std::set<int> used;
    for (const Gate& g : c.cycles[t]) {
      for (int j = 0; j < g.arity(); ++j) {
        const int q = g.qubits[std::size_t(j)];
        if (q < 0 || q >= c.n)
          rep.flag("cycle " + std::to_string(t + 1) + ": qubit index " + std::to_string(q) +
                   " out of range");
        else if (!used.insert(q).second)
          rep.flag("cycle " + std::to_string(t + 1) + ": qubit " + std::to_string(q) + " reused");
      }
      if (g.arity() == 2 && g.qubits[0] == g.qubits[1])
        rep.flag("cycle " + std::to_string(t + 1) + ": two-qubit gate with equal qubits");
      if (gate_takes_angle(g.kind) && !std::isfinite(g.angle))
        rep.flag("cycle " + std::to_string(t + 1) + ": non-finite gate angle");
    }
  }
  return rep;
}

Mat cycle_unitary(const Circuit& c, int t) {
  require(t >= 1 && t <= c.T(), ErrorKind::BadRange, "cycle_unitary: cycle index out of range");
  require(c.n <= caps().dense_state_qubits, ErrorKind::CapExceeded,
          "cycle_unitary: n exceeds dense cap");
  const Eigen::Index d = dim_of(c.n);
  Mat u = Mat::Identity(d, d);
  for (const Gate& g : c.cycles[std::size_t(t - 1)]) {
    std::vector<int> qs(g.qubits.begin(), g.qubits.begin() + g.arity());
    u = embed_operator(gate_matrix(g), c.n, qs) * u;
  }
  return u;
}

Mat segment_unitary(const Circuit& c, int s, int t) {
  require(0 <= s && s <= t && t <= c.T(), ErrorKind::BadRange,
          "segment_unitary: need 0 <= s <= t <= T");
  const Eigen::Index d = dim_of(c.n);
  Mat u = Mat::Identity(d, d);
  for (int cyc = s + 1; cyc <= t; ++cyc) u = cycle_unitary(c, cyc) * u;
  return u;
}

Circuit bell_circuit() {
  Circuit c{2, {{Gate::h(0)}, {Gate::cnot(0, 1)}}};
  return c;
}

Circuit ghz_circuit(int n) {
  require(n >= 2, ErrorKind::BadRange, "ghz_circuit: need n >= 2");
  Circuit c{n, {{Gate::h(0)}}};
  for (int q = 0; q + 1 < n; ++q) c.cycles.push_back({Gate::cnot(q, q + 1)});
  return c;
}

Circuit product_rx_circuit(int n, double theta) {
  require(n >= 1, ErrorKind::BadRange, "product_rx_circuit: need n >= 1");
  std::vector<Gate> cycle;
  for (int q = 0; q < n; ++q) cycle.push_back(Gate::rx(q, theta));
  return Circuit{n, {cycle}};
}

//============================================================================
// Noisy execution
//============================================================================

GateNoise gate_noise(const Gate& g, const QuantumChannel& e) {
  require(e.n() == g.arity(), ErrorKind::DimensionMismatch,
          "gate_noise: channel size does not match gate arity");
  std::vector<int> qs(g.qubits.begin(), g.qubits.begin() + g.arity());
  return GateNoise{-1, qs, e};
}

NoiseSchedule NoiseSchedule::uniform_storage(int T, const QuantumChannel& e) {
  NoiseSchedule ns = NoiseSchedule::none(T);
  for (auto& slot : ns.storage) slot = e;
  return ns;
}

namespace {

void check_trajectory_budget(int n, int T) {
  const std::size_t snapshot = (std::size_t(1) << (2 * n)) * sizeof(cplx);
  require(snapshot * std::size_t(T + 1) <= caps().trajectory_bytes, ErrorKind::CapExceeded,
          "trajectory snapshots exceed the configured byte budget");
}

}  // namespace

Trajectory simulate_ideal(const Circuit& c, const DensityMatrix& rho0) {
  require(c.n == rho0.n, ErrorKind::DimensionMismatch, "simulate_ideal: dims differ");
  require(c.n <= caps().dense_state_qubits, ErrorKind::CapExceeded,
          "simulate_ideal: n exceeds dense cap");
  ValidationReport rep = validate(c);
  require(rep.ok, ErrorKind::ValidationError,
          "simulate_ideal: invalid circuit: " + (rep.problems.empty() ? "" : rep.problems[0]));
  check_trajectory_budget(c.n, c.T());
  Trajectory traj;
  traj.snapshots.push_back(rho0);
  Mat rho = rho0.m;
  for (int t = 1; t <= c.T(); ++t) {
    const Mat u = cycle_unitary(c, t);
    rho = u * rho * u.adjoint();
    traj.snapshots.push_back({c.n, rho});
  }
  return traj;
}

Trajectory simulate_noisy(const Circuit& c, const DensityMatrix& rho0, const NoiseSchedule& ns) {
  require(c.n == rho0.n, ErrorKind::DimensionMismatch, "simulate_noisy: dims differ");
  require(c.n <= caps().dense_state_qubits, ErrorKind::CapExceeded,
          "simulate_noisy: n exceeds dense cap");
  require(int(ns.storage.size()) == c.T(), ErrorKind::DimensionMismatch,
          "simulate_noisy: storage schedule length must equal cycle count");
  ValidationReport rep = validate(c);
  require(rep.ok, ErrorKind::ValidationError,
          "simulate_noisy: invalid circuit: " + (rep.problems.empty() ? "" : rep.problems[0]));
  check_trajectory_budget(c.n, c.T());

  const bool track_superop = c.n <= caps().superop_qubits;
  const Eigen::Index d = dim_of(c.n);

  Trajectory traj;
  traj.snapshots.push_back(rho0);
  if (track_superop) traj.noisy_superop = Mat::Identity(d * d, d * d);

  DensityMatrix rho = rho0;
  for (int t = 1; t <= c.T(); ++t) {
    const Mat u = cycle_unitary(c, t);
    rho.m = u * rho.m * u.adjoint();
    if (track_superop) *traj.noisy_superop = kron(u.conjugate(), u) * (*traj.noisy_superop);

    auto apply_gate_noise = [&] {
      for (const GateNoise& gn : ns.gate_noise) {
        if (gn.cycle != t) continue;
        const QuantumChannel ext = extend_channel(gn.channel, c.n, gn.qubits);
        rho = apply(ext, rho);
        if (track_superop) *traj.noisy_superop = ext.superop() * (*traj.noisy_superop);
      }
    };
    auto apply_storage = [&] {
      const auto& slot = ns.storage[std::size_t(t - 1)];
      if (!slot) return;
      require(slot->n() == c.n, ErrorKind::DimensionMismatch,
              "simulate_noisy: storage channel size mismatch");
      rho = apply(*slot, rho);
      if (track_superop) *traj.noisy_superop = slot->superop() * (*traj.noisy_superop);
    };
    if (ns.order == NoiseOrder::GatesThenGateNoiseThenStorage) {
      apply_gate_noise();
      apply_storage();
    } else {
      apply_storage();
      apply_gate_noise();
    }
    traj.snapshots.push_back(rho);
  }
  return traj;
}

QuantumChannel overall_error_channel(const Trajectory& traj, const Circuit& c) {
  require(traj.noisy_superop.has_value(), ErrorKind::MissingSuperop,
          "overall_error_channel: trajectory carries no superoperator");
  const Mat u = segment_unitary(c, 0, c.T());
  const Mat s_err = (*traj.noisy_superop) * kron(u.conjugate(), u).adjoint();
  return QuantumChannel(c.n, kraus_from_choi(superop_to_choi(s_err, c.n), c.n));
}

}  // namespace noiselab
