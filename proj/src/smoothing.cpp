#include "noiselab/smoothing.hpp"

#include <cmath>

namespace noiselab {

KernelSpec KernelSpec::exp_decay(double tau) {
  require(tau > 0.0, ErrorKind::BadRange, "kernel: exp_decay needs tau > 0");
  KernelSpec k;
  k.kind = Kind::ExpDecay;
  k.tau = tau;
  return k;
}

KernelSpec KernelSpec::window(double w) {
  require(w > 0.0 && w <= 1.0, ErrorKind::BadRange, "kernel: window needs 0 < w <= 1");
  KernelSpec k;
  k.kind = Kind::Window;
  k.w = w;
  return k;
}

double KernelSpec::eval(double u) const {
  require(u >= 0.0, ErrorKind::BadRange, "kernel: evaluated at a negative argument");
  switch (kind) {
    case Kind::Uniform: return 1.0;
    case Kind::ExpDecay: return std::exp(-u / tau);
    case Kind::Window: return u <= w + 1e-15 ? 1.0 : 0.0;
  }
  return 0.0;
}

std::vector<double> kernel_weights(const KernelSpec& k, int t, int T) {
  require(T >= 1 && t >= 1 && t <= T, ErrorKind::BadRange, "kernel_weights: need 1 <= t <= T");
  std::vector<double> w(std::size_t(t), 0.0);
  double sum = 0.0;
  for (int s = 1; s <= t; ++s) {
    const double v = k.eval(double(t - s) / double(T));
    w[std::size_t(s - 1)] = v;
    sum += v;
  }
  require(sum > 0.0, ErrorKind::BadWeights, "kernel_weights: kernel vanishes on every cycle");
  for (double& v : w) v /= sum;
  return w;
}

namespace {

// Circuit slice carrying cycles s+1..t, so that Clifford conjugation by the
// slice realizes U_{s,t} (.) U_{s,t}^{-1} on the Pauli fast path.
Circuit circuit_slice(const Circuit& c, int s, int t) {
  Circuit out;
  out.n = c.n;
  out.cycles.assign(c.cycles.begin() + s, c.cycles.begin() + t);
  return out;
}

}  // namespace

DetrimentalSchedule detrimental_transform(const Circuit& c,
                                          const std::vector<QuantumChannel>& base,
                                          const KernelSpec& k) {
  const int T = c.T();
  require(int(base.size()) == T, ErrorKind::LengthMismatch,
          "detrimental_transform: need one base channel per cycle");
  for (const QuantumChannel& e : base)
    require(e.n() == c.n, ErrorKind::DimensionMismatch,
            "detrimental_transform: base channel size mismatch");

  bool fast = c.all_clifford();
  for (const QuantumChannel& e : base) fast = fast && e.pauli_rep().has_value();
  if (!fast)
    require(c.n <= caps().superop_qubits, ErrorKind::CapExceeded,
            "detrimental_transform: dense path needs n within the superoperator cap");

  DetrimentalSchedule ds;
  ds.circuit = c;
  ds.base = base;
  ds.kernel = k;
  ds.derived.reserve(std::size_t(T));
  for (int t = 1; t <= T; ++t) {
    const std::vector<double> w = kernel_weights(k, t, T);
    std::vector<QuantumChannel> terms;
    terms.reserve(std::size_t(t));
    for (int s = 1; s <= t; ++s) {
      const QuantumChannel& e = base[std::size_t(s - 1)];
      if (s == t) {
        terms.push_back(e);
      } else if (fast) {
        terms.push_back(conjugate_by_clifford(e, circuit_slice(c, s, t)));
      } else {
        terms.push_back(conjugate_by_unitary(e, segment_unitary(c, s, t)));
      }
    }
    ds.derived.push_back(mix(terms, w));
  }
  return ds;
}

QuantumChannel reverse_smoothing(const std::vector<QuantumChannel>& base, const KernelSpec& k,
                                 int t) {
  const int T = int(base.size());
  require(t >= 1 && t < T, ErrorKind::BadRange, "reverse_smoothing: need 1 <= t < T");
  std::vector<double> w(std::size_t(T - t), 0.0);
  double sum = 0.0;
  for (int s = t + 1; s <= T; ++s) {
    const double v = k.eval(double(s - t) / double(T));
    w[std::size_t(s - t - 1)] = v;
    sum += v;
  }
  require(sum > 0.0, ErrorKind::BadWeights, "reverse_smoothing: kernel vanishes on every cycle");
  for (double& v : w) v /= sum;
  return mix({base.begin() + t, base.end()}, w);
}

NoiseSchedule detrimental_schedule(const DetrimentalSchedule& ds) {
  NoiseSchedule ns = NoiseSchedule::none(ds.circuit.T());
  for (std::size_t i = 0; i < ds.derived.size(); ++i) ns.storage[i] = ds.derived[i];
  return ns;
}

NoiseSchedule reverse_schedule(const std::vector<QuantumChannel>& base, const KernelSpec& k) {
  const int T = int(base.size());
  require(T >= 1, ErrorKind::LengthMismatch, "reverse_schedule: empty base schedule");
  NoiseSchedule ns = NoiseSchedule::none(T);
  for (int t = 1; t < T; ++t) ns.storage[std::size_t(t - 1)] = reverse_smoothing(base, k, t);
  ns.storage[std::size_t(T - 1)] = base.back();  // no future noise to average
  return ns;
}

}  // namespace noiselab
