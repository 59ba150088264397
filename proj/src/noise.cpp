#include "hqkd/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hqkd {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(what) + ": depolarizing probability " +
                                std::to_string(p) + " outside [0, 1]");
}

double depolarized_fidelity(double p, double dim) {
  return std::sqrt((1.0 - p) + p / dim);
}

}  // namespace

void NoiseConfig::validate() const { check_probability(p, "noise"); }

void SecurityParams::validate() const {
  if (s < 1) throw std::invalid_argument("security parameter s must be >= 1");
  if (n < 1) throw std::invalid_argument("key length parameter n must be >= 1");
}

DensityMatrix depolarize(const DensityMatrix& rho, double p) {
  check_probability(p, "depolarize");
  const std::size_t d = rho.dimension();
  std::vector<Complex> e(rho.entries().begin(), rho.entries().end());
  for (auto& v : e) v *= 1.0 - p;
  for (std::size_t i = 0; i < d; ++i) e[i * d + i] += p / static_cast<double>(d);
  return DensityMatrix::from_entries(rho.num_qubits(), std::move(e));
}

StateVector depolarize_sample(const StateVector& state, double p, RandomStream& rng) {
  check_probability(p, "depolarize_sample");
  if (p == 0.0 || rng.uniform() >= p) return state;
  return StateVector::basis_state(state.num_qubits(), rng.below_pow2(state.dimension()));
}

double ghz_fidelity(double p) {
  check_probability(p, "ghz_fidelity");
  return depolarized_fidelity(p, 8.0);
}

double b92_fidelity(double p) {
  check_probability(p, "b92_fidelity");
  return depolarized_fidelity(p, 2.0);
}

double combined_fidelity(double p) { return std::min(ghz_fidelity(p), b92_fidelity(p)); }

bool security_condition(double fidelity, const SecurityParams& params) {
  return fidelity * fidelity > 1.0 - std::ldexp(1.0, -params.s);
}

double entropy_bound(const SecurityParams& params) {
  const double linear = 2.0 * params.n + params.s + 1.0 / std::numbers::ln2;
  return linear * std::ldexp(1.0, -params.s);
}

}  // namespace hqkd
