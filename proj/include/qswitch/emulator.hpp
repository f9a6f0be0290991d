#pragma once

// Shot-noise emulation of three-qubit (A, M, C) Pauli tomography.
//
// Each of the 27 settings measures every qubit in X, Y or Z. Outcome index
// o in [0, 8) is big-endian over (A, M, C); bit value 0 is the +1
// eigenvector, 1 the -1 eigenvector. Reconstruction is linear inversion of
// the Pauli expectation values followed by eigenvalue truncation onto the
// trace-one PSD cone.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qswitch/linalg.hpp"

namespace qswitch {

enum class PauliBasis { X, Y, Z };

inline constexpr std::size_t kTomographyQubits = 3;
inline constexpr std::size_t kOutcomes = 8;
inline constexpr std::size_t kSettings = 27;

struct MeasurementSetting {
  std::array<PauliBasis, kTomographyQubits> bases{};

  /// e.g. "XYZ"
  std::string label() const;
  static MeasurementSetting parse(const std::string& label);
  friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;
};

/// All 27 settings, A slowest, in X < Y < Z order.
std::vector<MeasurementSetting> all_settings();

using Probabilities = std::array<double, kOutcomes>;

struct CountTable {
  MeasurementSetting setting;
  std::uint64_t shots = 0;
  std::array<std::uint64_t, kOutcomes> counts{};
};

/// Outcome frequencies for one setting; the infinite-shot limit of a
/// CountTable.
struct FrequencyTable {
  MeasurementSetting setting;
  Probabilities frequencies{};
};

struct RandomSeed {
  std::uint64_t value = 0;
};

/// Counter-based per-task seed: a splitmix64 hash of (master, index).
std::uint64_t derive_seed(RandomSeed master, std::uint64_t index);

/// Born-rule outcome probabilities. rho must be 8-dimensional.
Probabilities born_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting);

inline constexpr double kProbabilityTolerance = 1e-9;

/// Multinomial draw by sequential conditional binomials. probs must be a
/// distribution within kProbabilityTolerance; UsageError otherwise.
CountTable sample_counts(const Probabilities& probs, std::uint64_t shots,
                         const MeasurementSetting& setting, std::mt19937_64& engine);
CountTable sample_counts(const Probabilities& probs, std::uint64_t shots,
                         const MeasurementSetting& setting, RandomSeed seed);

FrequencyTable to_frequencies(const CountTable& table);
/// Born probabilities for all 27 settings.
std::vector<FrequencyTable> exact_frequencies(const DensityMatrix& rho);

/// Unprojected estimate (1/8) sum_P <P> P. Every setting must appear
/// exactly once; UsageError otherwise.
ComplexMatrix linear_inversion(std::span<const FrequencyTable> tables);

/// Zeroes negative eigenvalues of the Hermitian part and renormalizes the
/// trace. The result carries qubit labels (A, M, C) when dim is 8.
DensityMatrix project_to_state(const ComplexMatrix& estimate);

DensityMatrix tomo_reconstruct(std::span<const FrequencyTable> tables);
DensityMatrix tomo_reconstruct(std::span<const CountTable> tables);

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation over trials
};

struct MonteCarloMetrics {
  MetricStats information;  // I(A:CM)
  MetricStats coherence;    // A_C of the control marginal, computational basis
  MetricStats fidelity;     // squared Uhlmann fidelity to the true state
  MetricStats root_fidelity;
  std::size_t trials = 0;
  std::optional<std::uint64_t> shots;  // nullopt: exact frequencies
};

inline constexpr std::uint64_t kDefaultShots = 10'000;
inline constexpr std::size_t kDefaultTrials = 100;

/// Repeats sampling and reconstruction `trials` times (>= 2). Trial k draws
/// from an engine seeded with derive_seed(seed, k), so results do not
/// depend on execution order. With shots == nullopt every trial uses exact
/// frequencies. When `tables_out` is given it receives the count tables of
/// every trial (left empty in exact mode).
MonteCarloMetrics monte_carlo_metrics(const DensityMatrix& rho_true,
                                      std::optional<std::uint64_t> shots, std::size_t trials,
                                      RandomSeed seed,
                                      std::vector<std::vector<CountTable>>* tables_out = nullptr);

}  // namespace qswitch
