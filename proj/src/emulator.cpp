#include "qswitch/emulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qswitch/errors.hpp"
#include "qswitch/info_measures.hpp"
#include "qswitch/kernels.hpp"
#include "qswitch/parallel.hpp"
#include "qswitch/quantum_switch.hpp"

namespace qswitch {

namespace {

constexpr char basis_char(PauliBasis b) {
  switch (b) {
    case PauliBasis::X: return 'X';
    case PauliBasis::Y: return 'Y';
    case PauliBasis::Z: return 'Z';
  }
  return '?';
}

// Eigenvector of `b` for outcome bit 0 (+1) or 1 (-1).
std::array<Complex, 2> eigenvector(PauliBasis b, int bit) {
  const double a = 1.0 / std::sqrt(2.0);
  const double sign = bit == 0 ? 1.0 : -1.0;
  switch (b) {
    case PauliBasis::X: return {Complex{a, 0.0}, Complex{sign * a, 0.0}};
    case PauliBasis::Y: return {Complex{a, 0.0}, Complex{0.0, sign * a}};
    case PauliBasis::Z: break;
  }
  return bit == 0 ? std::array<Complex, 2>{1.0, 0.0} : std::array<Complex, 2>{0.0, 1.0};
}

int outcome_bit(std::size_t outcome, std::size_t qubit) {
  return static_cast<int>((outcome >> (kTomographyQubits - 1 - qubit)) & 1U);
}

// Single-qubit Pauli by index 0..3 = I, X, Y, Z.
ComplexMatrix pauli(int index) {
  const Complex i{0.0, 1.0};
  switch (index) {
    case 1: return ComplexMatrix{{0, 1}, {1, 0}};
    case 2: return ComplexMatrix{{0, -i}, {i, 0}};
    case 3: return ComplexMatrix{{1, 0}, {0, -1}};
    default: return ComplexMatrix::identity(2);
  }
}

PauliBasis basis_of_pauli(int index) {
  return index == 1 ? PauliBasis::X : index == 2 ? PauliBasis::Y : PauliBasis::Z;
}

SubsystemLayout tomography_layout() {
  return SubsystemLayout::qubits({kAncillaLabel, kCarrierLabel, kControlLabel});
}

MetricStats summarize(std::span<const double> values) {
  MetricStats s;
  const auto n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return s;
}

}  // namespace

std::string MeasurementSetting::label() const {
  std::string out;
  for (PauliBasis b : bases) out.push_back(basis_char(b));
  return out;
}

MeasurementSetting MeasurementSetting::parse(const std::string& label) {
  if (label.size() != kTomographyQubits) {
    throw UsageError("measurement setting must have three letters, got '" + label + "'");
  }
  MeasurementSetting s;
  for (std::size_t q = 0; q < kTomographyQubits; ++q) {
    switch (label[q]) {
      case 'X': s.bases[q] = PauliBasis::X; break;
      case 'Y': s.bases[q] = PauliBasis::Y; break;
      case 'Z': s.bases[q] = PauliBasis::Z; break;
      default: throw UsageError("unknown measurement basis in '" + label + "'");
    }
  }
  return s;
}

std::vector<MeasurementSetting> all_settings() {
  std::vector<MeasurementSetting> out;
  out.reserve(kSettings);
  constexpr PauliBasis kOrder[] = {PauliBasis::X, PauliBasis::Y, PauliBasis::Z};
  for (PauliBasis a : kOrder) {
    for (PauliBasis m : kOrder) {
      for (PauliBasis c : kOrder) out.push_back(MeasurementSetting{{a, m, c}});
    }
  }
  return out;
}

std::uint64_t derive_seed(RandomSeed master, std::uint64_t index) {
  // splitmix64 finalizer applied to a Weyl-sequence step.
  std::uint64_t z = master.value + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Probabilities born_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting) {
  if (rho.dim() != kOutcomes) throw UsageError("born_probabilities: expected a three-qubit state");
  // Columns of `frame` are the joint outcome eigenvectors.
  ComplexMatrix frame(kOutcomes);
  for (std::size_t o = 0; o < kOutcomes; ++o) {
    for (std::size_t row = 0; row < kOutcomes; ++row) {
      Complex amp{1.0, 0.0};
      for (std::size_t q = 0; q < kTomographyQubits; ++q) {
        const auto v = eigenvector(setting.bases[q], outcome_bit(o, q));
        amp *= v[static_cast<std::size_t>(outcome_bit(row, q))];
      }
      frame(row, o) = amp;
    }
  }
  const ComplexMatrix rotated = frame.adjoint() * rho.matrix() * frame;
  Probabilities p{};
  double total = 0.0;
  for (std::size_t o = 0; o < kOutcomes; ++o) {
    p[o] = std::max(rotated(o, o).real(), 0.0);
    total += p[o];
  }
  for (double& v : p) v /= total;
  return p;
}

CountTable sample_counts(const Probabilities& probs, std::uint64_t shots,
                         const MeasurementSetting& setting, std::mt19937_64& engine) {
  double total = 0.0;
  for (double q : probs) {
    if (!std::isfinite(q) || q < -kProbabilityTolerance) {
      throw UsageError("outcome probabilities must be finite and non-negative");
    }
    total += q;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw UsageError("outcome probabilities must sum to 1");
  }
  CountTable table{setting, shots, {}};
  std::uint64_t remaining = shots;
  double mass = 1.0;
  for (std::size_t o = 0; o + 1 < kOutcomes && remaining > 0; ++o) {
    const double q = mass > 0.0 ? std::clamp(probs[o] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::uint64_t> draw(remaining, q);
    table.counts[o] = q >= 1.0 ? remaining : (q <= 0.0 ? 0 : draw(engine));
    remaining -= table.counts[o];
    mass -= probs[o];
  }
  table.counts[kOutcomes - 1] += remaining;
  return table;
}

CountTable sample_counts(const Probabilities& probs, std::uint64_t shots,
                         const MeasurementSetting& setting, RandomSeed seed) {
  std::mt19937_64 engine(seed.value);
  return sample_counts(probs, shots, setting, engine);
}

FrequencyTable to_frequencies(const CountTable& table) {
  if (table.shots == 0) throw UsageError("count table has zero shots");
  FrequencyTable f{table.setting, {}};
  for (std::size_t o = 0; o < kOutcomes; ++o) {
    f.frequencies[o] = static_cast<double>(table.counts[o]) / static_cast<double>(table.shots);
  }
  return f;
}

std::vector<FrequencyTable> exact_frequencies(const DensityMatrix& rho) {
  std::vector<FrequencyTable> out;
  for (const auto& s : all_settings()) out.push_back({s, born_probabilities(rho, s)});
  return out;
}

ComplexMatrix linear_inversion(std::span<const FrequencyTable> tables) {
  const std::vector<MeasurementSetting> settings = all_settings();
  std::array<const FrequencyTable*, kSettings> by_setting{};
  for (const auto& t : tables) {
    const auto it = std::find(settings.begin(), settings.end(), t.setting);
    const auto idx = static_cast<std::size_t>(it - settings.begin());
    if (by_setting[idx] != nullptr) {
      throw UsageError("tomography: setting " + t.setting.label() + " given twice");
    }
    by_setting[idx] = &t;
  }
  for (std::size_t i = 0; i < kSettings; ++i) {
    if (by_setting[i] == nullptr) {
      throw UsageError("tomography: missing setting " + settings[i].label());
    }
  }

  ComplexMatrix estimate(kOutcomes);
  std::array<double, kOutcomes> signs{};
  for (int pa = 0; pa < 4; ++pa) {
    for (int pm = 0; pm < 4; ++pm) {
      for (int pc = 0; pc < 4; ++pc) {
        const std::array<int, 3> string{pa, pm, pc};
        for (std::size_t o = 0; o < kOutcomes; ++o) {
          double sign = 1.0;
          for (std::size_t q = 0; q < kTomographyQubits; ++q) {
            if (string[q] != 0 && outcome_bit(o, q) == 1) sign = -sign;
          }
          signs[o] = sign;
        }
        // Average over every setting that measures the non-identity factors.
        double expectation = 0.0;
        int compatible = 0;
        for (std::size_t i = 0; i < kSettings; ++i) {
          bool match = true;
          for (std::size_t q = 0; q < kTomographyQubits; ++q) {
            if (string[q] != 0 && settings[i].bases[q] != basis_of_pauli(string[q])) {
              match = false;
            }
          }
          if (!match) continue;
          expectation += kernels::dot(by_setting[i]->frequencies, signs);
          ++compatible;
        }
        expectation /= compatible;
        estimate.add_scaled(expectation / static_cast<double>(kOutcomes),
                            kron({pauli(pa), pauli(pm), pauli(pc)}));
      }
    }
  }
  return estimate;
}

DensityMatrix project_to_state(const ComplexMatrix& estimate) {
  ComplexMatrix herm = estimate + estimate.adjoint();
  herm *= 0.5;
  EigenSystem es = eig_hermitian(herm);
  double total = 0.0;
  for (double& v : es.values) {
    v = std::max(v, 0.0);
    total += v;
  }
  if (!(total > 0.0)) throw ValidityError("project_to_state: estimate has no positive part");
  for (double& v : es.values) v /= total;
  ComplexMatrix rho = apply_spectral(es, [](double x) { return x; });
  // Exact Hermitian symmetry after rounding.
  ComplexMatrix sym = rho + rho.adjoint();
  sym *= 0.5;
  if (sym.dim() == kOutcomes) return DensityMatrix(std::move(sym), tomography_layout());
  return DensityMatrix(std::move(sym));
}

DensityMatrix tomo_reconstruct(std::span<const FrequencyTable> tables) {
  return project_to_state(linear_inversion(tables));
}

DensityMatrix tomo_reconstruct(std::span<const CountTable> tables) {
  std::vector<FrequencyTable> freqs;
  freqs.reserve(tables.size());
  for (const auto& t : tables) freqs.push_back(to_frequencies(t));
  return tomo_reconstruct(freqs);
}

MonteCarloMetrics monte_carlo_metrics(const DensityMatrix& rho_true,
                                      std::optional<std::uint64_t> shots, std::size_t trials,
                                      RandomSeed seed,
                                      std::vector<std::vector<CountTable>>* tables_out) {
  if (trials < 2) throw UsageError("monte_carlo_metrics: need at least two trials");
  if (shots && *shots == 0) throw UsageError("monte_carlo_metrics: shots must be positive");
  const DensityMatrix truth = rho_true.relabeled(tomography_layout());
  const std::vector<FrequencyTable> exact = exact_frequencies(truth);
  const Basis control_basis = computational_basis(2);

  struct Trial {
    double information = 0.0;
    double coherence = 0.0;
    double fidelity = 0.0;
    double root_fidelity = 0.0;
    std::vector<CountTable> tables;
  };

  std::vector<Trial> results = parallel_map(trials, [&](std::size_t k) {
    Trial trial;
    std::optional<DensityMatrix> rec;
    if (shots) {
      std::mt19937_64 engine(derive_seed(seed, k));
      trial.tables.reserve(kSettings);
      for (const auto& f : exact) {
        trial.tables.push_back(sample_counts(f.frequencies, *shots, f.setting, engine));
      }
      rec.emplace(tomo_reconstruct(std::span<const CountTable>(trial.tables)));
    } else {
      rec.emplace(tomo_reconstruct(std::span<const FrequencyTable>(exact)));
    }
    trial.information = mutual_information(*rec, protocol_bipartition());
    trial.coherence = free_coherence(partial_trace(*rec, {kControlLabel}), control_basis);
    trial.root_fidelity = root_fidelity(truth, *rec);
    trial.fidelity = trial.root_fidelity * trial.root_fidelity;
    return trial;
  });

  std::vector<double> info, coh, fid, root;
  for (auto& r : results) {
    info.push_back(r.information);
    coh.push_back(r.coherence);
    fid.push_back(r.fidelity);
    root.push_back(r.root_fidelity);
  }
  if (tables_out) {
    tables_out->clear();
    if (shots) {
      for (auto& r : results) tables_out->push_back(std::move(r.tables));
    }
  }
  MonteCarloMetrics m;
  m.information = summarize(info);
  m.coherence = summarize(coh);
  m.fidelity = summarize(fid);
  m.root_fidelity = summarize(root);
  m.trials = trials;
  m.shots = shots;
  return m;
}

}  // namespace qswitch
