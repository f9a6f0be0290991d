#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qswitch/emulator.hpp"
#include "qswitch/errors.hpp"
#include "qswitch/info_measures.hpp"

using namespace qswitch;

namespace {

const SubsystemLayout kAmc = SubsystemLayout::qubits({"A", "M", "C"});

// Eigenvector of the single-qubit Pauli `b` for outcome bit `o` (0 -> +1).
std::array<Complex, 2> pauli_eigenvector(PauliBasis b, unsigned o) {
  const double r = 1.0 / std::sqrt(2.0);
  const double sign = o == 0 ? 1.0 : -1.0;
  switch (b) {
    case PauliBasis::X: return {Complex{r, 0}, Complex{sign * r, 0}};
    case PauliBasis::Y: return {Complex{r, 0}, Complex{0, sign * r}};
    case PauliBasis::Z: break;
  }
  return o == 0 ? std::array<Complex, 2>{1.0, 0.0} : std::array<Complex, 2>{0.0, 1.0};
}

double oracle_probability(const ComplexMatrix& rho, const MeasurementSetting& setting, unsigned outcome) {
  std::vector<Complex> v(8, Complex{1.0, 0.0});
  for (std::size_t idx = 0; idx < 8; ++idx) {
    for (std::size_t q = 0; q < 3; ++q) {
      const unsigned bit = (idx >> (2 - q)) & 1U;
      const unsigned obit = (outcome >> (2 - q)) & 1U;
      v[idx] *= pauli_eigenvector(setting.bases[q], obit)[bit];
    }
  }
  Complex p{};
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) p += std::conj(v[r]) * rho(r, c) * v[c];
  return p.real();
}

DensityMatrix basis_state(std::size_t k) {
  ComplexMatrix m(8);
  m(k, k) = 1.0;
  return DensityMatrix(m, kAmc);
}

std::vector<FrequencyTable> all_zero_outcomes() {
  std::vector<FrequencyTable> tables;
  for (const auto& s : all_settings()) {
    FrequencyTable t{s, {}};
    t.frequencies[0] = 1.0;
    tables.push_back(t);
  }
  return tables;
}

double min_eigenvalue(const ComplexMatrix& m) { return eig_hermitian(m).values.front(); }

}  // namespace

TEST_CASE("measurement settings") {
  const auto settings = all_settings();
  REQUIRE(settings.size() == kSettings);
  CHECK(settings.front().label() == "XXX");
  CHECK(settings[1].label() == "XXY");
  CHECK(settings[9].label() == "YXX");
  CHECK(settings.back().label() == "ZZZ");
  std::set<std::string> labels;
  for (const auto& s : settings) {
    labels.insert(s.label());
    CHECK(MeasurementSetting::parse(s.label()) == s);
  }
  CHECK(labels.size() == kSettings);
  CHECK_THROWS_AS(MeasurementSetting::parse("XZ"), UsageError);
  CHECK_THROWS_AS(MeasurementSetting::parse("XQZ"), UsageError);
}

TEST_CASE("Born probabilities") {
  SUBCASE("examples") {
    const auto zzz = MeasurementSetting::parse("ZZZ");
    const auto p0 = born_probabilities(basis_state(0), zzz);
    CHECK(p0[0] == doctest::Approx(1.0));
    const auto p5 = born_probabilities(basis_state(5), zzz);
    CHECK(p5[5] == doctest::Approx(1.0));
    const auto xzz = born_probabilities(basis_state(0), MeasurementSetting::parse("XZZ"));
    CHECK(xzz[0] == doctest::Approx(0.5));
    CHECK(xzz[4] == doctest::Approx(0.5));
    const DensityMatrix mixed(ComplexMatrix::diagonal({0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125}), kAmc);
    for (double q : born_probabilities(mixed, MeasurementSetting::parse("XYZ"))) CHECK(q == doctest::Approx(0.125));
  }

  SUBCASE("match product-eigenvector projections") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho(oracle::random_density(8, rng), kAmc);
      for (const auto& s : all_settings()) {
        const auto probs = born_probabilities(rho, s);
        CHECK(std::accumulate(probs.begin(), probs.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        for (unsigned o = 0; o < 8; ++o) CHECK(std::abs(probs[o] - oracle_probability(rho.matrix(), s, o)) < 1e-12);
      }
    }
  }

  CHECK_THROWS_AS(born_probabilities(DensityMatrix(ComplexMatrix::diagonal({0.5, 0.5})), all_settings()[0]),
                  UsageError);
}

TEST_CASE("sampling") {
  const auto setting = all_settings()[4];
  Probabilities uniform;
  uniform.fill(0.125);

  SUBCASE("deterministic per seed") {
    const auto a = sample_counts(uniform, 1000, setting, RandomSeed{42});
    const auto b = sample_counts(uniform, 1000, setting, RandomSeed{42});
    const auto c = sample_counts(uniform, 1000, setting, RandomSeed{43});
    CHECK(a.counts == b.counts);
    CHECK(a.counts != c.counts);
    CHECK(std::accumulate(a.counts.begin(), a.counts.end(), std::uint64_t{0}) == 1000);
    CHECK(a.setting == setting);
  }

  SUBCASE("uniform counts sit within five standard deviations") {
    const std::uint64_t n = 1'000'000;
    const double sigma = std::sqrt(n * 0.125 * 0.875);
    const auto t = sample_counts(uniform, n, setting, RandomSeed{7});
    for (auto k : t.counts) CHECK(std::abs(static_cast<double>(k) - 125000.0) < 5 * sigma);
  }

  SUBCASE("certain outcome") {
    Probabilities sure{};
    sure[6] = 1.0;
    CHECK(sample_counts(sure, 500, setting, RandomSeed{1}).counts[6] == 500);
  }

  SUBCASE("invalid probabilities") {
    Probabilities bad{};
    bad[0] = 0.7;
    CHECK_THROWS_AS(sample_counts(bad, 10, setting, RandomSeed{1}), UsageError);
    bad[1] = -0.1;
    bad[2] = 0.4;
    CHECK_THROWS_AS(sample_counts(bad, 10, setting, RandomSeed{1}), UsageError);
  }

  SUBCASE("frequencies") {
    const auto t = sample_counts(uniform, 800, setting, RandomSeed{9});
    const auto f = to_frequencies(t);
    for (std::size_t o = 0; o < 8; ++o) CHECK(f.frequencies[o] == doctest::Approx(t.counts[o] / 800.0));
  }

  SUBCASE("derived seeds") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(RandomSeed{5}, i));
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(RandomSeed{5}, 3) == derive_seed(RandomSeed{5}, 3));
    CHECK(derive_seed(RandomSeed{5}, 3) != derive_seed(RandomSeed{6}, 3));
  }
}

TEST_CASE("tomographic reconstruction") {
  SUBCASE("noiseless round trip") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 25; ++trial) {
      const DensityMatrix rho(oracle::random_density(8, rng), kAmc);
      const DensityMatrix rec = tomo_reconstruct(exact_frequencies(rho));
      CHECK(max_abs_diff(rec.matrix(), rho.matrix()) <= 1e-9);
      CHECK(rec.layout() == kAmc);
    }
    const DensityMatrix pure = protocol_state(Temperature::zero(), ThermalizationStrength(1.0),
                                              MixingWeight(0.5), ControlState::on());
    CHECK(max_abs_diff(tomo_reconstruct(exact_frequencies(pure)).matrix(), pure.matrix()) <= 1e-9);
  }

  SUBCASE("linear inversion is exact before projection") {
    std::mt19937_64 rng(56);
    const ComplexMatrix rho = oracle::random_density(8, rng);
    CHECK(max_abs_diff(linear_inversion(exact_frequencies(DensityMatrix(rho, kAmc))), rho) <= 1e-12);
  }

  SUBCASE("unphysical estimates are projected") {
    const ComplexMatrix est = linear_inversion(all_zero_outcomes());
    CHECK(min_eigenvalue(est) < -0.1);
    const DensityMatrix rec = project_to_state(est);
    CHECK(min_eigenvalue(rec.matrix()) >= -1e-12);
    CHECK(rec.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    const DensityMatrix again = project_to_state(rec.matrix());
    CHECK(max_abs_diff(again.matrix(), rec.matrix()) < 1e-12);
  }

  SUBCASE("projection is idempotent on random Hermitian input") {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 20; ++trial) {
      ComplexMatrix h = oracle::random_hermitian(8, rng);
      h += ComplexMatrix::identity(8);
      const DensityMatrix once = project_to_state(h);
      CHECK(max_abs_diff(project_to_state(once.matrix()).matrix(), once.matrix()) < 1e-12);
    }
  }

  SUBCASE("missing or duplicate settings") {
    auto tables = all_zero_outcomes();
    tables.pop_back();
    CHECK_THROWS_AS(linear_inversion(tables), UsageError);
    tables.push_back(tables.front());
    CHECK_THROWS_AS(linear_inversion(tables), UsageError);
  }
}

TEST_CASE("Monte Carlo metrics") {
  const DensityMatrix truth = protocol_state(Temperature::infinite(), ThermalizationStrength(0.5),
                                             MixingWeight(0.5), ControlState::on());

  SUBCASE("exact mode has no spread") {
    const auto m = monte_carlo_metrics(truth, std::nullopt, 3, RandomSeed{1});
    CHECK(m.fidelity.mean == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m.fidelity.stddev < 1e-12);
    CHECK(m.information.stddev < 1e-12);
    CHECK(m.information.mean == doctest::Approx(mutual_information(truth, protocol_bipartition())).epsilon(1e-9));
    CHECK_FALSE(m.shots.has_value());
  }

  SUBCASE("error bars shrink like one over root N") {
    const auto coarse = monte_carlo_metrics(truth, 10'000, 100, RandomSeed{3});
    const auto fine = monte_carlo_metrics(truth, 1'000'000, 100, RandomSeed{3});
    for (auto pick : {&MonteCarloMetrics::information, &MonteCarloMetrics::coherence}) {
      const double ratio = (coarse.*pick).stddev / (fine.*pick).stddev;
      CHECK(ratio >= 5.0);
      CHECK(ratio <= 20.0);
    }
    const auto mid = monte_carlo_metrics(truth, 40'000, 100, RandomSeed{3});
    CHECK(mid.information.stddev < coarse.information.stddev);
    CHECK(fine.fidelity.mean >= 0.999);
    CHECK(fine.root_fidelity.mean >= fine.fidelity.mean);
  }

  SUBCASE("seeded runs repeat and keep their count tables") {
    std::vector<std::vector<CountTable>> tables_a, tables_b;
    const auto a = monte_carlo_metrics(truth, 1000, 4, RandomSeed{11}, &tables_a);
    const auto b = monte_carlo_metrics(truth, 1000, 4, RandomSeed{11}, &tables_b);
    CHECK(a.information.mean == b.information.mean);
    CHECK(a.fidelity.stddev == b.fidelity.stddev);
    REQUIRE(tables_a.size() == 4);
    CHECK(tables_a[2].size() == kSettings);
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t s = 0; s < kSettings; ++s) CHECK(tables_a[k][s].counts == tables_b[k][s].counts);
    CHECK(tables_a[0][0].counts != tables_a[1][0].counts);
  }

  CHECK_THROWS_AS(monte_carlo_metrics(truth, 1000, 1, RandomSeed{1}), UsageError);
  CHECK_THROWS_AS(monte_carlo_metrics(DensityMatrix(ComplexMatrix::diagonal({0.5, 0.5})), 1000, 3, RandomSeed{1}),
                  UsageError);
}
