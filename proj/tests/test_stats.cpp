#include <doctest/doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "core/error.hpp"
#include "core/stats.hpp"
#include "support/oracles.hpp"

using namespace codeocr;

TEST_CASE("all differences one-sided gives the smallest p") {
  // 8 positive differences, no ties in magnitude: statistic 0, and only the
  // all-positive and all-negative assignments reach it, so p = 2 * 1/256.
  std::vector<double> a{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<double> b{0, 0, 0, 0, 0, 0, 0, 0};
  const WilcoxonResult r = wilcoxon_signed_rank(a, b);
  CHECK(r.exact);
  CHECK(r.n_used == 8);
  CHECK(r.statistic == doctest::Approx(0.0));
  CHECK(r.p_value == doctest::Approx(2.0 / 256.0).epsilon(1e-12));
}

TEST_CASE("one dissenting small difference") {
  // Differences +1 -2 +3 +4 +5: rank of the negative is 2, so W- = 2.
  // Assignments with min-sum <= 2: sums 0,1,2 achievable by {} {1} {2} on
  // either side -> p = 2 * 3/32.
  std::vector<double> a{2, 0, 4, 5, 6};
  std::vector<double> b{1, 2, 1, 1, 1};
  const WilcoxonResult r = wilcoxon_signed_rank(a, b);
  CHECK(r.exact);
  CHECK(r.n_used == 5);
  CHECK(r.statistic == doctest::Approx(2.0));
  CHECK(r.p_value == doctest::Approx(2.0 * 3.0 / 32.0).epsilon(1e-12));
}

TEST_CASE("zero differences are dropped before ranking") {
  std::vector<double> a{3, 3, 1, 2, 3, 4, 5};
  std::vector<double> b{3, 3, 0, 0, 0, 0, 0};
  const WilcoxonResult r = wilcoxon_signed_rank(a, b);
  CHECK(r.n_used == 5);
  CHECK(r.statistic == doctest::Approx(0.0));
  CHECK(r.p_value == doctest::Approx(2.0 / 32.0).epsilon(1e-12));
}

TEST_CASE("tied magnitudes receive midranks") {
  // Differences +1 +1 -1 +2 +3: the three unit magnitudes share midrank 2.
  std::vector<double> a{1, 1, 0, 2, 3};
  std::vector<double> b{0, 0, 1, 0, 0};
  const WilcoxonResult r = wilcoxon_signed_rank(a, b);
  CHECK(r.statistic == doctest::Approx(2.0));
  const auto oracle = testsupport::oracle_wilcoxon(a, b);
  REQUIRE(oracle.has_value());
  CHECK(r.statistic == doctest::Approx(oracle->statistic).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(oracle->p_value).epsilon(1e-12));
}

TEST_CASE("exact branch matches enumeration oracle") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> n_die(5, 10);
  std::uniform_int_distribution<int> value_die(0, 6);
  int compared = 0;
  for (int round = 0; round < 100; ++round) {
    const int n = n_die(rng);
    std::vector<double> a(static_cast<std::size_t>(n));
    std::vector<double> b(static_cast<std::size_t>(n));
    // Quantized values force frequent ties and zero differences.
    for (int i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(i)] = 0.25 * value_die(rng);
      b[static_cast<std::size_t>(i)] = 0.25 * value_die(rng);
    }
    const auto oracle = testsupport::oracle_wilcoxon(a, b);
    if (!oracle.has_value()) continue;  // too few nonzero differences
    CAPTURE(round);
    const WilcoxonResult r = wilcoxon_signed_rank(a, b);
    CHECK(r.exact);
    CHECK(r.n_used == oracle->n_used);
    CHECK(r.statistic == doctest::Approx(oracle->statistic).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(oracle->p_value).epsilon(1e-12));
    ++compared;
  }
  CHECK(compared > 50);
}

TEST_CASE("identical samples are degenerate") {
  std::vector<double> a{1, 2, 3, 4, 5, 6};
  CHECK_THROWS_AS(wilcoxon_signed_rank(a, a), Error);
}

TEST_CASE("too few usable pairs is a precondition error") {
  std::vector<double> a{1, 2, 3, 4};
  std::vector<double> b{0, 0, 0, 0};
  CHECK_THROWS_AS(wilcoxon_signed_rank(a, b), Error);

  // Length 6 but only 4 nonzero differences.
  std::vector<double> c{1, 2, 3, 4, 5, 6};
  std::vector<double> d{1, 2, 0, 0, 0, 0};
  CHECK_THROWS_AS(wilcoxon_signed_rank(c, d), Error);

  std::vector<double> e{1, 2, 3};
  CHECK_THROWS_AS(wilcoxon_signed_rank(e, d), Error);  // length mismatch
}

TEST_CASE("large n switches to the normal approximation") {
  std::mt19937_64 rng(5150);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> a, b;
  for (int i = 0; i < 40; ++i) {
    const double base = noise(rng);
    a.push_back(base + 0.8 + noise(rng) * 0.2);
    b.push_back(base);
  }
  const WilcoxonResult r = wilcoxon_signed_rank(a, b);
  CHECK_FALSE(r.exact);
  CHECK(r.n_used == 40);
  CHECK(r.p_value > 0.0);
  CHECK(r.p_value < 0.01);  // strong consistent shift must be significant
}

TEST_CASE("normal approximation is continuous with the exact region") {
  // Same data evaluated both ways should land close; build n=25 (exact) and
  // n=26 (approximate) variants of a similar shifted sample.
  std::mt19937_64 rng(99);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> a, b;
  for (int i = 0; i < 26; ++i) {
    const double base = noise(rng);
    a.push_back(base + 0.5 + noise(rng) * 0.5);
    b.push_back(base);
  }
  std::vector<double> a25(a.begin(), a.end() - 1);
  std::vector<double> b25(b.begin(), b.end() - 1);
  const WilcoxonResult exact = wilcoxon_signed_rank(a25, b25);
  const WilcoxonResult approx = wilcoxon_signed_rank(a, b);
  CHECK(exact.exact);
  CHECK_FALSE(approx.exact);
  // Both see the same strong signal; agreement within an order of magnitude.
  CHECK(std::abs(std::log10(exact.p_value) - std::log10(approx.p_value)) < 1.0);
}

TEST_CASE("summarize_runs fixtures") {
  std::vector<double> one{3.5};
  const RunSummary s1 = summarize_runs(one);
  CHECK(s1.n == 1);
  CHECK(s1.mean == doctest::Approx(3.5));
  CHECK(s1.stddev == doctest::Approx(0.0));

  std::vector<double> v{2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
  const RunSummary s = summarize_runs(v);
  CHECK(s.n == 8);
  CHECK(s.mean == doctest::Approx(5.0));
  // Sample variance: sum of squared deviations 32 over n-1 = 7.
  CHECK(s.stddev == doctest::Approx(std::sqrt(32.0 / 7.0)).epsilon(1e-12));

  CHECK_THROWS_AS(summarize_runs(std::vector<double>{}), Error);
}

TEST_CASE("summarize_runs is order-independent") {
  std::mt19937_64 rng(97);
  std::vector<double> values(9);
  for (double& v : values) v = 0.125 * static_cast<double>(rng() % 400);
  const RunSummary base = summarize_runs(values);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(values.begin(), values.end(), rng);
    const RunSummary s = summarize_runs(values);
    CHECK(s.mean == doctest::Approx(base.mean).epsilon(1e-12));
    CHECK(s.stddev == doctest::Approx(base.stddev).epsilon(1e-12));
  }
}
