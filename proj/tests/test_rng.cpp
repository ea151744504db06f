#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "coalbranch/parallel.hpp"
#include "coalbranch/rng.hpp"

using namespace coalbranch;

TEST_CASE("splitmix64 reference sequence") {
  // First outputs for state 0, per the reference implementation.
  std::uint64_t s = 0;
  CHECK(splitmix64(s) == 0xE220A8397B1DCDAFull);
  CHECK(splitmix64(s) == 0x6E789E6AA1B965F4ull);
  CHECK(splitmix64(s) == 0x06C45D188009454Full);
}

TEST_CASE("derive_stream matches iterated splitmix64") {
  const std::uint64_t seed = 123456789;
  std::uint64_t s = seed;
  for (std::uint64_t k = 0; k < 5; ++k) {
    const std::uint64_t expected = splitmix64(s);
    CHECK(derive_stream(seed, k) == expected);
  }
  CHECK(derive_stream(seed, 0) != derive_stream(seed + 1, 0));
}

TEST_CASE("uniform range and determinism") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform());
  }
}

TEST_CASE("normal moments") {
  Rng rng(7);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(var - 1.0) < 0.02);
}

TEST_CASE("exponential mean") {
  Rng rng(8);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.exponential(2.0);
  CHECK(std::fabs(sum / n - 0.5) < 0.01);
}

TEST_CASE("poisson small and large mean moments") {
  for (double mean : {0.3, 4.0, 15.0, 123.4}) {
    Rng rng(100 + static_cast<std::uint64_t>(mean * 10));
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = static_cast<double>(rng.poisson(mean));
      sum += x;
      sumsq += x * x;
    }
    const double m = sum / n;
    const double v = sumsq / n - m * m;
    const double se = std::sqrt(mean / n);
    CHECK(std::fabs(m - mean) < 5.0 * se);
    CHECK(std::fabs(v - mean) < 0.05 * mean);
  }
  Rng rng(1);
  CHECK(rng.poisson(0.0) == 0);
}

TEST_CASE("poisson pmf chi-square at the rejection regime") {
  // Exactness check of the large-mean sampler against the true pmf.
  const double mean = 15.0;
  Rng rng(2024);
  const int n = 200000;
  const int kmax = 40;
  std::vector<int> counts(kmax + 2, 0);
  for (int i = 0; i < n; ++i) {
    const long long k = rng.poisson(mean);
    counts[static_cast<std::size_t>(std::min<long long>(k, kmax + 1))]++;
  }
  double chi2 = 0.0;
  int dof = 0;
  double tail = 1.0;
  for (int k = 0; k <= kmax; ++k) {
    const double pk = std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
    tail -= pk;
    const double expected = n * pk;
    if (expected < 10.0) continue;
    const double diff = counts[static_cast<std::size_t>(k)] - expected;
    chi2 += diff * diff / expected;
    ++dof;
  }
  // ~30 live bins; 99.9% quantile of chi2(30) is ~59.7, use a safe bound.
  CHECK(chi2 < 80.0);
  CHECK(tail * n < 10.0);  // truncation was immaterial
  CHECK(dof > 20);
}

TEST_CASE("pairwise sum equals plain sum on benign data") {
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back(std::sin(i));
  double plain = 0.0;
  for (double x : xs) plain += x;
  CHECK(pairwise_sum(xs) == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("mean_and_stderr on a known sample") {
  std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const auto ms = mean_and_stderr(xs);
  CHECK(ms.mean == doctest::Approx(2.5));
  // sample variance 5/3, stderr sqrt(5/12)
  CHECK(ms.stderr_of_mean == doctest::Approx(std::sqrt(5.0 / 12.0)));
}
