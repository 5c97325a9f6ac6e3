#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "mrsde/rng.hpp"

using mrsde::Rng;

TEST_CASE("identical seeds produce identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  Rng c(42), d(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(c.normal() == d.normal());
    CHECK(c.uniform() == d.uniform());
  }
}

TEST_CASE("different seeds and streams diverge") {
  Rng a(1), b(2);
  Rng s0(7, 0), s1(7, 1);
  int same_ab = 0, same_s = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u64() == b.next_u64()) ++same_ab;
    if (s0.next_u64() == s1.next_u64()) ++same_s;
  }
  CHECK(same_ab == 0);
  CHECK(same_s == 0);
}

TEST_CASE("uniform stays in [0,1) with sane moments") {
  Rng rng(3);
  double sum = 0.0, sumsq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sumsq += u * u;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
  CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("normal has standard moments") {
  Rng rng(4);
  double sum = 0.0, sumsq = 0.0;
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::fabs(mean) < 0.01);            // ~6 sigma of the MC estimate
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("uniform_int covers its inclusive range without bias") {
  Rng rng(5);
  std::vector<int> counts(6, 0);
  const int n = 60000;
  for (int i = 0; i < n; ++i) {
    const auto v = rng.uniform_int(10, 15);
    REQUIRE(v >= 10);
    REQUIRE(v <= 15);
    counts[static_cast<std::size_t>(v - 10)] += 1;
  }
  for (int c : counts) {
    CHECK(c > n / 6 - 500);
    CHECK(c < n / 6 + 500);
  }
}

TEST_CASE("shuffle is a permutation and deterministic per seed") {
  std::vector<int> items{0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<int> copy = items;
  Rng a(9), b(9);
  a.shuffle(items);
  b.shuffle(copy);
  CHECK(items == copy);
  std::sort(items.begin(), items.end());
  CHECK(items == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
}
