#include <random>
#include <vector>

#include "doctest.h"
#include "stackgame/errors.hpp"
#include "stackgame/sequence.hpp"

using stackgame::Error;
using stackgame::ErrorKind;
using stackgame::PeriodSequence;
using stackgame::SMeasures;
using stackgame::s_measures;
using stackgame::suffix_measures;

namespace {

// Independent oracle: S_k is the elementary symmetric polynomial e_k of the
// counts, i.e. a sum over all k-subsets of periods of the product of their
// counts. Enumerate subsets directly.
long long subset_sum(const std::vector<int>& counts, int k) {
  const int T = static_cast<int>(counts.size());
  long long total = 0;
  for (unsigned mask = 0; mask < (1u << T); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    long long product = 1;
    for (int t = 0; t < T; ++t) {
      if (mask & (1u << t)) product *= counts[static_cast<std::size_t>(t)];
    }
    total += product;
  }
  return total;
}

}  // namespace

TEST_CASE("sequence validation and parsing") {
  CHECK_THROWS_AS(PeriodSequence({}), Error);
  CHECK_THROWS_AS(PeriodSequence({1, 0}), Error);
  CHECK_THROWS_AS(PeriodSequence({-2}), Error);

  const PeriodSequence n = PeriodSequence::parse(" [1, 2,3] ");
  CHECK(n.counts() == std::vector<int>{1, 2, 3});
  CHECK(n.periods() == 3);
  CHECK(n.count(2) == 2);
  CHECK(n.total_firms() == 6);
  CHECK_THROWS_AS((void)n.count(0), Error);
  CHECK_THROWS_AS((void)n.count(4), Error);
  CHECK_THROWS_AS((void)PeriodSequence::parse("1,,2"), Error);
  CHECK_THROWS_AS((void)PeriodSequence::parse("abc"), Error);
}

TEST_CASE("suffix and extension helpers") {
  const PeriodSequence n({1, 2, 3});
  CHECK(n.suffix_counts(1) == std::vector<int>{2, 3});
  CHECK(n.suffix_counts(3) == std::vector<int>{});
  CHECK_THROWS_AS((void)n.suffix_counts(0), Error);

  const PeriodSequence extended = n.extended({4});
  CHECK(extended.counts() == std::vector<int>{1, 2, 3, 4});
  CHECK(n.extended({}).counts() == n.counts());
  CHECK_THROWS_AS((void)n.extended({0}), Error);
}

TEST_CASE("observation-path counts match exhaustive subset enumeration") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<int> length(1, 8);
  std::uniform_int_distribution<int> count(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> counts(static_cast<std::size_t>(length(rng)));
    for (int& v : counts) v = count(rng);
    const PeriodSequence n(counts);
    const SMeasures s = s_measures(n);
    CHECK(s.size() == n.periods());
    CHECK(s.at(0) == 1);
    for (int k = 1; k <= n.periods(); ++k) {
      INFO("k = ", k);
      CHECK(s.at(k) == subset_sum(counts, k));
    }
    CHECK(s.at(n.periods() + 1) == 0);
  }
}

TEST_CASE("sum of path counts equals the product of (1 + n_t), exactly") {
  std::mt19937_64 rng(99173);
  std::uniform_int_distribution<int> length(1, 10);
  std::uniform_int_distribution<int> count(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> counts(static_cast<std::size_t>(length(rng)));
    for (int& v : counts) v = count(rng);
    const PeriodSequence n(counts);
    const SMeasures s = s_measures(n);
    long long product = 1;
    for (int v : counts) product *= 1 + v;
    long long sum = 1;  // S_0
    for (int k = 1; k <= n.periods(); ++k) sum += s.at(k);
    CHECK(sum == product);
  }
}

TEST_CASE("suffix measures equal the measures of the suffix game") {
  const PeriodSequence n({2, 1, 3, 2});
  for (int t = 1; t <= 3; ++t) {
    const SMeasures from_suffix = suffix_measures(n, t);
    const SMeasures direct = s_measures(PeriodSequence(n.suffix_counts(t)));
    REQUIRE(from_suffix.size() == direct.size());
    for (int k = 0; k <= direct.size(); ++k) CHECK(from_suffix.at(k) == direct.at(k));
  }
  const SMeasures empty = suffix_measures(n, 4);
  CHECK(empty.size() == 0);
  CHECK(empty.at(0) == 1);
  CHECK(empty.at(1) == 0);
  CHECK_THROWS_AS((void)suffix_measures(n, 5), Error);
}

TEST_CASE("path counting refuses to overflow silently") {
  std::vector<int> huge(40, 1000000);
  try {
    (void)s_measures(PeriodSequence(huge));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Overflow);
  }
}
