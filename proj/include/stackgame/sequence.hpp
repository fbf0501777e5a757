#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stackgame {

/// Arrival structure n = (n_1, ..., n_T): n_t firms move simultaneously in
/// period t and observe the cumulative quantity of all earlier periods.
class PeriodSequence {
 public:
  /// Validates: nonempty, every count >= 1.
  explicit PeriodSequence(std::vector<int> counts);

  /// Parses "1,2,3" (also accepts surrounding '[' ']' and whitespace).
  static PeriodSequence parse(const std::string& text);

  [[nodiscard]] int periods() const noexcept { return static_cast<int>(counts_.size()); }
  [[nodiscard]] int count(int t) const;  // 1-based period index
  [[nodiscard]] const std::vector<int>& counts() const noexcept { return counts_; }
  [[nodiscard]] long long total_firms() const noexcept;

  /// Counts of periods strictly after t (1 <= t <= T); empty for t = T.
  [[nodiscard]] std::vector<int> suffix_counts(int t) const;
  /// New sequence with `extra` periods appended (each entry >= 1).
  [[nodiscard]] PeriodSequence extended(const std::vector<int>& extra) const;

  [[nodiscard]] std::string to_string() const;

  bool operator==(const PeriodSequence& other) const = default;

 private:
  std::vector<int> counts_;
};

/// Informativeness measures: S_k(n) counts the level-k observation paths
/// (chains of k leader-to-follower links across distinct periods), with the
/// conventions S_0 = 1 and S_k = 0 for k > T.
class SMeasures {
 public:
  explicit SMeasures(std::vector<long long> values) : values_(std::move(values)) {}

  /// S_k with the boundary conventions; k >= 0.
  [[nodiscard]] long long at(int k) const;
  [[nodiscard]] const std::vector<long long>& values() const noexcept { return values_; }
  [[nodiscard]] int size() const noexcept { return static_cast<int>(values_.size()); }

 private:
  std::vector<long long> values_;  // S_1 .. S_T
};

/// S_1..S_T built left to right via S_k(n + n_t) = S_k(n) + n_t * S_{k-1}(n).
/// Throws Overflow instead of wrapping.
[[nodiscard]] SMeasures s_measures(const PeriodSequence& n);

/// Measures of the suffix game n^t = (n_{t+1}, ..., n_T); empty suffix gives
/// an empty (all-zero) list. Throws BadPeriod unless 1 <= t <= T.
[[nodiscard]] SMeasures suffix_measures(const PeriodSequence& n, int t);

/// Exact integer tripwire: 1 + sum_k S_k(n) == prod_t (1 + n_t).
[[nodiscard]] bool product_identity_check(const PeriodSequence& n);

}  // namespace stackgame
