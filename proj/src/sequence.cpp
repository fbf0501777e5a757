#include "stackgame/sequence.hpp"

#include <sstream>

#include "stackgame/errors.hpp"

namespace stackgame {

namespace {

long long checked_add(long long a, long long b) {
  long long out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorKind::Overflow, "S_k sum exceeds 64-bit range");
  }
  return out;
}

long long checked_mul(long long a, long long b) {
  long long out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::Overflow, "S_k product exceeds 64-bit range");
  }
  return out;
}

SMeasures measures_of_counts(const std::vector<int>& counts) {
  std::vector<long long> s(counts.size(), 0);
  // Append one period at a time; process k descending so S_{k-1} is the
  // previous sequence's value when S_k is updated.
  int appended = 0;
  for (int n_t : counts) {
    ++appended;
    for (int k = appended; k >= 1; --k) {
      const long long below = (k == 1) ? 1 : s[static_cast<std::size_t>(k) - 2];
      s[static_cast<std::size_t>(k) - 1] =
          checked_add(s[static_cast<std::size_t>(k) - 1], checked_mul(n_t, below));
    }
  }
  return SMeasures(std::move(s));
}

}  // namespace

PeriodSequence::PeriodSequence(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) {
    throw Error(ErrorKind::BadInput, "period sequence must have at least one period");
  }
  for (int n_t : counts_) {
    if (n_t < 1) {
      throw Error(ErrorKind::BadInput, "every period needs at least one firm");
    }
  }
}

PeriodSequence PeriodSequence::parse(const std::string& text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char ch : text) {
    if (ch == '[' || ch == ']' || ch == ' ' || ch == '\t') continue;
    cleaned.push_back(ch);
  }
  std::vector<int> counts;
  std::istringstream in(cleaned);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) throw Error(ErrorKind::BadInput, "empty entry in period sequence");
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadInput, "period sequence entry is not an integer: " + token);
    }
    if (used != token.size()) {
      throw Error(ErrorKind::BadInput, "period sequence entry is not an integer: " + token);
    }
    counts.push_back(value);
  }
  return PeriodSequence(std::move(counts));
}

int PeriodSequence::count(int t) const {
  if (t < 1 || t > periods()) throw Error(ErrorKind::BadPeriod, "period index out of range");
  return counts_[static_cast<std::size_t>(t) - 1];
}

long long PeriodSequence::total_firms() const noexcept {
  long long total = 0;
  for (int n_t : counts_) total += n_t;
  return total;
}

std::vector<int> PeriodSequence::suffix_counts(int t) const {
  if (t < 1 || t > periods()) throw Error(ErrorKind::BadPeriod, "period index out of range");
  return std::vector<int>(counts_.begin() + t, counts_.end());
}

PeriodSequence PeriodSequence::extended(const std::vector<int>& extra) const {
  std::vector<int> counts = counts_;
  counts.insert(counts.end(), extra.begin(), extra.end());
  return PeriodSequence(std::move(counts));
}

std::string PeriodSequence::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i > 0) out << ',';
    out << counts_[i];
  }
  return out.str();
}

long long SMeasures::at(int k) const {
  if (k < 0) throw Error(ErrorKind::BadInput, "S_k index must be >= 0");
  if (k == 0) return 1;
  if (k > size()) return 0;
  return values_[static_cast<std::size_t>(k) - 1];
}

SMeasures s_measures(const PeriodSequence& n) { return measures_of_counts(n.counts()); }

SMeasures suffix_measures(const PeriodSequence& n, int t) {
  return measures_of_counts(n.suffix_counts(t));
}

bool product_identity_check(const PeriodSequence& n) {
  const SMeasures s = s_measures(n);
  long long lhs = 1;
  for (long long v : s.values()) lhs = checked_add(lhs, v);
  long long rhs = 1;
  for (int n_t : n.counts()) rhs = checked_mul(rhs, 1 + static_cast<long long>(n_t));
  return lhs == rhs;
}

}  // namespace stackgame
