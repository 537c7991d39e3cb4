#pragma once

// Brooks counting quasimorphisms on F(a, b).
//
// For a nonempty reduced pattern w, h_w(g) counts the (overlapping)
// occurrences of w in the reduced word g minus those of w^-1. Its
// homogenization lim h_w(g^k)/k is computed exactly by counting occurrences
// on the bi-infinite periodic word generated by the cyclic core of g.

#include <cstdint>

#include "qmflow/word.hpp"

namespace qmflow {

class CountingQM {
 public:
  /// Throws std::invalid_argument on an empty pattern.
  explicit CountingQM(Word pattern);

  const Word& pattern() const { return pattern_; }
  const Word& inverse_pattern() const { return inverse_; }

 private:
  Word pattern_;
  Word inverse_;
};

/// Overlapping occurrences of `w` as a contiguous subword of `g`.
long long count_occurrences(const Word& w, const Word& g);

/// h_w(g) = count(w, g) - count(w^-1, g).
double brooks_value(const CountingQM& q, const Word& g);

/// Exact homogenization. Conjugation invariant and homogeneous.
double homogenized(const CountingQM& q, const Word& g);

/// h_w(g^k) / k. Cross-check only.
double homogenize_oracle(const CountingQM& q, const Word& g, long long k);

/// Every reduced word of length at most `maxlen`, shortest first.
std::vector<Word> enumerate_reduced_words(int maxlen);

/// Largest |h(fg) - h(f) - h(g)| over reduced f, g with |f|, |g| <= maxlen.
/// This is a lower bound for the defect. Throws EnumerationBudgetExceeded when
/// the number of pairs exceeds `pair_budget`.
double estimate_defect(const CountingQM& q, int maxlen, std::uint64_t pair_budget = 50'000'000);

}  // namespace qmflow
