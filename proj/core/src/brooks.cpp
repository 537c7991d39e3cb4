#include "qmflow/brooks.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qmflow/errors.hpp"

namespace qmflow {

CountingQM::CountingQM(Word pattern) : pattern_(std::move(pattern)), inverse_(invert(pattern_)) {
  if (pattern_.empty()) throw std::invalid_argument("counting quasimorphism pattern must be nonempty");
}

long long count_occurrences(const Word& w, const Word& g) {
  const std::size_t n = g.size();
  const std::size_t len = w.size();
  if (len == 0 || n < len) return 0;
  long long count = 0;
  for (std::size_t i = 0; i + len <= n; ++i) {
    std::size_t j = 0;
    while (j < len && g[i + j] == w[j]) ++j;
    if (j == len) ++count;
  }
  return count;
}

double brooks_value(const CountingQM& q, const Word& g) {
  return static_cast<double>(count_occurrences(q.pattern(), g) -
                             count_occurrences(q.inverse_pattern(), g));
}

namespace {

// Occurrences of `w` starting in one period of the periodic word c c c ...
long long count_cyclic(const Word& w, const Word& c) {
  const std::size_t n = c.size();
  const std::size_t len = w.size();
  long long count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = 0;
    while (j < len && c[(i + j) % n] == w[j]) ++j;
    if (j == len) ++count;
  }
  return count;
}

}  // namespace

double homogenized(const CountingQM& q, const Word& g) {
  const Word core = cyclic_reduce(g).core;
  if (core.empty()) return 0.0;
  return static_cast<double>(count_cyclic(q.pattern(), core) -
                             count_cyclic(q.inverse_pattern(), core));
}

double homogenize_oracle(const CountingQM& q, const Word& g, long long k) {
  if (k < 1) throw std::invalid_argument("homogenize_oracle needs k >= 1");
  return brooks_value(q, power(g, k)) / static_cast<double>(k);
}

std::vector<Word> enumerate_reduced_words(int maxlen) {
  std::vector<Word> out{Word::identity()};
  std::size_t layer_begin = 0;
  for (int len = 1; len <= maxlen; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (int gen = 1; gen <= kRank; ++gen) {
        for (int sign : {1, -1}) {
          const Letter l(gen, sign);
          const Word& base = out[i];
          if (!base.empty() && base[base.size() - 1].cancels(l)) continue;
          WordBuilder builder(base);
          builder.push(l);
          out.push_back(std::move(builder).build());
        }
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

double estimate_defect(const CountingQM& q, int maxlen, std::uint64_t pair_budget) {
  if (maxlen < 1) throw std::invalid_argument("estimate_defect needs maxlen >= 1");
  // 1 + 4 * (3^maxlen - 1) / 2 reduced words of length <= maxlen in rank 2.
  std::uint64_t words = 1;
  std::uint64_t layer = 4;
  for (int len = 1; len <= maxlen; ++len) {
    words += layer;
    layer *= 3;
    if (words * words > pair_budget) {
      throw EnumerationBudgetExceeded("estimate_defect: maxlen " + std::to_string(maxlen) +
                                      " exceeds pair budget " + std::to_string(pair_budget));
    }
  }
  const std::vector<Word> all = enumerate_reduced_words(maxlen);
  std::vector<double> value(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) value[i] = brooks_value(q, all[i]);

  double defect = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      const double d = brooks_value(q, multiply(all[i], all[j])) - value[i] - value[j];
      defect = std::max(defect, std::abs(d));
    }
  }
  return defect;
}

}  // namespace qmflow
