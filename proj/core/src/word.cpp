#include "qmflow/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmflow {

Letter::Letter(int generator, int sign) {
  if (generator < 1 || generator > kRank) {
    throw std::invalid_argument("letter generator out of range: " + std::to_string(generator));
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("letter sign must be +1 or -1");
  }
  code_ = static_cast<std::int8_t>(generator * sign);
}

char Letter::to_char() const {
  const char base = static_cast<char>('a' + generator() - 1);
  return sign() > 0 ? base : static_cast<char>(base - 'a' + 'A');
}

Letter Letter::from_char(char c) {
  if (c >= 'a' && c < 'a' + kRank) return Letter(c - 'a' + 1, 1);
  if (c >= 'A' && c < 'A' + kRank) return Letter(c - 'A' + 1, -1);
  throw std::invalid_argument(std::string("not a word letter: '") + c + "'");
}

Word Word::parse(std::string_view text) {
  WordBuilder builder;
  for (char c : text) builder.push(Letter::from_char(c));
  return std::move(builder).build();
}

std::string Word::to_string() const {
  std::string out;
  out.reserve(letters_.size());
  for (Letter l : letters_) out.push_back(l.to_char());
  return out;
}

bool operator<(const Word& x, const Word& y) {
  return std::lexicographical_compare(
      x.letters_.begin(), x.letters_.end(), y.letters_.begin(), y.letters_.end(),
      [](Letter p, Letter q) { return p.code() < q.code(); });
}

Word reduce(std::span<const Letter> raw) {
  WordBuilder builder;
  for (Letter l : raw) builder.push(l);
  return std::move(builder).build();
}

Word multiply(const Word& u, const Word& v) {
  WordBuilder builder(u);
  builder.append(v);
  return std::move(builder).build();
}

Word invert(const Word& u) {
  std::vector<Letter> out;
  out.reserve(u.size());
  const auto letters = u.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.push_back(it->inverse());
  // Inverse of a reduced word is reduced; reduce() is a cheap identity pass here.
  return reduce(out);
}

Word power(const Word& u, long long k) {
  if (k == 0 || u.empty()) return Word::identity();
  const Word base = k > 0 ? u : invert(u);
  const long long n = k > 0 ? k : -k;
  // u^n = w c^n w^-1 with c cyclically reduced, so build it directly.
  const auto [core, conj] = cyclic_reduce(base);
  WordBuilder builder(conj);
  for (long long i = 0; i < n; ++i) builder.append(core);
  builder.append(invert(conj));
  return std::move(builder).build();
}

CyclicDecomposition cyclic_reduce(const Word& u) {
  const auto letters = u.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo].cancels(letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return {reduce(letters.subspan(lo, hi - lo)), reduce(letters.subspan(0, lo))};
}

std::pair<long long, long long> abelianize(const Word& u) {
  long long ea = 0;
  long long eb = 0;
  for (Letter l : u.letters()) {
    (l.generator() == 1 ? ea : eb) += l.sign();
  }
  return {ea, eb};
}

}  // namespace qmflow
