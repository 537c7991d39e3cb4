#pragma once

// Reduced words in the free group F(a, b).
//
// Text form: `a`, `b` for the generators and `A`, `B` for their inverses,
// concatenated (`abAB` is the commutator). The empty string is the identity.

#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qmflow {

/// Number of free generators. Every scenario in this library lives on the
/// one-holed torus, whose fundamental group is free of rank two.
inline constexpr int kRank = 2;

/// A generator or inverse generator. Stored as a signed generator index.
class Letter {
 public:
  constexpr Letter() = default;
  /// `generator` in [1, kRank], `sign` = +1 or -1. Throws std::invalid_argument.
  Letter(int generator, int sign);

  static constexpr Letter a() { return Letter(std::int8_t{1}); }
  static constexpr Letter b() { return Letter(std::int8_t{2}); }

  constexpr int generator() const { return code_ < 0 ? -code_ : code_; }
  constexpr int sign() const { return code_ < 0 ? -1 : 1; }
  constexpr Letter inverse() const { return Letter(static_cast<std::int8_t>(-code_)); }
  constexpr bool cancels(Letter other) const { return code_ == -other.code_; }
  constexpr std::int8_t code() const { return code_; }

  char to_char() const;
  static Letter from_char(char c);

  friend constexpr bool operator==(Letter, Letter) = default;

 private:
  explicit constexpr Letter(std::int8_t code) : code_(code) {}
  std::int8_t code_ = 1;
};

/// A freely reduced word. Instances are always reduced; construct through
/// `reduce`, `Word::parse`, or `WordBuilder`.
class Word {
 public:
  Word() = default;

  static Word parse(std::string_view text);
  static Word identity() { return Word(); }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend bool operator<(const Word& x, const Word& y);

 private:
  friend class WordBuilder;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;
};

/// Appends letters with free cancellation against the current tail.
class WordBuilder {
 public:
  WordBuilder() = default;
  explicit WordBuilder(const Word& start) : letters_(start.letters_) {}

  void push(Letter l) {
    if (!letters_.empty() && letters_.back().cancels(l)) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
  void append(const Word& w) {
    for (Letter l : w.letters()) push(l);
  }
  std::size_t size() const { return letters_.size(); }
  void clear() { letters_.clear(); }

  Word build() const& { return Word(letters_); }
  Word build() && { return Word(std::move(letters_)); }

 private:
  std::vector<Letter> letters_;
};

struct CyclicDecomposition {
  Word core;        // cyclically reduced
  Word conjugator;  // input = conjugator * core * conjugator^-1
};

Word reduce(std::span<const Letter> raw);
Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
Word power(const Word& u, long long k);
CyclicDecomposition cyclic_reduce(const Word& u);

/// Exponent sums (a, b): the image of `u` in the abelianization Z^2.
std::pair<long long, long long> abelianize(const Word& u);

}  // namespace qmflow
