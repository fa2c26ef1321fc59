#pragma once

// G_d = D x|_phi Z. Elements are pairs (h, n) with
//   (h1, n1)(h2, n2) = (h1 * phi_{n1}(h2), n1 + n2),
// t = (1, 1), and t a_i t^-1 = a_{i+1}. Conjugation follows g^h = h^-1 g h.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conjlab/nilpotent.hpp"

namespace conjlab {

struct GElement {
  DElement d_part;
  Index t_exp = 0;

  friend bool operator==(const GElement&, const GElement&) = default;
};

GElement g_identity();
GElement g_from_d(DElement h);
GElement g_t(Index n = 1);

GElement g_mul(const GElement& x, const GElement& y);
GElement g_inv(const GElement& x);
GElement g_pow(const GElement& x, const BigInt& e);
/// by^-1 * x * by
GElement g_conj(const GElement& x, const GElement& by);
GElement g_commutator(const GElement& x, const GElement& y);

/// Equality in G_d (relators c_{2^i}^{d(i)} taken into account).
bool g_equal(const GElement& x, const GElement& y, const SeparabilityFunction& d);
bool g_is_identity(const GElement& x, const SeparabilityFunction& d);

/// Least index in the a/b support, absent for elements of D'.
std::optional<Index> abelianization_min_index(const GElement& g);

struct IndexInterval {
  Index lo = 0;
  Index hi = 0;
  friend bool operator==(const IndexInterval&, const IndexInterval&) = default;
};

/// Minimal interval covering the a/b support (outside D'), or the indices of
/// non-central derived coordinates (inside D' but outside C); absent on C.
/// Requires t_exp == 0.
std::optional<IndexInterval> derived_support(const GElement& g);

// ---------------------------------------------------------------------------
// Words over {t, a_0, b_0}

enum class Letter : std::uint8_t { T, A, B };

struct WordLetter {
  Letter letter = Letter::T;
  int exp = 1;  // +1 or -1
  friend bool operator==(const WordLetter&, const WordLetter&) = default;
};

/// A word over {t, a, b}^{+-1}; its length is the word-length measure.
class GeneratorWord {
 public:
  GeneratorWord() = default;
  explicit GeneratorWord(std::vector<WordLetter> letters) : letters_(std::move(letters)) {}

  [[nodiscard]] std::size_t length() const noexcept { return letters_.size(); }
  [[nodiscard]] const std::vector<WordLetter>& letters() const noexcept { return letters_; }

  void push(Letter l, int exp) { letters_.push_back({l, exp}); }
  void push_power(Letter l, Index e);
  void append(const GeneratorWord& w);
  [[nodiscard]] GeneratorWord inverse() const;

  /// Compact spelling, e.g. "t a T" (capitals are inverses).
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;

 private:
  std::vector<WordLetter> letters_;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}
  [[nodiscard]] std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Parses the text grammar: letters t a b (T A B inverse), `^<int>` powers,
/// macros a[i], b[i], c[k]; whitespace optional. Macros are expanded.
GeneratorWord parse_word_text(std::string_view text);

GElement evaluate(const GeneratorWord& w);
GElement parse_word(std::string_view text);

/// [a_0, b_k][b_0, a_k] with conjugates expanded: length 8|k| + 8.
GeneratorWord c_witness_word(Index k);
GeneratorWord word_a(Index i);
GeneratorWord word_b(Index i);

/// A word spelling `g` (not length-minimal). Throws if an exponent does not
/// fit in 32 bits.
GeneratorWord element_to_word(const GElement& g);

// ---------------------------------------------------------------------------
// Structured element format:
// {"a":[[i,e],...],"b":[[i,e],...],"derived":[["AB(0,1)",e],...],"t":n}
// Exponents are JSON integers when they fit in 64 bits, strings otherwise.

std::string to_json(const GElement& g);
GElement from_json(std::string_view text);

std::string to_string(const GElement& g);

}  // namespace conjlab
