#pragma once

// Independent reference implementations used by the tests.

#include <map>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "conjlab/gd_group.hpp"
#include "conjlab/nilpotent.hpp"

namespace oracle {

using conjlab::BigInt;
using conjlab::Index;

// Free 2-step nilpotent collection on letters a_i / b_i by adjacent swaps:
// y^e x^f = [y,x]^{ef} x^f y^e with commutators central. The result is read
// off in the D basis through [a_i,b_j] = c_{i-j}^{-1} [a_j,b_i] for i > j.
struct Gen {
  bool is_b;
  Index index;
  friend auto operator<=>(const Gen&, const Gen&) = default;
};

struct Letter {
  Gen gen;
  int exp;  // +-1
};

inline conjlab::DElement collect(std::vector<Letter> word) {
  std::map<std::pair<Gen, Gen>, BigInt> comm;  // key (x, y) with x < y means [x, y]
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
      Letter& y = word[k];
      Letter& x = word[k + 1];
      if (x.gen == y.gen && x.exp == -y.exp) {
        word.erase(word.begin() + static_cast<std::ptrdiff_t>(k),
                   word.begin() + static_cast<std::ptrdiff_t>(k) + 2);
        changed = true;
        break;
      }
      if (x.gen < y.gen) {
        // y^e x^f = [y,x]^{ef} x^f y^e and [y,x] = [x,y]^-1.
        comm[{x.gen, y.gen}] -= x.exp * y.exp;
        std::swap(word[k], word[k + 1]);
        changed = true;
      }
    }
  }
  conjlab::DElement out;
  for (const auto& l : word) (l.gen.is_b ? out.b_part : out.a_part).add(l.gen.index, l.exp);
  for (const auto& [key, e] : comm) {
    if (e == 0) continue;
    const auto& [x, y] = key;
    if (!x.is_b && !y.is_b) {
      out.derived_part.add(conjlab::CommutatorBasisElement::aa(x.index, y.index), e);
    } else if (x.is_b && y.is_b) {
      out.derived_part.add(conjlab::CommutatorBasisElement::bb(x.index, y.index), e);
    } else {
      Index i = x.index;  // a-index (a sorts before b)
      Index j = y.index;
      if (i <= j) {
        out.derived_part.add(conjlab::CommutatorBasisElement::ab(i, j), e);
      } else {
        out.derived_part.add(conjlab::CommutatorBasisElement::ab(j, i), e);
        out.derived_part.add(conjlab::CommutatorBasisElement::c(i - j), -e);
      }
    }
  }
  return out;
}

inline std::vector<Letter> random_d_word(std::mt19937_64& rng, std::size_t len, Index lo, Index hi) {
  std::vector<Letter> w;
  std::uniform_int_distribution<Index> idx(lo, hi);
  for (std::size_t k = 0; k < len; ++k)
    w.push_back({{(rng() & 1) != 0, idx(rng)}, (rng() & 2) ? 1 : -1});
  return w;
}

inline conjlab::DElement evaluate_d_word(const std::vector<Letter>& w) {
  conjlab::DElement x = conjlab::d_identity();
  for (const auto& l : w) {
    conjlab::DElement g = l.gen.is_b ? conjlab::generator_b(l.gen.index)
                                     : conjlab::generator_a(l.gen.index);
    x = conjlab::d_mul(x, l.exp > 0 ? g : conjlab::d_inv(g));
  }
  return x;
}

/// Words over {t,T,a,A,b,B} with exactly `len` letters.
inline std::string random_word(std::mt19937_64& rng, std::size_t len) {
  static const char* kLetters[] = {"t", "T", "a", "A", "b", "B"};
  std::string s;
  for (std::size_t k = 0; k < len; ++k) {
    if (k) s += ' ';
    s += kLetters[rng() % 6];
  }
  return s.empty() ? std::string("1") : s;
}

inline conjlab::GElement random_element(std::mt19937_64& rng, std::size_t len) {
  conjlab::GElement g = conjlab::g_identity();
  static const char* kLetters[] = {"t", "T", "a", "A", "b", "B"};
  for (std::size_t k = 0; k < len; ++k) g = conjlab::g_mul(g, conjlab::parse_word(kLetters[rng() % 6]));
  return g;
}

/// Every group element spelled by a reduced word of length <= max_len.
inline std::vector<conjlab::GElement> all_short_elements(std::size_t max_len) {
  std::vector<conjlab::GElement> gens;
  for (const char* l : {"t", "T", "a", "A", "b", "B"}) gens.push_back(conjlab::parse_word(l));
  std::vector<conjlab::GElement> out{conjlab::g_identity()};
  std::vector<std::pair<conjlab::GElement, int>> frontier{{conjlab::g_identity(), -1}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::pair<conjlab::GElement, int>> next;
    for (const auto& [g, last] : frontier)
      for (int k = 0; k < 6; ++k) {
        if (last >= 0 && (last ^ 1) == k) continue;
        next.emplace_back(conjlab::g_mul(g, gens[k]), k);
        out.push_back(next.back().first);
      }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace oracle
