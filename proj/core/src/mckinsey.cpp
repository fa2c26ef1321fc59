#include "conjlab/mckinsey.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

#include "conjlab/conjugacy.hpp"

namespace conjlab {

const std::vector<Index>& stream_index_moduli() {
  static const std::vector<Index> moduli{1, 2, 3, 4, 5, 6, 8, 12, 16};
  return moduli;
}

namespace {

bool is_prime_power(std::int64_t m) {
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    return m == 1;
  }
  return m > 1;
}

}  // namespace

std::vector<FiniteQuotientSpec> quotient_stream(const SeparabilityFunction& d,
                                                const McKinseyBudget& budget) {
  std::vector<std::tuple<BigInt, Index, std::int64_t>> keyed;
  for (Index I : stream_index_moduli()) {
    if (I > budget.max_index) continue;
    for (std::int64_t m = 2; m <= budget.max_modulus; ++m) {
      if (!is_prime_power(m)) continue;
      // The order only grows with the c-moduli, so test the lower bound first.
      FiniteQuotientSpec bare;
      bare.index_modulus = I;
      bare.exponent_modulus = m;
      bare.c_moduli.assign(static_cast<std::size_t>(I / 2 + 1), 1);
      if (bare.order() > budget.max_order) continue;
      keyed.emplace_back(BigInt(0), I, m);
    }
  }
  std::vector<FiniteQuotientSpec> specs;
  specs.reserve(keyed.size());
  for (auto& [order, I, m] : keyed) {
    specs.push_back(make_spec(I, m, d));
    order = specs.back().order();
  }
  std::vector<std::size_t> perm(specs.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return keyed[x] < keyed[y]; });
  std::vector<FiniteQuotientSpec> out;
  for (std::size_t idx : perm) {
    if (out.size() >= budget.max_specs) break;
    if (std::get<0>(keyed[idx]) > budget.max_order) continue;
    out.push_back(specs[idx]);
  }
  return out;
}

std::string to_string(McKinseyOutcome::Verdict v) {
  switch (v) {
    case McKinseyOutcome::Verdict::Conjugate: return "Conjugate";
    case McKinseyOutcome::Verdict::NonConjugate: return "NonConjugate";
    case McKinseyOutcome::Verdict::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

namespace {

constexpr WordLetter kLetters[] = {{Letter::T, 1},  {Letter::T, -1}, {Letter::A, 1},
                                   {Letter::A, -1}, {Letter::B, 1},  {Letter::B, -1}};

GElement letter_element(const WordLetter& l) {
  GeneratorWord w;
  w.push(l.letter, l.exp);
  return evaluate(w);
}

// Reduced words of exactly `len` letters, depth first in kLetters order.
class WordSearch {
 public:
  WordSearch(const GElement& g1, const GElement& g2, const SeparabilityFunction& d)
      : g1_(g1), g2_(g2), d_(d) {
    for (const auto& l : kLetters) elems_.push_back(letter_element(l));
  }

  std::optional<GeneratorWord> run(std::size_t len, std::uint64_t& tested) {
    std::vector<int> word;
    if (dfs(len, g_identity(), word, tested)) {
      GeneratorWord out;
      for (int k : word) out.push(kLetters[k].letter, kLetters[k].exp);
      return out;
    }
    return std::nullopt;
  }

 private:
  bool dfs(std::size_t remaining, const GElement& prefix, std::vector<int>& word,
           std::uint64_t& tested) {
    if (remaining == 0) {
      ++tested;
      return g_equal(g_conj(g1_, prefix), g2_, d_);
    }
    for (int k = 0; k < 6; ++k) {
      if (!word.empty() && (word.back() ^ 1) == k) continue;
      word.push_back(k);
      if (dfs(remaining - 1, g_mul(prefix, elems_[k]), word, tested)) return true;
      word.pop_back();
    }
    return false;
  }

  const GElement& g1_;
  const GElement& g2_;
  const SeparabilityFunction& d_;
  std::vector<GElement> elems_;
};

}  // namespace

McKinseyOutcome mckinsey_search(const GElement& g1, const GElement& g2,
                                const SeparabilityFunction& d, const McKinseyBudget& budget) {
  McKinseyOutcome out;
  const auto specs = quotient_stream(d, budget);
  // A conjugator modulo C is conjugate in every quotient killing the
  // leftover central element; trying its image first skips most solves.
  const std::optional<GElement> hint = conj_mod_C(g1, g2);
  WordSearch words(g1, g2, d);

  std::size_t next_spec = 0;
  for (std::size_t round = 0;; ++round) {
    bool progressed = false;
    if (round <= budget.max_conj_len) {
      progressed = true;
      if (auto w = words.run(round, out.words_tested)) {
        out.verdict = McKinseyOutcome::Verdict::Conjugate;
        out.conjugator = std::move(w);
        return out;
      }
    }
    if (next_spec < specs.size()) {
      progressed = true;
      const auto& spec = specs[next_spec++];
      ++out.specs_tested;
      FiniteQuotient q(spec);
      auto x = q.image(g1);
      auto y = q.image(g2);
      bool conj_in_q = hint && q.conj(x, q.image(*hint)) == y;
      if (!conj_in_q) conj_in_q = finite_conjugate(q, x, y, budget.max_order);
      if (!conj_in_q) {
        out.verdict = McKinseyOutcome::Verdict::NonConjugate;
        out.witness = spec;
        out.witness_order = spec.order();
        out.witness_exhaustive = out.witness_order <= kExhaustiveOrderLimit;
        return out;
      }
    }
    if (!progressed) return out;
  }
}

std::optional<RfWitness> rf_witness_order(unsigned i, const SeparabilityFunction& d,
                                          const McKinseyBudget& budget) {
  if (i >= 62) return std::nullopt;
  const GElement c = g_from_d(central_c(Index{1} << i));
  for (const auto& spec : quotient_stream(d, budget)) {
    FiniteQuotient q(spec);
    if (!q.is_identity(q.image(c))) return RfWitness{spec, spec.order()};
  }
  return std::nullopt;
}

std::vector<GrowthRow> growth_table(unsigned i_max, const SeparabilityFunction& d,
                                    const McKinseyBudget& budget) {
  std::vector<GrowthRow> rows;
  const GElement a0 = g_from_d(generator_a(0));
  for (unsigned i = 0; i <= i_max; ++i) {
    GrowthRow row;
    row.i = i;
    row.word_length = c_witness_word(Index{1} << i).length();
    row.witness = rf_witness_order(i, d, budget);
    const GElement ac = g_mul(a0, g_from_d(central_c(Index{1} << i)));
    auto t0 = std::chrono::steady_clock::now();
    auto cert = conjugacy_decide(a0, ac, d);
    auto t1 = std::chrono::steady_clock::now();
    (void)cert;
    row.decide_seconds = std::chrono::duration<double>(t1 - t0).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace conjlab
