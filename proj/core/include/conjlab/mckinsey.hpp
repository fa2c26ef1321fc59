#pragma once

// McKinsey-style conjugacy search: conjugator words are enumerated by length
// and verified directly, interleaved with a stream of finite quotients
// Q(I, m) in which the images are tested for conjugacy. Either side can
// only ever produce a correct verdict, so the first success is returned.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conjlab/gd_group.hpp"
#include "conjlab/quotient.hpp"
#include "conjlab/separability.hpp"

namespace conjlab {

struct McKinseyBudget {
  std::size_t max_conj_len = 6;
  BigInt max_order = 1000000;
  std::size_t max_specs = 1000;
  Index max_index = 16;
  std::int64_t max_modulus = 128;
};

/// Index moduli the stream draws from.
const std::vector<Index>& stream_index_moduli();

/// Specs with I in stream_index_moduli(), m a prime power, order within the
/// budget; sorted by (order, I, m) and cut at max_specs.
std::vector<FiniteQuotientSpec> quotient_stream(const SeparabilityFunction& d,
                                                const McKinseyBudget& budget);

struct McKinseyOutcome {
  enum class Verdict : std::uint8_t { Conjugate, NonConjugate, BudgetExhausted };

  Verdict verdict = Verdict::BudgetExhausted;
  /// Conjugate: g with g^-1 g1 g = g2.
  std::optional<GeneratorWord> conjugator;
  /// NonConjugate: the separating quotient.
  std::optional<FiniteQuotientSpec> witness;
  BigInt witness_order = 0;
  /// True when the separating verdict came from exhaustive search.
  bool witness_exhaustive = false;

  std::uint64_t specs_tested = 0;
  std::uint64_t words_tested = 0;
};

std::string to_string(McKinseyOutcome::Verdict v);

McKinseyOutcome mckinsey_search(const GElement& g1, const GElement& g2,
                                const SeparabilityFunction& d, const McKinseyBudget& budget);

struct RfWitness {
  FiniteQuotientSpec spec;
  BigInt order;
};

/// First quotient in the stream where c_{2^i} survives.
std::optional<RfWitness> rf_witness_order(unsigned i, const SeparabilityFunction& d,
                                          const McKinseyBudget& budget);

struct GrowthRow {
  unsigned i = 0;
  std::size_t word_length = 0;  // |c_witness_word(2^i)| = 8 + 2^{i+3}
  std::optional<RfWitness> witness;
  double decide_seconds = 0;  // conjugacy_decide on (a_0, a_0 c_{2^i})
};

std::vector<GrowthRow> growth_table(unsigned i_max, const SeparabilityFunction& d,
                                    const McKinseyBudget& budget);

}  // namespace conjlab
