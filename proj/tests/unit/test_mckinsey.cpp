#include <doctest.h>

#include <random>

#include "conjlab/conjugacy.hpp"
#include "conjlab/mckinsey.hpp"
#include "conjlab/separability.hpp"
#include "support/oracles.hpp"

using namespace conjlab;
using Verdict = McKinseyOutcome::Verdict;

TEST_SUITE("mckinsey") {
  TEST_CASE("stream shape") {
    auto d = SeparabilityFunction::from_table({2, 31});
    McKinseyBudget budget;
    budget.max_order = 100000;
    auto stream = quotient_stream(d, budget);
    REQUIRE_FALSE(stream.empty());
    CHECK(stream.front().label() == "Q(I=1,m=2)");
    for (std::size_t k = 1; k < stream.size(); ++k) {
      CHECK(stream[k - 1].order() <= stream[k].order());
      CHECK(stream[k].order() <= budget.max_order);
      CHECK(quotient_is_well_defined(stream[k], d));
    }
    budget.max_specs = 3;
    CHECK(quotient_stream(d, budget).size() == 3);
  }

  TEST_CASE("search examples") {
    auto d = SeparabilityFunction::from_table({2});
    McKinseyBudget budget;

    auto shift = mckinsey_search(parse_word("a"), parse_word("a[1]"), d, budget);
    REQUIRE(shift.verdict == Verdict::Conjugate);
    REQUIRE(shift.conjugator.has_value());
    CHECK(shift.conjugator->length() == 1);
    CHECK(g_conj(parse_word("a"), evaluate(*shift.conjugator)) == parse_word("a[1]"));

    auto central = mckinsey_search(parse_word("a"), parse_word("a c[1]"), d, budget);
    REQUIRE(central.verdict == Verdict::NonConjugate);
    CHECK(central.witness->label() == "Q(I=2,m=2)");
    CHECK(central.witness_order == 2048);

    auto ab = mckinsey_search(parse_word("a"), parse_word("b"), d, budget);
    REQUIRE(ab.verdict == Verdict::NonConjugate);
    CHECK(ab.witness->label() == "Q(I=1,m=2)");
    CHECK(ab.witness_order == 8);
    CHECK(ab.witness_exhaustive);

    McKinseyBudget tight;
    tight.max_order = 1000;
    auto hidden = mckinsey_search(parse_word("a"), parse_word("a c[2]"),
                                  SeparabilityFunction::from_table({2, 8191}), tight);
    CHECK(hidden.verdict == Verdict::BudgetExhausted);
    CHECK(to_string(Verdict::BudgetExhausted) == "BudgetExhausted");
  }

  TEST_CASE("witnesses re-verify by exhaustive search") {
    auto d = SeparabilityFunction::from_table({2, 31});
    std::mt19937_64 rng(12);
    McKinseyBudget budget;
    budget.max_order = 20000;
    budget.max_conj_len = 4;
    int checked = 0;
    for (int k = 0; k < 40; ++k) {
      GElement g1 = oracle::random_element(rng, 1 + rng() % 5);
      GElement g2 = oracle::random_element(rng, 1 + rng() % 5);
      auto out = mckinsey_search(g1, g2, d, budget);
      if (out.verdict != Verdict::NonConjugate) continue;
      FiniteQuotient q(*out.witness);
      if (q.order() > kExhaustiveOrderLimit) continue;
      ++checked;
      CHECK_FALSE(finite_conjugate_exhaustive(q, q.image(g1), q.image(g2)));
    }
    CHECK(checked >= 10);
  }

  TEST_CASE("agreement with the fast decision procedure") {
    auto d = SeparabilityFunction::from_table({2, 31});
    McKinseyBudget budget;
    budget.max_conj_len = 4;
    std::mt19937_64 rng(13);
    int decided = 0;
    for (int k = 0; k < 60; ++k) {
      GElement g1 = oracle::random_element(rng, 1 + rng() % 6);
      GElement g2 = k % 3 == 0 ? g_conj(g1, oracle::random_element(rng, 1 + rng() % 3))
                               : oracle::random_element(rng, 1 + rng() % 6);
      if (k % 3 == 1) g2 = g_mul(g_conj(g1, oracle::random_element(rng, 2)), g_from_d(central_c(1)));
      auto fast = conjugacy_decide(g1, g2, d);
      auto slow = mckinsey_search(g1, g2, d, budget);
      if (slow.verdict == Verdict::BudgetExhausted) continue;
      ++decided;
      CHECK(fast.conjugate() == (slow.verdict == Verdict::Conjugate));
    }
    CHECK(decided >= 40);
  }

  TEST_CASE("residual finiteness witnesses respect d") {
    auto d = SeparabilityFunction::from_table({2, 31, 127, 1021, 8191});
    McKinseyBudget budget;
    budget.max_order = BigInt(1) << 3000;
    for (unsigned i = 0; i <= 2; ++i) {
      auto w = rf_witness_order(i, d, budget);
      REQUIRE(w.has_value());
      CHECK(w->order >= d.value(i));
      FiniteQuotient q(w->spec);
      CHECK_FALSE(q.is_identity(q.image(g_from_d(central_c(Index{1} << i)))));
    }
    CHECK(rf_witness_order(0, d, budget)->spec.label() == "Q(I=2,m=2)");

    McKinseyBudget small;
    small.max_order = 30;
    CHECK_FALSE(rf_witness_order(1, d, small).has_value());
  }

  TEST_CASE("growth rows") {
    auto d = SeparabilityFunction::from_table({2, 31, 127, 1021, 8191});
    McKinseyBudget budget;
    budget.max_order = BigInt(1) << 3000;
    auto rows = growth_table(4, d, budget);
    REQUIRE(rows.size() == 5);
    const std::size_t lengths[] = {16, 24, 40, 72, 136};
    BigInt prev = 0;
    for (unsigned i = 0; i < 5; ++i) {
      CHECK(rows[i].i == i);
      CHECK(rows[i].word_length == lengths[i]);
      CHECK(rows[i].decide_seconds < 1.0);
      if (rows[i].witness) {
        CHECK(rows[i].witness->order >= d.value(i));
        CHECK(rows[i].witness->order >= prev);
        prev = rows[i].witness->order;
      }
    }
    CHECK(rows[0].witness.has_value());
  }
}
