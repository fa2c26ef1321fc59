#include <doctest.h>

#include <random>
#include <sstream>

#include "conjlab/group_table.hpp"
#include "conjlab/quotient.hpp"
#include "conjlab/separability.hpp"
#include "support/oracles.hpp"

using namespace conjlab;
using Elem = FiniteGroupTable::Elem;

namespace {

Elem power(const FiniteGroupTable& q, Elem x, long e) {
  if (e < 0) {
    x = q.inv(x);
    e = -e;
  }
  Elem r = q.identity();
  for (long k = 0; k < e; ++k) r = q.mul(r, x);
  return r;
}

Elem evaluate_in(const FiniteGroupTable& q, const GeneratorWord& w) {
  Elem r = q.identity();
  for (const auto& l : w.letters()) {
    Elem g = l.letter == Letter::T ? q.tau() : l.letter == Letter::A ? q.alpha() : q.beta();
    r = q.mul(r, power(q, g, l.exp));
  }
  return r;
}

// A random word with t-exponent zero, so it lies in D.
std::string random_d_word(std::mt19937_64& rng) {
  std::string w = oracle::random_word(rng, 1 + rng() % 6);
  Index n = parse_word(w).t_exp;
  return w + " t^" + std::to_string(-n);
}

// Relator instances of G_d as words: [[x,y],z] for x, y, z in D,
// c_{2^j}^{d(j)}, and [c-word, t], each conjugated by a random word.
std::vector<GeneratorWord> relator_instances(std::mt19937_64& rng, const SeparabilityFunction& d,
                                             int count) {
  std::vector<GeneratorWord> out;
  for (int k = 0; k < count; ++k) {
    GeneratorWord r;
    switch (k % 3) {
      case 0: {
        GeneratorWord x = parse_word_text(random_d_word(rng));
        GeneratorWord y = parse_word_text(random_d_word(rng));
        GeneratorWord z = parse_word_text(random_d_word(rng));
        GeneratorWord xy = x;
        xy.append(y);
        xy.append(x.inverse());
        xy.append(y.inverse());
        r = xy;
        r.append(z);
        r.append(xy.inverse());
        r.append(z.inverse());
        break;
      }
      case 1: {
        unsigned j = static_cast<unsigned>(rng() % 3);
        GeneratorWord c = c_witness_word(Index{1} << j);
        auto e = static_cast<long>(d.value(j));
        for (long i = 0; i < e; ++i) r.append(c);
        break;
      }
      default: {
        GeneratorWord c = c_witness_word(1 + static_cast<Index>(rng() % 4));
        r = c;
        r.push(Letter::T, 1);
        r.append(c.inverse());
        r.push(Letter::T, -1);
      }
    }
    GeneratorWord u = parse_word_text(oracle::random_word(rng, 1 + rng() % 5));
    GeneratorWord full = u;
    full.append(r);
    full.append(u.inverse());
    out.push_back(full);
  }
  return out;
}

void check_budget(const FiniteGroupTable& q, const HomCheckResult& r) {
  const std::uint64_t n = q.order();
  CHECK(r.multiplications <= step_budget_constant() * (n * n * n + 1));
}

}  // namespace

TEST_SUITE("group_table") {
  TEST_CASE("golden verdicts") {
    auto d = SeparabilityFunction::from_table({2, 31});
    auto z2 = FiniteGroupTable::load(std::string(CONJLAB_TEST_DATA_DIR) + "/z2.table");
    auto r = hom_check(z2, d);
    CHECK(r.extends);
    check_budget(z2, r);

    FiniteGroupTable trivial(1, {0}, 0, 0, 0);
    CHECK(hom_check(trivial, d).extends);

    auto s3 = FiniteGroupTable::load(std::string(CONJLAB_TEST_DATA_DIR) + "/s3.perm");
    CHECK(s3.order() == 6);
    auto rs = hom_check(s3, d);
    CHECK_FALSE(rs.extends);
    CHECK(rs.failure.find("[[") != std::string::npos);
    check_budget(s3, rs);

    auto s3b = FiniteGroupTable::from_permutations({1, 0, 2}, {2, 1, 0}, {0, 1, 2});
    CHECK_FALSE(hom_check(s3b, d).extends);

    auto q14 = FiniteGroupTable::load(std::string(CONJLAB_TEST_DATA_DIR) + "/q1_4.table");
    CHECK(q14.order() == 64);
    CHECK(hom_check(q14, d).extends);

    // t -> a generator of order 3 while a, b die: c-relators survive trivially.
    FiniteGroupTable z3(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}, 0, 0, 1);
    CHECK(hom_check(z3, d).extends);
    // a -> 1 in Z/3 needs nothing beyond abelian relations either.
    FiniteGroupTable z3a(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}, 1, 2, 0);
    CHECK(hom_check(z3a, d).extends);
  }

  TEST_CASE("the c relators are checked") {
    // In Q(2,2) built with d(0) = 2, c_1 survives with order 2; d(0) = 3 forbids that.
    FiniteQuotient q(make_spec(2, 2, SeparabilityFunction::from_table({2})));
    auto table = FiniteGroupTable::from_quotient(q, 1);
    CHECK(table.order() == 2048);
    CHECK(hom_check(table, SeparabilityFunction::from_table({2})).extends);
    CHECK_FALSE(hom_check(table, SeparabilityFunction::from_table({3})).extends);
  }

  TEST_CASE("randomized tables from well-defined quotients") {
    std::mt19937_64 rng(99);
    int count = 0;
    for (std::int64_t m : {2, 3, 4, 5, 7, 8, 9, 11, 12}) {
      for (std::uint64_t seed : {1u, 2u}) {
        auto d = seed == 1 ? SeparabilityFunction::from_table({2, 31}) : SeparabilityFunction::nth_prime();
        FiniteQuotientSpec s = make_spec(1, m, d);
        REQUIRE(quotient_is_well_defined(s, d));
        auto table = FiniteGroupTable::from_quotient(FiniteQuotient(s), seed + static_cast<std::uint64_t>(m));
        auto r = hom_check(table, d);
        CHECK(r.extends);
        check_budget(table, r);
        for (const auto& w : relator_instances(rng, d, 50)) CHECK(evaluate_in(table, w) == table.identity());
        ++count;
      }
    }
    for (std::int64_t m : {2, 3}) {
      auto d = SeparabilityFunction::from_table({2});
      auto table = FiniteGroupTable::from_quotient(FiniteQuotient(make_spec(1, m, d)), 0);
      CHECK(hom_check(table, d).extends);
      ++count;
    }
    CHECK(count >= 20);
  }

  TEST_CASE("relator instances are relators") {
    auto d = SeparabilityFunction::from_table({2, 31, 127});
    std::mt19937_64 rng(3);
    for (const auto& w : relator_instances(rng, d, 30)) CHECK(g_is_identity(evaluate(w), d));
  }

  TEST_CASE("text format round trip") {
    FiniteQuotient q(make_spec(1, 3, SeparabilityFunction::from_table({2})));
    auto table = FiniteGroupTable::from_quotient(q, 7);
    std::stringstream ss;
    table.write(ss);
    auto back = FiniteGroupTable::parse(ss);
    REQUIRE(back.order() == table.order());
    CHECK(back.alpha() == table.alpha());
    CHECK(back.tau() == table.tau());
    for (Elem x = 0; x < table.order(); ++x)
      for (Elem y = 0; y < table.order(); ++y) CHECK(back.mul(x, y) == table.mul(x, y));
  }

  TEST_CASE("malformed tables") {
    auto parse = [](const std::string& text) {
      std::istringstream in(text);
      return FiniteGroupTable::parse(in);
    };
    CHECK_THROWS_AS(parse("order 2\n0 1\n1 0\nalpha 0 beta 0\n"), GroupTableError);
    CHECK_THROWS_AS(parse("order 2\n0 1\n1 1\nalpha 0 beta 0 tau 0\n"), GroupTableError);
    CHECK_THROWS_AS(parse("order 2\n0 1\n1 2\nalpha 0 beta 0 tau 0\n"), GroupTableError);
    CHECK_THROWS_AS(parse("bogus 3\n"), GroupTableError);
    CHECK_THROWS_AS(parse("permutations 3\nalpha 0 0 1\nbeta 0 1 2\ntau 0 1 2\n"), GroupTableError);
    CHECK_THROWS_AS(FiniteGroupTable::load(std::string(CONJLAB_TEST_DATA_DIR) + "/nonassociative.table"),
                    GroupTableError);
    try {
      (void)FiniteGroupTable::load(std::string(CONJLAB_TEST_DATA_DIR) + "/nonassociative.table");
    } catch (const GroupTableError& e) {
      CHECK(std::string(e.what()).find("not a group") != std::string::npos);
    }
    CHECK_THROWS_AS(FiniteGroupTable(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}, 0, 0, 0, 2), GroupTableError);
  }
}
