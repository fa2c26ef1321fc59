#include <doctest.h>

#include <random>

#include "conjlab/gd_group.hpp"
#include "conjlab/separability.hpp"
#include "support/oracles.hpp"

using namespace conjlab;
using Key = CommutatorBasisElement;

namespace {

GElement pair(DElement h, Index n) {
  GElement g = g_from_d(std::move(h));
  g.t_exp = n;
  return g;
}

}  // namespace

TEST_SUITE("gd_group") {
  TEST_CASE("semidirect product examples") {
    CHECK(g_mul(pair(generator_a(0), 0), pair(d_identity(), 1)) == pair(generator_a(0), 1));
    CHECK(g_conj(pair(generator_a(0), 0), pair(d_identity(), -1)) == pair(generator_a(1), 0));
    GElement inv = g_inv(pair(generator_a(0), 1));
    CHECK(inv == pair(d_inv(generator_a(-1)), -1));
    CHECK(g_mul(pair(generator_a(0), 1), inv) == g_identity());
    CHECK(g_mul(inv, pair(generator_a(0), 1)) == g_identity());
  }

  TEST_CASE("word parsing examples") {
    CHECK(parse_word("t a t^-1") == pair(generator_a(1), 0));
    CHECK(to_json(parse_word("t a t^-1")) == R"({"a":[[1,1]],"b":[],"derived":[],"t":0})");
    GElement comm = parse_word("a b A B");
    CHECK(comm == pair(d_commutator(generator_a(0), generator_b(0)), 0));
    CHECK(to_json(comm) == R"j({"a":[],"b":[],"derived":[["AB(0,0)",1]],"t":0})j");
    CHECK(parse_word("c[1]") == pair(central_c(1), 0));
    CHECK(parse_word("a^-1") == parse_word("A"));
    CHECK(parse_word("a[3] b[-2]") == pair(d_mul(generator_a(3), generator_b(-2)), 0));
    CHECK(parse_word("") == g_identity());
  }

  TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_word("a q"), ParseError);
    try {
      (void)parse_word("a b^");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position() >= 3);
    }
    CHECK_THROWS_AS(parse_word("t[2]"), ParseError);
    CHECK_THROWS_AS(parse_word("c"), ParseError);
  }

  TEST_CASE("c witness words") {
    for (Index k : {1, 2, 4, 8, 16}) {
      GeneratorWord w = c_witness_word(k);
      CHECK(w.length() == static_cast<std::size_t>(8 * k + 8));
      CHECK(evaluate(w) == pair(central_c(k), 0));
    }
    for (unsigned i = 0; i <= 4; ++i)
      CHECK(c_witness_word(Index{1} << i).length() == 8 + (std::size_t{1} << (i + 3)));
    CHECK_THROWS(c_witness_word(0));
  }

  TEST_CASE("abelianization minimum index") {
    CHECK(abelianization_min_index(pair(d_mul(generator_a(3), generator_b(-1)), 0)) ==
          std::optional<Index>(-1));
    CHECK_FALSE(abelianization_min_index(pair(central_c(5), 0)).has_value());
    GElement shifted = g_conj(pair(generator_a(0), 0), pair(d_identity(), -2));
    CHECK(abelianization_min_index(shifted) == std::optional<Index>(2));
  }

  TEST_CASE("derived support") {
    CHECK(derived_support(pair(d_mul(generator_a(0), generator_b(3)), 0)) ==
          std::optional<IndexInterval>({0, 3}));
    CHECK(derived_support(pair(d_commutator(generator_a(1), generator_b(4)), 0)) ==
          std::optional<IndexInterval>({1, 4}));
    CHECK_FALSE(derived_support(pair(central_c(3), 0)).has_value());
    CHECK_THROWS(derived_support(pair(generator_a(0), 1)));
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
      DElement h = oracle::evaluate_d_word(oracle::random_d_word(rng, 5, -3, 3));
      auto s = derived_support(pair(h, 0));
      auto s2 = derived_support(pair(phi_shift(h, 2), 0));
      REQUIRE(s.has_value() == s2.has_value());
      if (s) CHECK(*s2 == IndexInterval{s->lo + 2, s->hi + 2});
    }
  }

  TEST_CASE("group axioms and parse homomorphism") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 200; ++k) {
      std::string u = oracle::random_word(rng, 1 + rng() % 8);
      std::string v = oracle::random_word(rng, 1 + rng() % 8);
      std::string w = oracle::random_word(rng, 1 + rng() % 8);
      GElement x = parse_word(u), y = parse_word(v), z = parse_word(w);
      CHECK(parse_word(u + " " + v) == g_mul(x, y));
      CHECK(g_mul(g_mul(x, y), z) == g_mul(x, g_mul(y, z)));
      CHECK(g_mul(x, g_inv(x)) == g_identity());
      CHECK(g_mul(g_inv(x), x) == g_identity());
      CHECK(g_conj(x, y) == g_mul(g_mul(g_inv(y), x), y));
    }
    for (Index k = -5; k <= 5; ++k) {
      std::string w = "t^" + std::to_string(k) + " a t^" + std::to_string(-k);
      CHECK(parse_word(w) == pair(generator_a(k), 0));
    }
  }

  TEST_CASE("commutators landing in C vanish") {
    auto d = SeparabilityFunction::from_table({2, 31, 127});
    std::mt19937_64 rng(17);
    int hits = 0;
    for (int k = 0; k < 500; ++k) {
      GElement g1 = parse_word(oracle::random_word(rng, 1 + rng() % 8));
      GElement g2 = parse_word(oracle::random_word(rng, 1 + rng() % 8));
      GElement c = g_commutator(g1, g2);
      if (c.t_exp == 0 && is_in_C(c.d_part)) {
        ++hits;
        CHECK(g_is_identity(c, d));
      }
    }
    CHECK(hits > 0);
  }

  TEST_CASE("structured element format round trip") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
      GElement g = parse_word(oracle::random_word(rng, 1 + rng() % 10) + " c[3]^2");
      CHECK(from_json(to_json(g)) == g);
      CHECK(evaluate(element_to_word(g)) == g);
    }
    GElement big = pair(d_pow(central_c(1), BigInt("123456789012345678901234567890")), 0);
    CHECK(from_json(to_json(big)) == big);
    CHECK_THROWS(from_json(R"({"a":[],"q":[]})"));
    CHECK_THROWS(from_json(R"({"a":[[1]]})"));
    CHECK_THROWS(from_json("[1,2"));
  }

  TEST_CASE("equality modulo relators") {
    auto d = SeparabilityFunction::from_table({2});
    CHECK(g_equal(parse_word("a c[1]^2"), parse_word("a"), d));
    CHECK_FALSE(g_equal(parse_word("a c[1]"), parse_word("a"), d));
    CHECK(g_pow(parse_word("t a"), 3) == g_mul(parse_word("t a"), g_mul(parse_word("t a"), parse_word("t a"))));
  }
}
