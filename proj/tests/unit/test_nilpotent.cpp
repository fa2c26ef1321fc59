#include <doctest.h>

#include <random>

#include "conjlab/nilpotent.hpp"
#include "conjlab/separability.hpp"
#include "support/oracles.hpp"

using namespace conjlab;
using Key = CommutatorBasisElement;

namespace {

DElement derived(std::initializer_list<std::pair<Key, int>> entries) {
  DElement x;
  for (const auto& [k, v] : entries) x.derived_part.add(k, v);
  return x;
}

}  // namespace

TEST_SUITE("nilpotent") {
  TEST_CASE("identity and generators") {
    CHECK(d_identity().a_part.empty());
    CHECK(d_identity().b_part.empty());
    CHECK(d_identity().derived_part.empty());
    CHECK(d_mul(d_identity(), generator_a(5)) == generator_a(5));
    CHECK(d_inv(d_identity()) == d_identity());

    DElement a3 = generator_a(3);
    CHECK(a3.a_part.get(3) == 1);
    CHECK(a3.a_part.size() == 1);
    CHECK(a3.b_part.empty());
    CHECK(central_c(0) == d_identity());
    CHECK(central_c(-2) == derived({{Key::c(2), -1}}));
  }

  TEST_CASE("multiplication examples") {
    DElement lhs = d_mul(d_commutator(generator_a(0), generator_b(1)),
                         d_commutator(generator_b(0), generator_a(1)));
    CHECK(lhs == central_c(1));

    DElement ba = d_mul(generator_b(0), generator_a(0));
    CHECK(ba.a_part.get(0) == 1);
    CHECK(ba.b_part.get(0) == 1);
    CHECK(ba.derived_part.get(Key::ab(0, 0)) == -1);
    CHECK(ba.derived_part.size() == 1);

    DElement x = d_mul(generator_a(2), generator_b(7));
    CHECK(d_mul(x, d_inv(x)) == d_identity());
  }

  TEST_CASE("inverse examples") {
    CHECK(d_inv(generator_a(1)) == d_inv(generator_a(1)));
    CHECK(d_inv(generator_a(1)).a_part.get(1) == -1);
    CHECK(d_inv(central_c(4)) == derived({{Key::c(4), -1}}));
    DElement ab = d_mul(generator_a(0), generator_b(0));
    DElement expected = d_mul(d_inv(generator_b(0)), d_inv(generator_a(0)));
    CHECK(d_inv(ab) == expected);
    CHECK(d_mul(ab, d_inv(ab)) == d_identity());
  }

  TEST_CASE("commutator examples") {
    CHECK(d_commutator(generator_a(0), generator_b(0)) == derived({{Key::ab(0, 0), 1}}));
    DElement x = d_mul(generator_a(3), generator_b(-1));
    CHECK(d_commutator(x, x) == d_identity());
    CHECK(d_commutator(generator_a(2), generator_b(0)) ==
          derived({{Key::ab(0, 2), 1}, {Key::c(2), -1}}));
  }

  TEST_CASE("phi_shift examples") {
    CHECK(phi_shift(generator_a(0), 3) == generator_a(3));
    CHECK(phi_shift(central_c(5), -9) == central_c(5));
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
      DElement x = oracle::evaluate_d_word(oracle::random_d_word(rng, 6, -3, 3));
      CHECK(phi_shift(phi_shift(x, 2), 3) == phi_shift(x, 5));
    }
  }

  TEST_CASE("word problem examples") {
    auto d = SeparabilityFunction::from_table({2});
    CHECK(is_identity_d(d_pow(central_c(1), 2), d));
    CHECK_FALSE(is_identity_d(central_c(1), d));
    CHECK_FALSE(is_identity_d(d_pow(central_c(3), 5), d));
    CHECK_FALSE(is_identity_d(d_pow(central_c(3), 5), SeparabilityFunction::nth_prime()));
  }

  TEST_CASE("membership in C and D'") {
    CHECK(is_in_C(central_c(7)));
    CHECK_FALSE(is_in_C(d_commutator(generator_a(0), generator_b(0))));
    DElement x = d_mul(central_c(1), d_commutator(generator_a(0), generator_a(1)));
    CHECK(is_in_derived(x));
    CHECK_FALSE(is_in_C(x));
    CHECK_FALSE(is_in_derived(generator_b(2)));
  }

  TEST_CASE("collection agrees with the free nilpotent oracle") {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 400; ++k) {
      auto w = oracle::random_d_word(rng, 1 + rng() % 12, -4, 4);
      CHECK(oracle::evaluate_d_word(w) == oracle::collect(w));
    }
    // Relations checked against the oracle directly.
    for (Index i = -2; i <= 2; ++i) {
      std::vector<oracle::Letter> w{{{false, i}, 1}, {{true, 0}, 1}, {{false, i}, -1}, {{true, 0}, -1}};
      CHECK(d_commutator(generator_a(i), generator_b(0)) == oracle::collect(w));
    }
    std::vector<oracle::Letter> neg{{{false, 0}, 1}, {{true, -2}, 1}, {{false, 0}, -1}, {{true, -2}, -1},
                                    {{true, 0}, 1},  {{false, -2}, 1}, {{true, 0}, -1}, {{false, -2}, -1}};
    CHECK(oracle::collect(neg) == central_c(-2));
  }

  TEST_CASE("presentation relations hold") {
    std::vector<DElement> gens;
    for (Index i = -2; i <= 2; ++i) {
      gens.push_back(generator_a(i));
      gens.push_back(generator_b(i));
    }
    for (const auto& x : gens)
      for (const auto& y : gens)
        for (const auto& z : gens) CHECK(d_commutator(d_commutator(x, y), z) == d_identity());
    for (Index i = -4; i <= 4; ++i)
      for (Index j = -4; j <= 4; ++j)
        CHECK(d_mul(d_commutator(generator_a(i), generator_b(j)),
                    d_commutator(generator_b(i), generator_a(j))) == central_c(j - i));
  }

  TEST_CASE("group laws on random elements") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
      DElement x = oracle::evaluate_d_word(oracle::random_d_word(rng, 6, -3, 3));
      DElement y = oracle::evaluate_d_word(oracle::random_d_word(rng, 6, -3, 3));
      DElement z = oracle::evaluate_d_word(oracle::random_d_word(rng, 6, -3, 3));
      Index n = static_cast<Index>(rng() % 9) - 4;
      CHECK(d_mul(d_mul(x, y), z) == d_mul(x, d_mul(y, z)));
      CHECK(d_commutator(x, y) == d_inv(d_commutator(y, x)));
      CHECK(d_commutator(d_mul(x, z), y) == d_mul(d_commutator(x, y), d_commutator(z, y)));
      CHECK(phi_shift(d_mul(x, y), n) == d_mul(phi_shift(x, n), phi_shift(y, n)));
      CHECK(d_mul(x, d_inv(x)) == d_identity());
    }
    for (Index k = 1; k <= 10; ++k) CHECK(d_mul(central_c(k), central_c(-k)) == d_identity());
  }

  TEST_CASE("commutators landing in C vanish") {
    std::vector<SeparabilityFunction> ds{SeparabilityFunction::from_table({2}),
                                         SeparabilityFunction::from_table({2, 31, 127}),
                                         SeparabilityFunction::nth_prime()};
    std::mt19937_64 rng(99);
    int in_c = 0;
    for (int k = 0; k < 600; ++k) {
      DElement x = oracle::evaluate_d_word(oracle::random_d_word(rng, 1 + rng() % 8, -2, 2));
      DElement y = oracle::evaluate_d_word(oracle::random_d_word(rng, 1 + rng() % 8, -2, 2));
      if (k % 3 == 0) y = d_mul(x, central_c(1 + static_cast<Index>(rng() % 3)));
      DElement c = d_commutator(x, y);
      if (!is_in_C(c)) continue;
      ++in_c;
      for (const auto& d : ds) CHECK(is_identity_d(c, d));
    }
    CHECK(in_c > 100);
  }

  TEST_CASE("lazy central reduction") {
    auto d = SeparabilityFunction::from_table({2, 31});
    DElement x = d_pow(central_c(2), 62);
    CHECK(is_identity_d(x, d));
    CHECK(reduce_central(d_pow(central_c(2), 33), d) == d_pow(central_c(2), 2));
    CHECK(reduce_central(d_pow(central_c(2), -1), d) == d_pow(central_c(2), -1));
    CHECK(reduce_central(d_pow(central_c(2), -32), d) == d_pow(central_c(2), 30));
    auto obs = central_obstruction(d_mul(central_c(3), d_pow(central_c(1), 2)), d);
    REQUIRE(obs.has_value());
    CHECK(obs->first == 3);
    CHECK(power_of_two_exponent(8) == std::optional<std::uint64_t>(3));
    CHECK_FALSE(power_of_two_exponent(6).has_value());
  }
}
