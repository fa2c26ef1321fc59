#include <doctest.h>

#include <string>

#include "conjlab/register_machine.hpp"
#include "conjlab/separability.hpp"

using namespace conjlab;

namespace {

bool trial_division(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

// d_1(n) recomputed from the interpreter: max_{k<=n} d_0(k) + sum_{k<=n} steps(k).
std::uint64_t d1_reference(const RegisterProgram& p, std::uint64_t n) {
  std::uint64_t best = 0, steps = 0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    auto r = p.run(k, std::uint64_t{1} << 40);
    REQUIRE(r.halted);
    best = std::max(best, r.output);
    steps += r.steps;
  }
  return best + steps;
}

}  // namespace

TEST_SUITE("separability") {
  TEST_CASE("primality and next prime") {
    CHECK(is_prime(std::uint64_t{2}));
    CHECK_FALSE(is_prime(std::uint64_t{9}));
    CHECK(is_prime(std::uint64_t{8191}));
    CHECK_THROWS(is_prime(std::uint64_t{1}));
    for (std::uint64_t n = 2; n < 3000; ++n) CHECK(is_prime(n) == trial_division(n));
    CHECK(next_prime_after(1) == 2);
    CHECK(next_prime_after(7) == 11);
    CHECK(next_prime_after(1020) == 1021);
    CHECK(next_prime_after(0) == 2);
  }

  TEST_CASE("builtin functions") {
    auto table = SeparabilityFunction::from_table({2, 3, 5, 7});
    CHECK(table.at_least(2, 5));
    CHECK_FALSE(SeparabilityFunction::from_table({2}).at_least(0, 3));
    CHECK(table.value(10) == 7);
    CHECK(SeparabilityFunction::nth_prime().value(3) == 7);
    CHECK(SeparabilityFunction::constant_prime(13).value(100) == 13);
    CHECK_THROWS(SeparabilityFunction::from_table({2, 4}));
    CHECK_THROWS(SeparabilityFunction::constant_prime(15));
    CHECK(SeparabilityFunction::parse("table:2,31").value(1) == 31);
    CHECK(SeparabilityFunction::parse("nth-prime").value(0) == 2);
    CHECK_THROWS(SeparabilityFunction::parse("bogus:1"));
  }

  TEST_CASE("builtins are prime-valued and non-decreasing") {
    for (const auto& d : {SeparabilityFunction::nth_prime(), SeparabilityFunction::constant_prime(13),
                          SeparabilityFunction::from_table({2, 31, 127, 1021, 8191})}) {
      BigInt prev = 0;
      for (std::uint64_t n = 0; n <= 32; ++n) {
        BigInt v = d.value(n);
        CHECK(is_prime(v));
        CHECK(v >= prev);
        prev = v;
      }
    }
  }

  TEST_CASE("tail metadata") {
    auto t = SeparabilityFunction::from_table({2, 31, 127}).tail();
    CHECK(t.kind == TailBehavior::Kind::EventuallyConstant);
    CHECK(t.value == 127);
    CHECK(SeparabilityFunction::nth_prime().tail().kind == TailBehavior::Kind::Unbounded);
  }

  TEST_CASE("fast majorants of the bundled programs") {
    const std::uint64_t c = step_budget_constant();
    CHECK(c == 64);
    for (const auto& name : RegisterProgram::demo_names()) {
      if (name == "exp2") continue;  // d grows too fast for exhaustive budget checks
      auto prog = RegisterProgram::demo(name);
      auto d = SeparabilityFunction::fast_majorant(prog);
      BigInt prev = 0;
      for (std::uint64_t n = 0; n <= 32; ++n) {
        StepCounter vc;
        BigInt v = d.value(n, &vc);
        CHECK(is_prime(v));
        CHECK(v >= prev);
        prev = v;
        auto d0 = prog.run(n, std::uint64_t{1} << 40).output;
        CHECK(v >= d0);
        CHECK(v == next_prime_after(d1_reference(prog, n)));
        CHECK(BigInt(vc.steps) <= c * v * v);
        for (const BigInt& m : std::vector<BigInt>{1, v - 1, v, v + 1, 2 * v}) {
          StepCounter ac;
          CHECK(d.at_least(n, m, &ac) == (v >= m));
          CHECK(BigInt(ac.steps) <= c * m * m + c);
        }
      }
    }
  }

  TEST_CASE("majorant from a program file") {
    auto d = SeparabilityFunction::parse(std::string("program:") + CONJLAB_PROGRAMS_DIR + "/double.rm");
    auto e = SeparabilityFunction::parse("demo:double");
    for (std::uint64_t n = 0; n < 8; ++n) CHECK(d.value(n) == e.value(n));
  }

  TEST_CASE("register machine") {
    auto p = RegisterProgram::parse("loop:\n dec r0 done\n inc r1\n dec r15 loop\ndone:\n halt\n");
    auto r = p.run(5, 1000);
    CHECK(r.halted);
    CHECK(r.output == 5);
    CHECK(r.steps == 5 * 3 + 2);
    CHECK_FALSE(p.run(5, 3).halted);
    CHECK_THROWS_AS(RegisterProgram::parse("jump r1"), ProgramError);
    CHECK(RegisterProgram::demo("square").run(7, 1 << 20).output == 49);
    CHECK(RegisterProgram::demo("exp2").run(5, 1 << 20).output == 32);
  }
}
