#pragma once

// Non-decreasing prime-valued functions d : N -> N with two query entry
// points, each instrumented with an abstract step counter:
//
//   at_least(n, m)  decides d(n) >= m within c * m^2 steps
//   value(n)        computes d(n) within c * d(n)^2 steps
//
// c is step_budget_constant() (default 64, CONJLAB_BUDGET_C overrides).

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "conjlab/bigint.hpp"
#include "conjlab/register_machine.hpp"

namespace conjlab {

struct StepCounter {
  std::uint64_t steps = 0;
};

std::uint64_t step_budget_constant();

/// Trial division; every attempted division is one step.
bool is_prime(std::uint64_t n, StepCounter* counter = nullptr);
bool is_prime(const BigInt& n);
/// Smallest prime strictly greater than n.
std::uint64_t next_prime_after(std::uint64_t n, StepCounter* counter = nullptr);

/// What is known about d on an infinite tail; consumed by the quotient
/// construction, which needs gcds of d over infinite index sets.
struct TailBehavior {
  enum class Kind : std::uint8_t {
    EventuallyConstant,  // d(n) == value for all n >= from
    Unbounded,           // d(n) -> infinity
    Unknown,
  };
  Kind kind = Kind::Unknown;
  std::uint64_t from = 0;
  BigInt value = 0;
};

class SeparabilityFunction {
 public:
  class Impl;

  static SeparabilityFunction constant_prime(std::uint64_t p);
  /// Values are d(0), d(1), ...; the last value repeats forever.
  static SeparabilityFunction from_table(std::vector<std::uint64_t> prefix);
  /// d(n) = (n+1)-th prime.
  static SeparabilityFunction nth_prime();
  /// d(n) = least prime > d_1(n), d_1(n) = max_{k<=n} d_0(k) + sum_{k<=n} steps(k).
  static SeparabilityFunction fast_majorant(RegisterProgram program);
  /// `constant:<p>`, `table:<p1,p2,...>`, `nth-prime`, `program:<path>`,
  /// `demo:<name>`.
  static SeparabilityFunction parse(std::string_view spec);

  [[nodiscard]] bool at_least(std::uint64_t n, const BigInt& m,
                              StepCounter* counter = nullptr) const;
  [[nodiscard]] BigInt value(std::uint64_t n, StepCounter* counter = nullptr) const;
  [[nodiscard]] TailBehavior tail() const;
  [[nodiscard]] const std::string& descriptor() const;

  /// For fast majorants: d_1(n) and d_0(n) (after the running maximum).
  /// Throws for other kinds.
  [[nodiscard]] std::uint64_t majorant_base(std::uint64_t n) const;
  [[nodiscard]] std::uint64_t majorant_input(std::uint64_t n) const;

 private:
  explicit SeparabilityFunction(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

}  // namespace conjlab
