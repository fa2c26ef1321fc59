#pragma once

// Conjugacy in G_d. Convention: g conjugates g1 to g2 when g^-1 g1 g = g2.
//
// The decision runs in two stages. Modulo C a witness is found by solving
// linear equations over the abelian and derived coordinates; the remaining
// difference lies in C and is settled by the word problem.

#include <optional>
#include <string>
#include <utility>

#include "conjlab/gd_group.hpp"
#include "conjlab/linear_system.hpp"

namespace conjlab {

/// Some h with [h, h1] == target modulo C, or nullopt when none exists.
/// Requires target in D' (empty a/b parts).
std::optional<DElement> solve_commutator_equation(const DElement& h1, const DElement& target);

/// Same equation over the finite window of unknowns described in the README,
/// solved by Hermite reduction. Slow; kept as an independent route.
std::optional<DElement> solve_commutator_equation_hnf(const DElement& h1,
                                                      const DElement& target);

/// The window system used by solve_commutator_equation_hnf. Columns are
/// x_lo..x_hi followed by y_lo..y_hi.
struct CommutatorWindowSystem {
  Index lo = 0;
  Index hi = -1;
  IntegerLinearSystem system;
};
CommutatorWindowSystem commutator_window_system(const DElement& h1, const DElement& target);

/// (h_a, h_b) with h - phi_n(h) == delta coordinatewise; nullopt when some
/// residue class of delta mod n has a nonzero sum. Requires n != 0.
std::optional<std::pair<ExponentVector, ExponentVector>> solve_twisted_abelian(
    const ExponentVector& delta_a, const ExponentVector& delta_b, Index n);

/// h' with h' - phi_n(h') == delta on the non-central basis; nullopt when some
/// phi_n-orbit sum is nonzero. Requires n != 0 and no C entries in delta.
std::optional<CommutatorCoordinates> solve_twisted_derived(const CommutatorCoordinates& delta,
                                                           Index n);

enum class NonConjugacyReason : std::uint8_t {
  TExponentMismatch,
  AbelianizationMismatch,
  TwistedUnsolvable,
  CentralObstruction,
};

std::string to_string(NonConjugacyReason r);

struct ModCResult {
  std::optional<GElement> witness;
  NonConjugacyReason reason = NonConjugacyReason::TExponentMismatch;  // when no witness
};

/// A witness g with g^-1 g1 g == g2 modulo C, or the reason none exists.
ModCResult conj_mod_C_detailed(const GElement& g1, const GElement& g2);
std::optional<GElement> conj_mod_C(const GElement& g1, const GElement& g2);

struct ConjugacyCertificate {
  enum class Verdict : std::uint8_t { Conjugate, NonConjugate };

  Verdict verdict = Verdict::NonConjugate;
  std::optional<GElement> witness;
  std::optional<NonConjugacyReason> reason;
  // For CentralObstruction: the coordinate C(k) = gamma that survives.
  Index obstruction_k = 0;
  BigInt obstruction_gamma = 0;

  [[nodiscard]] bool conjugate() const noexcept { return verdict == Verdict::Conjugate; }
  [[nodiscard]] std::string describe() const;
};

ConjugacyCertificate conjugacy_decide(const GElement& g1, const GElement& g2,
                                      const SeparabilityFunction& d);

/// Re-checks a Conjugate certificate by multiplication.
bool verify_certificate(const ConjugacyCertificate& cert, const GElement& g1,
                        const GElement& g2, const SeparabilityFunction& d);

}  // namespace conjlab
