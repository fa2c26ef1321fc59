#pragma once

// Finite groups given by multiplication tables, with three distinguished
// elements alpha, beta, tau (candidate images of a_0, b_0, t).
//
// Text format:
//   order <q>
//   <q*q whitespace-separated indices, row-major: entry (x, y) is x*y>
//   alpha <i> beta <i> tau <i>
//
// Permutation format:
//   permutations <degree>
//   alpha <image of 0> ... <image of degree-1>
//   beta ...
//   tau ...
// is closed under multiplication into the table of <alpha, beta, tau>.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "conjlab/quotient.hpp"
#include "conjlab/separability.hpp"

namespace conjlab {

class GroupTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kMaxTableOrder = 2048;

class FiniteGroupTable {
 public:
  using Elem = std::uint32_t;
  using Permutation = std::vector<std::uint32_t>;

  /// Validates the table; throws GroupTableError ("not a group: ...") otherwise.
  FiniteGroupTable(std::uint32_t order, std::vector<Elem> table, Elem alpha, Elem beta, Elem tau,
                   std::uint32_t max_order = kMaxTableOrder);

  /// Either text format, detected from the first word.
  static FiniteGroupTable parse(std::istream& in, std::uint32_t max_order = kMaxTableOrder);
  static FiniteGroupTable load(const std::string& path, std::uint32_t max_order = kMaxTableOrder);
  static FiniteGroupTable from_permutations(const Permutation& alpha, const Permutation& beta,
                                            const Permutation& tau,
                                            std::uint32_t max_order = kMaxTableOrder);
  /// The table of q with alpha, beta, tau the images of a_0, b_0, t. Element
  /// labels are shuffled by `relabel_seed` (0 keeps the enumeration order).
  static FiniteGroupTable from_quotient(const FiniteQuotient& q, std::uint64_t relabel_seed = 0,
                                        std::uint32_t max_order = kMaxTableOrder);

  [[nodiscard]] std::uint32_t order() const noexcept { return order_; }
  [[nodiscard]] Elem identity() const noexcept { return identity_; }
  [[nodiscard]] Elem alpha() const noexcept { return alpha_; }
  [[nodiscard]] Elem beta() const noexcept { return beta_; }
  [[nodiscard]] Elem tau() const noexcept { return tau_; }
  [[nodiscard]] Elem mul(Elem x, Elem y) const { return table_[std::size_t{x} * order_ + y]; }
  [[nodiscard]] Elem inv(Elem x) const { return inverse_[x]; }

  void write(std::ostream& out) const;

 private:
  void validate();

  std::uint32_t order_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  Elem identity_ = 0;
  Elem alpha_, beta_, tau_;
};

struct HomCheckResult {
  bool extends = false;
  /// First violated relation, empty when `extends`.
  std::string failure;
  std::uint64_t multiplications = 0;
};

/// Does a_0 -> alpha, b_0 -> beta, t -> tau extend to a homomorphism G_d -> Q?
/// Every relator family of G_d is checked over the tau-orbit of indices; the
/// powers c_{2^j}^{d(j)} are folded onto residues as in allowed_c_modulus.
HomCheckResult hom_check(const FiniteGroupTable& q, const SeparabilityFunction& d);

}  // namespace conjlab
