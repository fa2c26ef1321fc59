#pragma once

// Finite quotients of G_d.
//
// Folding indices mod I gives G_{d,I}: generators a_i, b_i, c_k with i, k in
// Z/I and t^I = 1. There c_0 = 1, c_{-k} = c_k^-1, and so c_{I/2} has order
// at most 2 when I is even. The central part is therefore indexed by classes
// k = 1..floor(I/2).
//
// Truncating every exponent mod m gives the finite group Q(I, m). Each
// c-class k gets modulus gcd(m, d(j) for all j with 2^j = +-k mod I), with an
// extra factor 2 when 2k = 0 mod I. Elements are stored as coordinates
// (a-part, b-part, derived part, t) with the derived basis
//   AA(i,j), BB(i,j) for 0 <= i < j < I;  AB(i,j) for 0 <= i <= j < I;
//   C(k) for 1 <= k <= I/2.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conjlab/gd_group.hpp"

namespace conjlab {

struct FoldTerm {
  std::size_t pos;
  int coeff;  // +1 or -1
};

/// Basis bookkeeping for the folded derived subgroup.
class FoldedBasis {
 public:
  explicit FoldedBasis(Index I);

  [[nodiscard]] Index index_modulus() const noexcept { return I_; }
  [[nodiscard]] std::size_t derived_size() const noexcept { return keys_.size(); }
  [[nodiscard]] std::size_t noncentral_size() const noexcept { return noncentral_; }
  [[nodiscard]] const CommutatorBasisElement& key(std::size_t pos) const { return keys_[pos]; }
  /// Position of C(k) for 1 <= k <= I/2.
  [[nodiscard]] std::size_t c_position(Index k) const;

  // Canonical terms of [a_i,a_j], [b_i,b_j], [a_i,b_j], c_k (indices reduced mod I).
  [[nodiscard]] const std::vector<FoldTerm>& aa(Index i, Index j) const;
  [[nodiscard]] const std::vector<FoldTerm>& bb(Index i, Index j) const;
  [[nodiscard]] const std::vector<FoldTerm>& ab(Index i, Index j) const;
  [[nodiscard]] std::vector<FoldTerm> c(Index k, int sign = 1) const;
  /// Image of a folded basis element of D' under phi_n.
  [[nodiscard]] const std::vector<FoldTerm>& phi(std::size_t pos, Index n) const;

  [[nodiscard]] Index fold(Index i) const { return floor_mod(i, I_); }

 private:
  Index I_;
  std::vector<CommutatorBasisElement> keys_;
  std::size_t noncentral_ = 0;
  std::vector<std::vector<FoldTerm>> aa_, bb_, ab_;     // I x I by residues
  std::vector<std::vector<std::vector<FoldTerm>>> phi_;  // [n][pos]
};

/// The image of g in G_{0,I} (indices folded, t^I = 1; no truncation).
struct FoldedElement {
  Index index_modulus = 1;
  std::vector<BigInt> a;        // by residue
  std::vector<BigInt> b;        // by residue
  std::vector<BigInt> derived;  // by FoldedBasis position
  Index t = 0;

  friend bool operator==(const FoldedElement&, const FoldedElement&) = default;
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] std::string to_string(const FoldedBasis& basis) const;
};

FoldedElement project_mod_I(const GElement& g, Index I);

// ---------------------------------------------------------------------------

struct FiniteQuotientSpec {
  Index index_modulus = 1;
  std::int64_t exponent_modulus = 2;
  /// c_moduli[k] for k = 1..I/2; c_moduli[0] is unused and kept at 1.
  std::vector<std::int64_t> c_moduli{1};

  /// `Q(I=<int>,m=<int>)`
  [[nodiscard]] std::string label() const;
  [[nodiscard]] BigInt order() const;

  friend bool operator==(const FiniteQuotientSpec&, const FiniteQuotientSpec&) = default;
};

/// Largest modulus the c-class k of Q(I, m) admits while staying a quotient
/// of G_d. Infinite fold sets use TailBehavior: an eventually constant d
/// contributes its tail value, anything else forces modulus 1.
std::int64_t allowed_c_modulus(Index I, std::int64_t m, Index k, const SeparabilityFunction& d);

/// Q(I, m) with every c-class at its largest admissible modulus.
FiniteQuotientSpec make_spec(Index I, std::int64_t m, const SeparabilityFunction& d);

/// True iff each declared c-modulus divides the admissible one (and I >= 1,
/// m >= 2), i.e. the coordinate map from G_d is a homomorphism.
bool quotient_is_well_defined(const FiniteQuotientSpec& spec, const SeparabilityFunction& d);

/// Parses `Q(I=<int>,m=<int>)` into (I, m).
std::pair<Index, std::int64_t> parse_spec_label(std::string_view text);

class FiniteQuotient {
 public:
  struct Element {
    std::vector<std::int64_t> v;  // a-part then b-part, by residue
    std::vector<std::int64_t> w;  // derived coordinates
    std::int64_t t = 0;
    friend bool operator==(const Element&, const Element&) = default;
  };

  explicit FiniteQuotient(FiniteQuotientSpec spec);

  [[nodiscard]] const FiniteQuotientSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] const FoldedBasis& basis() const noexcept { return basis_; }
  [[nodiscard]] BigInt order() const { return spec_.order(); }
  [[nodiscard]] std::int64_t modulus(std::size_t derived_pos) const { return moduli_[derived_pos]; }

  [[nodiscard]] Element identity() const;
  [[nodiscard]] Element mul(const Element& x, const Element& y) const;
  [[nodiscard]] Element inv(const Element& x) const;
  /// by^-1 x by
  [[nodiscard]] Element conj(const Element& x, const Element& by) const;
  [[nodiscard]] Element phi(const Element& x, Index n) const;
  [[nodiscard]] bool is_identity(const Element& x) const { return x == identity(); }

  [[nodiscard]] Element generator_a(Index i) const;
  [[nodiscard]] Element generator_b(Index i) const;
  [[nodiscard]] Element generator_t() const;
  [[nodiscard]] Element image(const GElement& g) const;

  /// Mixed-radix enumeration; requires order() to fit in 64 bits.
  [[nodiscard]] Element element_at(std::uint64_t index) const;

  [[nodiscard]] std::string to_string(const Element& x) const;

  /// D-part product with t-parts ignored.
  [[nodiscard]] Element d_mul(const Element& x, const Element& y) const;

 private:
  void reduce(Element& x) const;
  void add_terms(std::vector<std::int64_t>& w, const std::vector<FoldTerm>& terms,
                 std::int64_t coeff) const;
  void add_collection(std::vector<std::int64_t>& w, const std::vector<std::int64_t>& x,
                      const std::vector<std::int64_t>& y) const;

  FiniteQuotientSpec spec_;
  FoldedBasis basis_;
  std::vector<std::int64_t> moduli_;
};

/// finite_image with the homomorphism precondition checked.
FiniteQuotient::Element finite_image(const GElement& g, const FiniteQuotientSpec& spec,
                                     const SeparabilityFunction& d);

/// Does some element of Q conjugate x to y? Throws if order() > max_order.
/// Small quotients are searched exhaustively, larger ones by solving the
/// conjugacy equations exactly as linear systems over Z/m.
bool finite_conjugate(const FiniteQuotient& q, const FiniteQuotient::Element& x,
                      const FiniteQuotient::Element& y, const BigInt& max_order);
bool finite_conjugate_exhaustive(const FiniteQuotient& q, const FiniteQuotient::Element& x,
                                 const FiniteQuotient::Element& y);
bool finite_conjugate_structured(const FiniteQuotient& q, const FiniteQuotient::Element& x,
                                 const FiniteQuotient::Element& y);

/// Orders at or below this are searched exhaustively by finite_conjugate.
inline constexpr std::uint64_t kExhaustiveOrderLimit = 1 << 14;

/// Is A x = b solvable where row r is read modulo row_moduli[r] (each
/// dividing m)? Entries are taken mod m.
bool solvable_mod(const std::vector<std::vector<std::int64_t>>& a,
                  const std::vector<std::int64_t>& b,
                  const std::vector<std::int64_t>& row_moduli, std::int64_t m);

}  // namespace conjlab
