#pragma once

// Normal forms and collection for the 2-step nilpotent group D generated by
// a_i, b_i (i in Z) with central elements c_k defined by
// [a_i,b_j][b_i,a_j] = c_{j-i}.
//
// Normal form: (ascending a-powers) (ascending b-powers) (derived part).
// Derived coordinates use the basis
//   AA(i,j) = [a_i,a_j], i<j     BB(i,j) = [b_i,b_j], i<j
//   AB(i,j) = [a_i,b_j], i<=j    C(k)    = c_k,       k>=1
// with [a_i,b_j] = c_{i-j}^{-1} [a_j,b_i] applied whenever i > j.
// Commutator convention: [x,y] = x y x^-1 y^-1.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "conjlab/bigint.hpp"

namespace conjlab {

using Index = std::int64_t;

class SeparabilityFunction;

/// Finitely supported map Z -> Z. Zero entries are never stored.
class ExponentVector {
 public:
  using Map = std::map<Index, BigInt>;

  ExponentVector() = default;
  ExponentVector(std::initializer_list<std::pair<const Index, BigInt>> init);

  [[nodiscard]] BigInt get(Index i) const;
  void add(Index i, const BigInt& v);
  void set(Index i, const BigInt& v);

  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] Index min_index() const { return entries_.begin()->first; }
  [[nodiscard]] Index max_index() const { return entries_.rbegin()->first; }

  [[nodiscard]] ExponentVector shifted(Index n) const;
  [[nodiscard]] ExponentVector negated() const;

  ExponentVector& operator+=(const ExponentVector& other);
  ExponentVector& operator-=(const ExponentVector& other);

  [[nodiscard]] Map::const_iterator begin() const { return entries_.begin(); }
  [[nodiscard]] Map::const_iterator end() const { return entries_.end(); }
  [[nodiscard]] const Map& entries() const noexcept { return entries_; }

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  Map entries_;
};

enum class BasisKind : std::uint8_t { AA, BB, AB, C };

/// A basis element of the derived subgroup. For C(k) only `i` is used.
struct CommutatorBasisElement {
  BasisKind kind = BasisKind::C;
  Index i = 0;
  Index j = 0;

  static CommutatorBasisElement aa(Index i, Index j);
  static CommutatorBasisElement bb(Index i, Index j);
  static CommutatorBasisElement ab(Index i, Index j);
  static CommutatorBasisElement c(Index k);

  [[nodiscard]] bool is_central() const noexcept { return kind == BasisKind::C; }
  [[nodiscard]] CommutatorBasisElement shifted(Index n) const;
  [[nodiscard]] std::string to_string() const;
  static CommutatorBasisElement parse(const std::string& text);

  friend auto operator<=>(const CommutatorBasisElement&,
                          const CommutatorBasisElement&) = default;
};

/// Finitely supported coordinates on the derived subgroup.
class CommutatorCoordinates {
 public:
  using Key = CommutatorBasisElement;
  using Map = std::map<Key, BigInt>;

  [[nodiscard]] BigInt get(const Key& k) const;
  void add(const Key& k, const BigInt& v);
  void set(const Key& k, const BigInt& v);

  // Canonicalizing accumulators for coeff * [x_i, y_j] and coeff * c_k.
  void add_aa(Index i, Index j, const BigInt& coeff);
  void add_bb(Index i, Index j, const BigInt& coeff);
  void add_ab(Index i, Index j, const BigInt& coeff);
  void add_ba(Index i, Index j, const BigInt& coeff) { add_ab(j, i, -coeff); }
  void add_c(Index k, const BigInt& coeff);

  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool has_central() const;
  [[nodiscard]] bool has_noncentral() const;
  [[nodiscard]] CommutatorCoordinates noncentral_part() const;
  [[nodiscard]] CommutatorCoordinates central_part() const;

  [[nodiscard]] CommutatorCoordinates shifted(Index n) const;
  [[nodiscard]] CommutatorCoordinates negated() const;

  CommutatorCoordinates& operator+=(const CommutatorCoordinates& other);
  CommutatorCoordinates& operator-=(const CommutatorCoordinates& other);

  [[nodiscard]] Map::const_iterator begin() const { return entries_.begin(); }
  [[nodiscard]] Map::const_iterator end() const { return entries_.end(); }
  [[nodiscard]] const Map& entries() const noexcept { return entries_; }

  friend bool operator==(const CommutatorCoordinates&,
                         const CommutatorCoordinates&) = default;

 private:
  Map entries_;
};

/// An element of D in normal form.
struct DElement {
  ExponentVector a_part;
  ExponentVector b_part;
  CommutatorCoordinates derived_part;

  friend bool operator==(const DElement&, const DElement&) = default;
};

DElement d_identity();
DElement generator_a(Index i);
DElement generator_b(Index i);
DElement central_c(Index k);

DElement d_mul(const DElement& x, const DElement& y);
DElement d_inv(const DElement& x);
DElement d_pow(const DElement& x, const BigInt& e);
DElement d_commutator(const DElement& x, const DElement& y);
DElement phi_shift(const DElement& x, Index n);

// In-place right multiplication by a_j^e or b_j^e; O(support).
void mul_right_a(DElement& x, Index j, const BigInt& e);
void mul_right_b(DElement& x, Index j, const BigInt& e);

/// [x,y] computed from the abelian parts by bilinearity.
CommutatorCoordinates commutator_form(const ExponentVector& xa,
                                      const ExponentVector& xb,
                                      const ExponentVector& ya,
                                      const ExponentVector& yb);

bool is_in_derived(const DElement& x);
bool is_in_C(const DElement& x);

/// Word problem in G_d restricted to D.
bool is_identity_d(const DElement& x, const SeparabilityFunction& d);

/// Reduces each C(2^j) coordinate with |gamma| >= d(j) into [0, d(j)).
DElement reduce_central(const DElement& x, const SeparabilityFunction& d);

/// For x in C: the first coordinate C(k) = gamma that does not vanish in G_d.
std::optional<std::pair<Index, BigInt>> central_obstruction(
    const DElement& x, const SeparabilityFunction& d);

/// Returns j when k = 2^j with j >= 0.
std::optional<std::uint64_t> power_of_two_exponent(Index k);

std::string to_string(const DElement& x);

}  // namespace conjlab
