#include "conjlab/nilpotent.hpp"

#include <sstream>
#include <stdexcept>

#include "conjlab/separability.hpp"

namespace conjlab {

// ---------------------------------------------------------------------------
// ExponentVector

ExponentVector::ExponentVector(
    std::initializer_list<std::pair<const Index, BigInt>> init) {
  for (const auto& [i, v] : init) add(i, v);
}

BigInt ExponentVector::get(Index i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? BigInt(0) : it->second;
}

void ExponentVector::add(Index i, const BigInt& v) {
  if (v == 0) return;
  auto [it, inserted] = entries_.try_emplace(i, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) entries_.erase(it);
  }
}

void ExponentVector::set(Index i, const BigInt& v) {
  if (v == 0) {
    entries_.erase(i);
  } else {
    entries_[i] = v;
  }
}

ExponentVector ExponentVector::shifted(Index n) const {
  ExponentVector out;
  for (const auto& [i, v] : entries_) out.entries_.emplace_hint(out.entries_.end(), i + n, v);
  return out;
}

ExponentVector ExponentVector::negated() const {
  ExponentVector out = *this;
  for (auto& [i, v] : out.entries_) v = -v;
  return out;
}

ExponentVector& ExponentVector::operator+=(const ExponentVector& other) {
  for (const auto& [i, v] : other.entries_) add(i, v);
  return *this;
}

ExponentVector& ExponentVector::operator-=(const ExponentVector& other) {
  for (const auto& [i, v] : other.entries_) add(i, -v);
  return *this;
}

// ---------------------------------------------------------------------------
// CommutatorBasisElement

CommutatorBasisElement CommutatorBasisElement::aa(Index i, Index j) {
  if (!(i < j)) throw std::invalid_argument("AA(i,j) requires i < j");
  return {BasisKind::AA, i, j};
}

CommutatorBasisElement CommutatorBasisElement::bb(Index i, Index j) {
  if (!(i < j)) throw std::invalid_argument("BB(i,j) requires i < j");
  return {BasisKind::BB, i, j};
}

CommutatorBasisElement CommutatorBasisElement::ab(Index i, Index j) {
  if (!(i <= j)) throw std::invalid_argument("AB(i,j) requires i <= j");
  return {BasisKind::AB, i, j};
}

CommutatorBasisElement CommutatorBasisElement::c(Index k) {
  if (k < 1) throw std::invalid_argument("C(k) requires k >= 1");
  return {BasisKind::C, k, 0};
}

CommutatorBasisElement CommutatorBasisElement::shifted(Index n) const {
  if (kind == BasisKind::C) return *this;
  return {kind, i + n, j + n};
}

std::string CommutatorBasisElement::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case BasisKind::AA: os << "AA(" << i << "," << j << ")"; break;
    case BasisKind::BB: os << "BB(" << i << "," << j << ")"; break;
    case BasisKind::AB: os << "AB(" << i << "," << j << ")"; break;
    case BasisKind::C: os << "C(" << i << ")"; break;
  }
  return os.str();
}

CommutatorBasisElement CommutatorBasisElement::parse(const std::string& text) {
  auto fail = [&]() -> CommutatorBasisElement {
    throw std::invalid_argument("malformed basis key '" + text + "'");
  };
  auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') return fail();
  std::string head = text.substr(0, open);
  std::string body = text.substr(open + 1, text.size() - open - 2);
  try {
    if (head == "C") {
      std::size_t used = 0;
      Index k = std::stoll(body, &used);
      if (used != body.size()) return fail();
      return c(k);
    }
    auto comma = body.find(',');
    if (comma == std::string::npos) return fail();
    std::size_t used_i = 0, used_j = 0;
    std::string si = body.substr(0, comma), sj = body.substr(comma + 1);
    Index i = std::stoll(si, &used_i);
    Index j = std::stoll(sj, &used_j);
    if (used_i != si.size() || used_j != sj.size()) return fail();
    if (head == "AA") return aa(i, j);
    if (head == "BB") return bb(i, j);
    if (head == "AB") return ab(i, j);
  } catch (const std::logic_error&) {
    return fail();
  }
  return fail();
}

// ---------------------------------------------------------------------------
// CommutatorCoordinates

BigInt CommutatorCoordinates::get(const Key& k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? BigInt(0) : it->second;
}

void CommutatorCoordinates::add(const Key& k, const BigInt& v) {
  if (v == 0) return;
  auto [it, inserted] = entries_.try_emplace(k, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) entries_.erase(it);
  }
}

void CommutatorCoordinates::set(const Key& k, const BigInt& v) {
  if (v == 0) {
    entries_.erase(k);
  } else {
    entries_[k] = v;
  }
}

void CommutatorCoordinates::add_aa(Index i, Index j, const BigInt& coeff) {
  if (i == j || coeff == 0) return;
  if (i < j) {
    add({BasisKind::AA, i, j}, coeff);
  } else {
    add({BasisKind::AA, j, i}, -coeff);
  }
}

void CommutatorCoordinates::add_bb(Index i, Index j, const BigInt& coeff) {
  if (i == j || coeff == 0) return;
  if (i < j) {
    add({BasisKind::BB, i, j}, coeff);
  } else {
    add({BasisKind::BB, j, i}, -coeff);
  }
}

void CommutatorCoordinates::add_ab(Index i, Index j, const BigInt& coeff) {
  if (coeff == 0) return;
  if (i <= j) {
    add({BasisKind::AB, i, j}, coeff);
  } else {
    // [a_i,b_j] = c_{i-j}^{-1} [a_j,b_i]
    add({BasisKind::AB, j, i}, coeff);
    add({BasisKind::C, i - j, 0}, -coeff);
  }
}

void CommutatorCoordinates::add_c(Index k, const BigInt& coeff) {
  if (k == 0 || coeff == 0) return;
  if (k > 0) {
    add({BasisKind::C, k, 0}, coeff);
  } else {
    add({BasisKind::C, -k, 0}, -coeff);
  }
}

bool CommutatorCoordinates::has_central() const {
  return !entries_.empty() && entries_.rbegin()->first.kind == BasisKind::C;
}

bool CommutatorCoordinates::has_noncentral() const {
  return !entries_.empty() && entries_.begin()->first.kind != BasisKind::C;
}

CommutatorCoordinates CommutatorCoordinates::noncentral_part() const {
  CommutatorCoordinates out;
  for (const auto& [k, v] : entries_)
    if (!k.is_central()) out.entries_.emplace_hint(out.entries_.end(), k, v);
  return out;
}

CommutatorCoordinates CommutatorCoordinates::central_part() const {
  CommutatorCoordinates out;
  for (const auto& [k, v] : entries_)
    if (k.is_central()) out.entries_.emplace_hint(out.entries_.end(), k, v);
  return out;
}

CommutatorCoordinates CommutatorCoordinates::shifted(Index n) const {
  CommutatorCoordinates out;
  for (const auto& [k, v] : entries_) out.entries_.emplace(k.shifted(n), v);
  return out;
}

CommutatorCoordinates CommutatorCoordinates::negated() const {
  CommutatorCoordinates out = *this;
  for (auto& [k, v] : out.entries_) v = -v;
  return out;
}

CommutatorCoordinates& CommutatorCoordinates::operator+=(
    const CommutatorCoordinates& other) {
  for (const auto& [k, v] : other.entries_) add(k, v);
  return *this;
}

CommutatorCoordinates& CommutatorCoordinates::operator-=(
    const CommutatorCoordinates& other) {
  for (const auto& [k, v] : other.entries_) add(k, -v);
  return *this;
}

// ---------------------------------------------------------------------------
// DElement

DElement d_identity() { return {}; }

DElement generator_a(Index i) {
  DElement x;
  x.a_part.add(i, 1);
  return x;
}

DElement generator_b(Index i) {
  DElement x;
  x.b_part.add(i, 1);
  return x;
}

DElement central_c(Index k) {
  DElement x;
  x.derived_part.add_c(k, 1);
  return x;
}

namespace {

// Collection correction for (A_x B_x)(A_y B_y) -> A B [derived].
void add_collection_terms(CommutatorCoordinates& out, const ExponentVector& xa,
                          const ExponentVector& xb, const ExponentVector& ya,
                          const ExponentVector& yb) {
  // A_x A_y: every a_i of x with i > j must pass a_j of y.
  for (const auto& [j, ej] : ya) {
    for (auto it = xa.entries().upper_bound(j); it != xa.end(); ++it)
      out.add_aa(it->first, j, it->second * ej);
  }
  // B_x A_y = A_y B_x [B_x, A_y]
  for (const auto& [i, ei] : xb) {
    for (const auto& [j, ej] : ya) out.add_ab(j, i, -(ei * ej));
  }
  for (const auto& [j, ej] : yb) {
    for (auto it = xb.entries().upper_bound(j); it != xb.end(); ++it)
      out.add_bb(it->first, j, it->second * ej);
  }
}

}  // namespace

DElement d_mul(const DElement& x, const DElement& y) {
  DElement out;
  out.a_part = x.a_part;
  out.a_part += y.a_part;
  out.b_part = x.b_part;
  out.b_part += y.b_part;
  out.derived_part = x.derived_part;
  out.derived_part += y.derived_part;
  add_collection_terms(out.derived_part, x.a_part, x.b_part, y.a_part, y.b_part);
  return out;
}

void mul_right_a(DElement& x, Index j, const BigInt& e) {
  if (e == 0) return;
  for (auto it = x.a_part.entries().upper_bound(j); it != x.a_part.end(); ++it)
    x.derived_part.add_aa(it->first, j, it->second * e);
  for (const auto& [i, ei] : x.b_part) x.derived_part.add_ab(j, i, -(ei * e));
  x.a_part.add(j, e);
}

void mul_right_b(DElement& x, Index j, const BigInt& e) {
  if (e == 0) return;
  for (auto it = x.b_part.entries().upper_bound(j); it != x.b_part.end(); ++it)
    x.derived_part.add_bb(it->first, j, it->second * e);
  x.b_part.add(j, e);
}

DElement d_inv(const DElement& x) {
  DElement out;
  out.a_part = x.a_part.negated();
  out.b_part = x.b_part.negated();
  CommutatorCoordinates corr;
  add_collection_terms(corr, x.a_part, x.b_part, out.a_part, out.b_part);
  out.derived_part = x.derived_part.negated();
  out.derived_part -= corr;
  return out;
}

DElement d_pow(const DElement& x, const BigInt& e) {
  DElement base = e < 0 ? d_inv(x) : x;
  BigInt k = big_abs(e);
  DElement acc;
  while (k > 0) {
    if ((k & 1) != 0) acc = d_mul(acc, base);
    k >>= 1;
    if (k > 0) base = d_mul(base, base);
  }
  return acc;
}

CommutatorCoordinates commutator_form(const ExponentVector& xa,
                                      const ExponentVector& xb,
                                      const ExponentVector& ya,
                                      const ExponentVector& yb) {
  CommutatorCoordinates out;
  for (const auto& [i, ei] : xa) {
    for (const auto& [j, ej] : ya) out.add_aa(i, j, ei * ej);
    for (const auto& [j, ej] : yb) out.add_ab(i, j, ei * ej);
  }
  for (const auto& [i, ei] : xb) {
    for (const auto& [j, ej] : ya) out.add_ba(i, j, ei * ej);
    for (const auto& [j, ej] : yb) out.add_bb(i, j, ei * ej);
  }
  return out;
}

DElement d_commutator(const DElement& x, const DElement& y) {
  DElement out;
  out.derived_part = commutator_form(x.a_part, x.b_part, y.a_part, y.b_part);
  return out;
}

DElement phi_shift(const DElement& x, Index n) {
  if (n == 0) return x;
  return {x.a_part.shifted(n), x.b_part.shifted(n), x.derived_part.shifted(n)};
}

bool is_in_derived(const DElement& x) {
  return x.a_part.empty() && x.b_part.empty();
}

bool is_in_C(const DElement& x) {
  return is_in_derived(x) && !x.derived_part.has_noncentral();
}

std::optional<std::uint64_t> power_of_two_exponent(Index k) {
  if (k <= 0 || (k & (k - 1)) != 0) return std::nullopt;
  std::uint64_t j = 0;
  while ((Index{1} << j) != k) ++j;
  return j;
}

namespace {

// Whether gamma * c_k vanishes in G_d; d(j) is only evaluated when it is
// known not to exceed |gamma|.
bool central_coordinate_vanishes(Index k, const BigInt& gamma,
                                 const SeparabilityFunction& d) {
  if (gamma == 0) return true;
  auto j = power_of_two_exponent(k);
  if (!j) return false;
  BigInt mag = big_abs(gamma);
  if (d.at_least(*j, mag + 1)) return false;
  return gamma % d.value(*j) == 0;
}

}  // namespace

std::optional<std::pair<Index, BigInt>> central_obstruction(
    const DElement& x, const SeparabilityFunction& d) {
  for (const auto& [key, gamma] : x.derived_part) {
    if (!key.is_central()) continue;
    if (!central_coordinate_vanishes(key.i, gamma, d)) return std::pair{key.i, gamma};
  }
  return std::nullopt;
}

bool is_identity_d(const DElement& x, const SeparabilityFunction& d) {
  if (!is_in_C(x)) return false;
  return !central_obstruction(x, d).has_value();
}

DElement reduce_central(const DElement& x, const SeparabilityFunction& d) {
  DElement out = x;
  for (const auto& [key, gamma] : x.derived_part) {
    if (!key.is_central()) continue;
    auto j = power_of_two_exponent(key.i);
    if (!j) continue;
    if (d.at_least(*j, big_abs(gamma) + 1)) continue;
    out.derived_part.set(key, floor_mod(gamma, d.value(*j)));
  }
  return out;
}

std::string to_string(const DElement& x) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " ";
    first = false;
  };
  for (const auto& [i, e] : x.a_part) {
    sep();
    os << "a[" << i << "]^" << e;
  }
  for (const auto& [i, e] : x.b_part) {
    sep();
    os << "b[" << i << "]^" << e;
  }
  for (const auto& [k, e] : x.derived_part) {
    sep();
    os << k.to_string() << "^" << e;
  }
  if (first) os << "1";
  return os.str();
}

}  // namespace conjlab
