#include "conjlab/conjugacy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "conjlab/separability.hpp"

namespace conjlab {

namespace {

using RationalVector = std::map<Index, BigRational>;

BigInt numerator_of(const BigRational& q) { return boost::multiprecision::numerator(q); }
BigInt denominator_of(const BigRational& q) { return boost::multiprecision::denominator(q); }

BigInt gcd_big(BigInt a, BigInt b) {
  a = big_abs(a);
  b = big_abs(b);
  while (b != 0) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}

void put(RationalVector& v, Index i, const BigRational& q) {
  if (q == 0) {
    v.erase(i);
  } else {
    v[i] = q;
  }
}

BigRational at(const RationalVector& v, Index i) {
  auto it = v.find(i);
  return it == v.end() ? BigRational(0) : it->second;
}

// r with r*u_k == c_k (mod m) for every pair, smallest non-negative.
std::optional<BigInt> solve_congruences(const std::vector<std::pair<BigInt, BigInt>>& eqs,
                                        const BigInt& m) {
  BigInt r0 = 0;
  BigInt step = 1;
  for (const auto& [u, c] : eqs) {
    BigInt a = floor_mod(u * step, m);
    BigInt b = floor_mod(c - u * r0, m);
    BigInt s, t;
    BigInt g = ext_gcd(a, m, s, t);
    if (b % g != 0) return std::nullopt;
    BigInt mg = m / g;
    BigInt z = mg == 1 ? BigInt(0) : floor_mod((b / g) * s, mg);
    r0 += step * z;
    step *= mg;
    r0 = floor_mod(r0, step);
  }
  return r0;
}

CommutatorCoordinates noncentral(const DElement& x) { return x.derived_part.noncentral_part(); }

void require_derived(const DElement& target) {
  if (!target.a_part.empty() || !target.b_part.empty())
    throw std::invalid_argument("commutator target must lie in D'");
}

}  // namespace

// [k, h1] for k = (x, y) and h1 = (alpha, beta), modulo C, has coordinates
//   AA(p,q) = x_p alpha_q - x_q alpha_p
//   BB(p,q) = y_p beta_q - y_q beta_p
//   AB{p,q} = x_p beta_q + x_q beta_p - y_p alpha_q - y_q alpha_p   (p < q)
//   AB{p,p} = x_p beta_p - y_p alpha_p
// With i1 the least index of h1, the rows that pair an index with i1 fix every
// unknown once one coordinate at i1 is chosen, and moving that coordinate
// only adds multiples of h1 itself. So a rational solution line is found
// directly, integer points on it by congruences, and the full system is
// checked once at the end.
std::optional<DElement> solve_commutator_equation(const DElement& h1, const DElement& target) {
  require_derived(target);
  const CommutatorCoordinates t = noncentral(target);
  const ExponentVector& alpha = h1.a_part;
  const ExponentVector& beta = h1.b_part;
  if (alpha.empty() && beta.empty()) {
    if (t.empty()) return d_identity();
    return std::nullopt;
  }
  Index i1 = alpha.empty() ? beta.min_index()
                           : (beta.empty() ? alpha.min_index()
                                           : std::min(alpha.min_index(), beta.min_index()));

  auto t_aa = [&t](Index p, Index q) {
    return p < q ? t.get(CommutatorBasisElement::aa(p, q))
                 : BigInt(-t.get(CommutatorBasisElement::aa(q, p)));
  };
  auto t_bb = [&t](Index p, Index q) {
    return p < q ? t.get(CommutatorBasisElement::bb(p, q))
                 : BigInt(-t.get(CommutatorBasisElement::bb(q, p)));
  };
  auto t_ab = [&t](Index p, Index q) {
    return t.get(CommutatorBasisElement::ab(std::min(p, q), std::max(p, q)));
  };

  std::set<Index> indices;
  for (const auto& [i, e] : alpha) indices.insert(i);
  for (const auto& [i, e] : beta) indices.insert(i);
  for (const auto& [key, v] : t) {
    if (key.i == i1) indices.insert(key.j);
    if (key.j == i1) indices.insert(key.i);
  }
  indices.erase(i1);

  RationalVector x;
  RationalVector y;
  const BigInt a1 = alpha.get(i1);
  const BigInt b1 = beta.get(i1);
  if (a1 != 0) {
    // free coordinate x_{i1} = 0
    BigRational piv(a1);
    put(y, i1, BigRational(-t_ab(i1, i1)) / piv);
    for (Index p : indices) put(x, p, BigRational(t_aa(p, i1)) / piv);
    for (Index p : indices) {
      BigRational num = at(x, p) * BigRational(b1) - at(y, i1) * BigRational(alpha.get(p)) -
                        BigRational(t_ab(p, i1));
      put(y, p, num / piv);
    }
  } else {
    // alpha_{i1} = 0, beta_{i1} != 0; free coordinate y_{i1} = 0
    BigRational piv(b1);
    put(x, i1, BigRational(t_ab(i1, i1)) / piv);
    for (Index p : indices) put(y, p, BigRational(t_bb(p, i1)) / piv);
    for (Index p : indices) {
      BigRational num = BigRational(t_ab(p, i1)) - at(x, i1) * BigRational(beta.get(p));
      put(x, p, num / piv);
    }
  }

  // Integer points on (x, y) + mu * (alpha, beta).
  BigInt content = 0;
  for (const auto& [i, e] : alpha) content = gcd_big(content, e);
  for (const auto& [i, e] : beta) content = gcd_big(content, e);
  BigInt den = 1;
  for (const auto* v : {&x, &y})
    for (const auto& [i, q] : *v) {
      BigInt dq = denominator_of(q);
      den = den / gcd_big(den, dq) * dq;
    }
  std::vector<std::pair<BigInt, BigInt>> eqs;
  auto add_eqs = [&](const RationalVector& v, const ExponentVector& dir) {
    std::set<Index> keys;
    for (const auto& [i, q] : v) keys.insert(i);
    for (const auto& [i, e] : dir) keys.insert(i);
    for (Index i : keys) {
      BigRational scaled = at(v, i) * BigRational(den);
      eqs.emplace_back(dir.get(i) / content, floor_mod(BigInt(-numerator_of(scaled)), den));
    }
  };
  add_eqs(x, alpha);
  add_eqs(y, beta);
  auto r = solve_congruences(eqs, den);
  if (!r) return std::nullopt;
  BigRational mu = BigRational(*r) / BigRational(den);

  DElement h;
  auto fill = [&](ExponentVector& out, const RationalVector& v, const ExponentVector& dir) {
    std::set<Index> keys;
    for (const auto& [i, q] : v) keys.insert(i);
    for (const auto& [i, e] : dir) keys.insert(i);
    for (Index i : keys) {
      BigRational q = at(v, i) + mu * BigRational(dir.get(i) / content);
      if (denominator_of(q) != 1) throw std::logic_error("integerization failed");
      out.add(i, numerator_of(q));
    }
  };
  fill(h.a_part, x, alpha);
  fill(h.b_part, y, beta);

  if (commutator_form(h.a_part, h.b_part, alpha, beta).noncentral_part() != t)
    return std::nullopt;
  return h;
}

CommutatorWindowSystem commutator_window_system(const DElement& h1, const DElement& target) {
  require_derived(target);
  const CommutatorCoordinates t = noncentral(target);
  const ExponentVector& alpha = h1.a_part;
  const ExponentVector& beta = h1.b_part;
  std::optional<Index> lo, hi;
  auto cover = [&](Index i) {
    lo = lo ? std::min(*lo, i) : i;
    hi = hi ? std::max(*hi, i) : i;
  };
  for (const auto& [i, e] : alpha) cover(i);
  for (const auto& [i, e] : beta) cover(i);
  for (const auto& [key, v] : t) {
    cover(key.i);
    cover(key.j);
  }
  CommutatorWindowSystem w;
  if (!lo) return w;
  Index width = *hi - *lo + 1;
  w.lo = *lo - width;
  w.hi = *hi + width;
  const auto n = static_cast<std::size_t>(w.hi - w.lo + 1);
  auto xc = [&](Index p) { return static_cast<std::size_t>(p - w.lo); };
  auto yc = [&](Index p) { return n + static_cast<std::size_t>(p - w.lo); };

  auto emit = [&](IntVector row, const BigInt& rhs) {
    bool zero = std::all_of(row.begin(), row.end(), [](const BigInt& v) { return v == 0; });
    if (zero && rhs == 0) return;
    w.system.matrix.push_back(std::move(row));
    w.system.target.push_back(rhs);
  };
  for (Index p = w.lo; p <= w.hi; ++p) {
    for (Index q = p; q <= w.hi; ++q) {
      if (p < q) {
        IntVector aa(2 * n, 0), bb(2 * n, 0), ab(2 * n, 0);
        aa[xc(p)] += alpha.get(q);
        aa[xc(q)] -= alpha.get(p);
        emit(std::move(aa), t.get(CommutatorBasisElement::aa(p, q)));
        bb[yc(p)] += beta.get(q);
        bb[yc(q)] -= beta.get(p);
        emit(std::move(bb), t.get(CommutatorBasisElement::bb(p, q)));
        ab[xc(p)] += beta.get(q);
        ab[xc(q)] += beta.get(p);
        ab[yc(p)] -= alpha.get(q);
        ab[yc(q)] -= alpha.get(p);
        emit(std::move(ab), t.get(CommutatorBasisElement::ab(p, q)));
      } else {
        IntVector ab(2 * n, 0);
        ab[xc(p)] += beta.get(p);
        ab[yc(p)] -= alpha.get(p);
        emit(std::move(ab), t.get(CommutatorBasisElement::ab(p, p)));
      }
    }
  }
  if (w.system.matrix.empty()) {
    w.system.matrix.push_back(IntVector(2 * n, 0));
    w.system.target.push_back(0);
  }
  return w;
}

std::optional<DElement> solve_commutator_equation_hnf(const DElement& h1,
                                                      const DElement& target) {
  CommutatorWindowSystem w = commutator_window_system(h1, target);
  if (w.hi < w.lo) return d_identity();
  auto sol = hnf_solve(w.system);
  if (!sol) return std::nullopt;
  const auto n = static_cast<std::size_t>(w.hi - w.lo + 1);
  DElement h;
  for (std::size_t c = 0; c < n; ++c) {
    h.a_part.add(w.lo + static_cast<Index>(c), (*sol)[c]);
    h.b_part.add(w.lo + static_cast<Index>(c), (*sol)[n + c]);
  }
  return h;
}

namespace {

// h_q - h_{q-1} = delta_q along one orbit.
std::optional<std::map<Index, BigInt>> one_sided_sums(const std::map<Index, BigInt>& delta) {
  std::map<Index, BigInt> out;
  if (delta.empty()) return out;
  BigInt running = 0;
  Index first = delta.begin()->first;
  Index last = delta.rbegin()->first;
  for (Index q = first; q <= last; ++q) {
    if (auto it = delta.find(q); it != delta.end()) running += it->second;
    if (running != 0) out.emplace(q, running);
  }
  if (running != 0) return std::nullopt;
  return out;
}

struct OrbitPosition {
  Index residue;
  Index step;
};

OrbitPosition orbit_position(Index i, Index n) {
  Index r = floor_mod(i, n < 0 ? -n : n);
  return {r, (i - r) / n};
}

std::optional<ExponentVector> twisted_vector(const ExponentVector& delta, Index n) {
  std::map<Index, std::map<Index, BigInt>> orbits;
  for (const auto& [i, e] : delta) {
    auto pos = orbit_position(i, n);
    orbits[pos.residue][pos.step] += e;
  }
  ExponentVector out;
  for (const auto& [r, orbit] : orbits) {
    auto sums = one_sided_sums(orbit);
    if (!sums) return std::nullopt;
    for (const auto& [q, v] : *sums) out.add(r + q * n, v);
  }
  return out;
}

}  // namespace

std::optional<std::pair<ExponentVector, ExponentVector>> solve_twisted_abelian(
    const ExponentVector& delta_a, const ExponentVector& delta_b, Index n) {
  if (n == 0) throw std::invalid_argument("twisted equation needs n != 0");
  auto ha = twisted_vector(delta_a, n);
  if (!ha) return std::nullopt;
  auto hb = twisted_vector(delta_b, n);
  if (!hb) return std::nullopt;
  return std::pair{std::move(*ha), std::move(*hb)};
}

std::optional<CommutatorCoordinates> solve_twisted_derived(const CommutatorCoordinates& delta,
                                                           Index n) {
  if (n == 0) throw std::invalid_argument("twisted equation needs n != 0");
  std::map<CommutatorBasisElement, std::map<Index, BigInt>> orbits;
  for (const auto& [key, v] : delta) {
    if (key.is_central()) throw std::invalid_argument("twisted derived equation works modulo C");
    auto pos = orbit_position(key.i, n);
    orbits[key.shifted(-pos.step * n)][pos.step] += v;
  }
  CommutatorCoordinates out;
  for (const auto& [rep, orbit] : orbits) {
    auto sums = one_sided_sums(orbit);
    if (!sums) return std::nullopt;
    for (const auto& [q, v] : *sums) out.add(rep.shifted(q * n), v);
  }
  return out;
}

std::string to_string(NonConjugacyReason r) {
  switch (r) {
    case NonConjugacyReason::TExponentMismatch: return "t-exponent-mismatch";
    case NonConjugacyReason::AbelianizationMismatch: return "abelianization-mismatch";
    case NonConjugacyReason::TwistedUnsolvable: return "twisted-unsolvable";
    case NonConjugacyReason::CentralObstruction: return "central-obstruction";
  }
  return "unknown";
}

namespace {

struct Candidates {
  std::vector<GElement> witnesses;
  NonConjugacyReason reason = NonConjugacyReason::TExponentMismatch;
};

Candidates untwisted_candidates(const GElement& g1, const GElement& g2) {
  Candidates c;
  const DElement& h1 = g1.d_part;
  const DElement& h2 = g2.d_part;
  auto m1 = abelianization_min_index(g1);
  auto m2 = abelianization_min_index(g2);
  if (m1.has_value() != m2.has_value()) {
    c.reason = NonConjugacyReason::AbelianizationMismatch;
    return c;
  }
  if (!m1) {
    // Both in D', where D acts trivially: only a shift can help.
    CommutatorCoordinates n1 = noncentral(h1);
    CommutatorCoordinates n2 = noncentral(h2);
    Index s = 0;
    if (n1.empty() != n2.empty()) {
      c.reason = NonConjugacyReason::TwistedUnsolvable;
      return c;
    }
    if (!n1.empty()) {
      s = derived_support(g1)->lo - derived_support(g2)->lo;
      if (n1.shifted(-s) != n2) {
        c.reason = NonConjugacyReason::TwistedUnsolvable;
        return c;
      }
    }
    c.witnesses.push_back(g_t(s));
    return c;
  }
  Index s = *m1 - *m2;
  DElement shifted2 = phi_shift(h2, s);
  if (shifted2.a_part != h1.a_part || shifted2.b_part != h1.b_part) {
    c.reason = NonConjugacyReason::AbelianizationMismatch;
    return c;
  }
  // k^-1 h1 k = h1 [h1, k], so [k, h1] must equal (h1^-1 phi_s(h2))^-1 mod C.
  DElement target = d_mul(d_inv(shifted2), h1);
  auto k = solve_commutator_equation(h1, target);
  if (!k) {
    c.reason = NonConjugacyReason::TwistedUnsolvable;
    return c;
  }
  c.witnesses.push_back({*k, s});
  return c;
}

// k^-1 (h1, n) k = (k^-1 h1 phi_n(k), n) and t^s (h2, n) t^-s = (phi_s(h2), n).
Candidates twisted_candidates(const GElement& g1, const GElement& g2) {
  Candidates c;
  const Index n = g1.t_exp;
  const Index period = n < 0 ? -n : n;
  bool abelian_ok = false;
  for (Index s = 0; s < period; ++s) {
    DElement target = phi_shift(g2.d_part, s);
    ExponentVector da = g1.d_part.a_part;
    da -= target.a_part;
    ExponentVector db = g1.d_part.b_part;
    db -= target.b_part;
    auto ab = solve_twisted_abelian(da, db, n);
    if (!ab) continue;
    abelian_ok = true;
    DElement k0;
    k0.a_part = std::move(ab->first);
    k0.b_part = std::move(ab->second);
    DElement moved = d_mul(d_mul(d_inv(k0), g1.d_part), phi_shift(k0, n));
    DElement r = d_mul(moved, d_inv(target));
    if (!r.a_part.empty() || !r.b_part.empty()) throw std::logic_error("abelian step failed");
    auto kd = solve_twisted_derived(noncentral(r), n);
    if (!kd) continue;
    DElement k = k0;
    k.derived_part += *kd;
    c.witnesses.push_back({std::move(k), s});
  }
  if (c.witnesses.empty())
    c.reason = abelian_ok ? NonConjugacyReason::TwistedUnsolvable
                          : NonConjugacyReason::AbelianizationMismatch;
  return c;
}

Candidates mod_c_candidates(const GElement& g1, const GElement& g2) {
  if (g1.t_exp != g2.t_exp) return {};
  if (g1.t_exp == 0) return untwisted_candidates(g1, g2);
  return twisted_candidates(g1, g2);
}

}  // namespace

ModCResult conj_mod_C_detailed(const GElement& g1, const GElement& g2) {
  Candidates c = mod_c_candidates(g1, g2);
  ModCResult out;
  out.reason = c.reason;
  if (!c.witnesses.empty()) out.witness = std::move(c.witnesses.front());
  return out;
}

std::optional<GElement> conj_mod_C(const GElement& g1, const GElement& g2) {
  return conj_mod_C_detailed(g1, g2).witness;
}

ConjugacyCertificate conjugacy_decide(const GElement& g1, const GElement& g2,
                                      const SeparabilityFunction& d) {
  ConjugacyCertificate cert;
  Candidates c = mod_c_candidates(g1, g2);
  if (c.witnesses.empty()) {
    cert.reason = c.reason;
    return cert;
  }
  std::optional<std::pair<Index, BigInt>> first_obstruction;
  for (const auto& g : c.witnesses) {
    GElement delta = g_mul(g_conj(g1, g), g_inv(g2));
    if (delta.t_exp != 0 || !is_in_C(delta.d_part))
      throw std::logic_error("mod-C witness leaves a non-central difference");
    auto obstruction = central_obstruction(delta.d_part, d);
    if (!obstruction) {
      cert.verdict = ConjugacyCertificate::Verdict::Conjugate;
      cert.witness = g;
      return cert;
    }
    if (!first_obstruction) first_obstruction = obstruction;
  }
  cert.reason = NonConjugacyReason::CentralObstruction;
  cert.obstruction_k = first_obstruction->first;
  cert.obstruction_gamma = first_obstruction->second;
  return cert;
}

bool verify_certificate(const ConjugacyCertificate& cert, const GElement& g1,
                        const GElement& g2, const SeparabilityFunction& d) {
  if (!cert.conjugate() || !cert.witness) return false;
  return g_equal(g_conj(g1, *cert.witness), g2, d);
}

std::string ConjugacyCertificate::describe() const {
  std::ostringstream os;
  if (conjugate()) {
    os << "Conjugate";
    return os.str();
  }
  os << "NonConjugate (" << to_string(reason.value_or(NonConjugacyReason::TExponentMismatch));
  if (reason == NonConjugacyReason::CentralObstruction)
    os << " at C(" << obstruction_k << "), gamma = " << obstruction_gamma;
  os << ")";
  return os.str();
}

}  // namespace conjlab
