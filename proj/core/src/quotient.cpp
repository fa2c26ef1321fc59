#include "conjlab/quotient.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "conjlab/separability.hpp"

namespace conjlab {

FoldedBasis::FoldedBasis(Index I) : I_(I) {
  if (I < 1) throw std::invalid_argument("index modulus must be >= 1");
  const auto n = static_cast<std::size_t>(I);
  std::vector<std::size_t> aa_pos(n * n), bb_pos(n * n), ab_pos(n * n);
  for (Index i = 0; i < I; ++i)
    for (Index j = i + 1; j < I; ++j) {
      aa_pos[i * n + j] = keys_.size();
      keys_.push_back(CommutatorBasisElement::aa(i, j));
    }
  for (Index i = 0; i < I; ++i)
    for (Index j = i + 1; j < I; ++j) {
      bb_pos[i * n + j] = keys_.size();
      keys_.push_back(CommutatorBasisElement::bb(i, j));
    }
  for (Index i = 0; i < I; ++i)
    for (Index j = i; j < I; ++j) {
      ab_pos[i * n + j] = keys_.size();
      keys_.push_back(CommutatorBasisElement::ab(i, j));
    }
  noncentral_ = keys_.size();
  for (Index k = 1; 2 * k <= I; ++k) keys_.push_back(CommutatorBasisElement::c(k));

  aa_.resize(n * n);
  bb_.resize(n * n);
  ab_.resize(n * n);
  for (Index i = 0; i < I; ++i)
    for (Index j = 0; j < I; ++j) {
      auto& aa = aa_[i * n + j];
      auto& bb = bb_[i * n + j];
      auto& ab = ab_[i * n + j];
      if (i < j) {
        aa.push_back({aa_pos[i * n + j], 1});
        bb.push_back({bb_pos[i * n + j], 1});
      } else if (i > j) {
        aa.push_back({aa_pos[j * n + i], -1});
        bb.push_back({bb_pos[j * n + i], -1});
      }
      if (i <= j) {
        ab.push_back({ab_pos[i * n + j], 1});
      } else {
        // [a_i,b_j] = c_{i-j}^-1 [a_j,b_i]
        ab.push_back({ab_pos[j * n + i], 1});
        for (const auto& t : c(i - j, -1)) ab.push_back(t);
      }
    }

  phi_.resize(n);
  for (Index s = 0; s < I; ++s) {
    auto& table = phi_[s];
    table.resize(keys_.size());
    for (std::size_t pos = 0; pos < keys_.size(); ++pos) {
      const auto& k = keys_[pos];
      switch (k.kind) {
        case BasisKind::AA: table[pos] = aa(k.i + s, k.j + s); break;
        case BasisKind::BB: table[pos] = bb(k.i + s, k.j + s); break;
        case BasisKind::AB: table[pos] = ab(k.i + s, k.j + s); break;
        case BasisKind::C: table[pos] = {{pos, 1}}; break;
      }
    }
  }
}

std::size_t FoldedBasis::c_position(Index k) const {
  if (k < 1 || 2 * k > I_) throw std::out_of_range("c-class out of range");
  return noncentral_ + static_cast<std::size_t>(k - 1);
}

const std::vector<FoldTerm>& FoldedBasis::aa(Index i, Index j) const {
  return aa_[static_cast<std::size_t>(fold(i) * I_ + fold(j))];
}
const std::vector<FoldTerm>& FoldedBasis::bb(Index i, Index j) const {
  return bb_[static_cast<std::size_t>(fold(i) * I_ + fold(j))];
}
const std::vector<FoldTerm>& FoldedBasis::ab(Index i, Index j) const {
  return ab_[static_cast<std::size_t>(fold(i) * I_ + fold(j))];
}

std::vector<FoldTerm> FoldedBasis::c(Index k, int sign) const {
  Index r = fold(k);
  if (r == 0) return {};
  if (2 * r <= I_) return {{c_position(r), sign}};
  return {{c_position(I_ - r), -sign}};
}

const std::vector<FoldTerm>& FoldedBasis::phi(std::size_t pos, Index n) const {
  return phi_[static_cast<std::size_t>(fold(n))][pos];
}

// ---------------------------------------------------------------------------

namespace {

void add_terms_big(std::vector<BigInt>& w, const std::vector<FoldTerm>& terms, const BigInt& c) {
  for (const auto& t : terms) w[t.pos] += t.coeff * c;
}

}  // namespace

FoldedElement project_mod_I(const GElement& g, Index I) {
  FoldedBasis basis(I);
  const auto n = static_cast<std::size_t>(I);
  FoldedElement out;
  out.index_modulus = I;
  out.a.assign(n, 0);
  out.b.assign(n, 0);
  out.derived.assign(basis.derived_size(), 0);
  // Multiply generator powers in the order of the unfolded normal form.
  for (const auto& [i, e] : g.d_part.a_part) {
    Index r = basis.fold(i);
    for (Index p = r + 1; p < I; ++p)
      if (out.a[p] != 0) add_terms_big(out.derived, basis.aa(p, r), out.a[p] * e);
    out.a[r] += e;
  }
  for (const auto& [i, e] : g.d_part.b_part) {
    Index r = basis.fold(i);
    for (Index p = r + 1; p < I; ++p)
      if (out.b[p] != 0) add_terms_big(out.derived, basis.bb(p, r), out.b[p] * e);
    out.b[r] += e;
  }
  for (const auto& [key, e] : g.d_part.derived_part) {
    switch (key.kind) {
      case BasisKind::AA: add_terms_big(out.derived, basis.aa(key.i, key.j), e); break;
      case BasisKind::BB: add_terms_big(out.derived, basis.bb(key.i, key.j), e); break;
      case BasisKind::AB: add_terms_big(out.derived, basis.ab(key.i, key.j), e); break;
      case BasisKind::C: add_terms_big(out.derived, basis.c(key.i), e); break;
    }
  }
  if (I % 2 == 0) {
    auto pos = basis.c_position(I / 2);
    out.derived[pos] = floor_mod(out.derived[pos], BigInt(2));
  }
  out.t = basis.fold(g.t_exp);
  return out;
}

bool FoldedElement::is_identity() const {
  auto zero = [](const std::vector<BigInt>& v) {
    return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
  };
  return t == 0 && zero(a) && zero(b) && zero(derived);
}

std::string FoldedElement::to_string(const FoldedBasis& basis) const {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " ";
    first = false;
  };
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) {
      sep();
      os << "a[" << i << "]^" << a[i];
    }
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] != 0) {
      sep();
      os << "b[" << i << "]^" << b[i];
    }
  for (std::size_t p = 0; p < derived.size(); ++p)
    if (derived[p] != 0) {
      sep();
      os << basis.key(p).to_string() << "^" << derived[p];
    }
  if (t != 0) {
    sep();
    os << "t^" << t;
  }
  if (first) os << "1";
  return os.str();
}

// ---------------------------------------------------------------------------

std::string FiniteQuotientSpec::label() const {
  return "Q(I=" + std::to_string(index_modulus) + ",m=" + std::to_string(exponent_modulus) + ")";
}

BigInt FiniteQuotientSpec::order() const {
  const Index I = index_modulus;
  const auto nc = static_cast<unsigned>(I * (I - 1) + I * (I + 1) / 2);
  BigInt out = I;
  out *= boost::multiprecision::pow(BigInt(exponent_modulus), static_cast<unsigned>(2 * I) + nc);
  for (std::size_t k = 1; k < c_moduli.size(); ++k) out *= c_moduli[k];
  return out;
}

namespace {

std::int64_t gcd_with_d(std::int64_t g, std::uint64_t j, const SeparabilityFunction& d) {
  if (g <= 1) return 1;
  if (d.at_least(j, BigInt(g) + 1)) return 1;  // d(j) is a prime above g
  auto v = static_cast<std::int64_t>(d.value(j));
  return std::gcd(g, v);
}

}  // namespace

std::int64_t allowed_c_modulus(Index I, std::int64_t m, Index k, const SeparabilityFunction& d) {
  if (I < 1 || k < 1 || 2 * k > I) throw std::invalid_argument("c-class out of range");
  std::int64_t g = m;
  if (2 * k == I) g = std::gcd(g, std::int64_t{2});

  // 2^j mod I is eventually periodic: residues first met before `mu` are hit
  // once, the rest once per period `lambda`.
  std::map<Index, std::uint64_t> first;
  Index r = 1 % I;
  std::uint64_t j = 0;
  while (!first.count(r)) {
    first.emplace(r, j);
    r = (r * 2) % I;
    ++j;
  }
  const std::uint64_t mu = first.at(r);
  const std::uint64_t lambda = j - mu;

  std::vector<Index> residues{k};
  if (I - k != k) residues.push_back(I - k);
  const TailBehavior tail = d.tail();
  for (Index res : residues) {
    auto it = first.find(res);
    if (it == first.end()) continue;
    std::uint64_t j0 = it->second;
    if (j0 < mu) {
      g = gcd_with_d(g, j0, d);
      continue;
    }
    if (tail.kind != TailBehavior::Kind::EventuallyConstant) return 1;
    for (std::uint64_t jj = j0; jj < tail.from; jj += lambda) g = gcd_with_d(g, jj, d);
    g = static_cast<std::int64_t>(boost::multiprecision::gcd(BigInt(g), tail.value));
  }
  return g;
}

FiniteQuotientSpec make_spec(Index I, std::int64_t m, const SeparabilityFunction& d) {
  if (I < 1) throw std::invalid_argument("index modulus must be >= 1");
  if (m < 2) throw std::invalid_argument("exponent modulus must be >= 2");
  FiniteQuotientSpec spec;
  spec.index_modulus = I;
  spec.exponent_modulus = m;
  spec.c_moduli.assign(static_cast<std::size_t>(I / 2 + 1), 1);
  for (Index k = 1; 2 * k <= I; ++k) spec.c_moduli[k] = allowed_c_modulus(I, m, k, d);
  return spec;
}

bool quotient_is_well_defined(const FiniteQuotientSpec& spec, const SeparabilityFunction& d) {
  const Index I = spec.index_modulus;
  if (I < 1 || spec.exponent_modulus < 2) return false;
  if (spec.c_moduli.size() != static_cast<std::size_t>(I / 2 + 1)) return false;
  for (Index k = 1; 2 * k <= I; ++k) {
    std::int64_t declared = spec.c_moduli[k];
    if (declared < 1) return false;
    if (allowed_c_modulus(I, spec.exponent_modulus, k, d) % declared != 0) return false;
  }
  return true;
}

std::pair<Index, std::int64_t> parse_spec_label(std::string_view text) {
  auto fail = [&]() -> std::pair<Index, std::int64_t> {
    throw std::invalid_argument("bad quotient label '" + std::string(text) +
                                "', expected Q(I=<int>,m=<int>)");
  };
  constexpr std::string_view head = "Q(I=";
  if (text.substr(0, head.size()) != head || text.empty() || text.back() != ')') return fail();
  std::string_view body = text.substr(head.size(), text.size() - head.size() - 1);
  auto comma = body.find(",m=");
  if (comma == std::string_view::npos) return fail();
  Index I = 0;
  std::int64_t m = 0;
  auto r1 = std::from_chars(body.data(), body.data() + comma, I);
  auto r2 = std::from_chars(body.data() + comma + 3, body.data() + body.size(), m);
  if (r1.ec != std::errc() || r1.ptr != body.data() + comma || r2.ec != std::errc() ||
      r2.ptr != body.data() + body.size())
    return fail();
  return {I, m};
}

// ---------------------------------------------------------------------------

FiniteQuotient::FiniteQuotient(FiniteQuotientSpec spec)
    : spec_(std::move(spec)), basis_(spec_.index_modulus) {
  const std::int64_t m = spec_.exponent_modulus;
  if (m < 2 || m > (std::int64_t{1} << 31))
    throw std::invalid_argument("exponent modulus must lie in [2, 2^31]");
  if (spec_.c_moduli.size() != static_cast<std::size_t>(spec_.index_modulus / 2 + 1))
    throw std::invalid_argument("c-moduli do not match the index modulus");
  moduli_.assign(basis_.derived_size(), m);
  for (Index k = 1; 2 * k <= spec_.index_modulus; ++k) {
    if (spec_.c_moduli[k] < 1 || m % spec_.c_moduli[k] != 0)
      throw std::invalid_argument("c-moduli must divide m");
    moduli_[basis_.c_position(k)] = spec_.c_moduli[k];
  }
}

FiniteQuotient::Element FiniteQuotient::identity() const {
  Element e;
  e.v.assign(2 * static_cast<std::size_t>(spec_.index_modulus), 0);
  e.w.assign(basis_.derived_size(), 0);
  return e;
}

void FiniteQuotient::reduce(Element& x) const {
  const std::int64_t m = spec_.exponent_modulus;
  for (auto& c : x.v) c = floor_mod(c, m);
  for (std::size_t p = 0; p < x.w.size(); ++p) x.w[p] = floor_mod(x.w[p], moduli_[p]);
  x.t = floor_mod(x.t, spec_.index_modulus);
}

void FiniteQuotient::add_terms(std::vector<std::int64_t>& w, const std::vector<FoldTerm>& terms,
                               std::int64_t coeff) const {
  for (const auto& t : terms) w[t.pos] = (w[t.pos] + t.coeff * coeff) % spec_.exponent_modulus;
}

// w += the correction for moving y's generators left past x's.
void FiniteQuotient::add_collection(std::vector<std::int64_t>& w,
                                    const std::vector<std::int64_t>& x,
                                    const std::vector<std::int64_t>& y) const {
  const Index I = spec_.index_modulus;
  const std::int64_t m = spec_.exponent_modulus;
  for (Index j = 0; j < I; ++j) {
    std::int64_t ya = y[j];
    std::int64_t yb = y[I + j];
    if (ya != 0) {
      for (Index i = j + 1; i < I; ++i)
        if (x[i] != 0) add_terms(w, basis_.aa(i, j), x[i] * ya % m);
      for (Index i = 0; i < I; ++i)
        if (x[I + i] != 0) add_terms(w, basis_.ab(j, i), -(x[I + i] * ya % m));
    }
    if (yb != 0) {
      for (Index i = j + 1; i < I; ++i)
        if (x[I + i] != 0) add_terms(w, basis_.bb(i, j), x[I + i] * yb % m);
    }
  }
}

FiniteQuotient::Element FiniteQuotient::d_mul(const Element& x, const Element& y) const {
  Element out;
  out.v.resize(x.v.size());
  for (std::size_t i = 0; i < x.v.size(); ++i) out.v[i] = x.v[i] + y.v[i];
  out.w.resize(x.w.size());
  for (std::size_t p = 0; p < x.w.size(); ++p) out.w[p] = x.w[p] + y.w[p];
  add_collection(out.w, x.v, y.v);
  out.t = 0;
  reduce(out);
  return out;
}

FiniteQuotient::Element FiniteQuotient::phi(const Element& x, Index n) const {
  const Index I = spec_.index_modulus;
  const std::int64_t m = spec_.exponent_modulus;
  Index s = basis_.fold(n);
  Element out = identity();
  out.t = x.t;
  if (s == 0) {
    out.v = x.v;
    out.w = x.w;
    return out;
  }
  for (Index i = 0; i < I; ++i) {
    out.v[(i + s) % I] = x.v[i];
    out.v[I + (i + s) % I] = x.v[I + i];
  }
  for (std::size_t p = 0; p < x.w.size(); ++p)
    if (x.w[p] != 0) add_terms(out.w, basis_.phi(p, s), x.w[p]);
  // Shifted generators wrap past I-1; restore ascending order.
  for (Index p = 0; p < I; ++p) {
    for (Index q = p + 1; q < I; ++q) {
      if ((p + s) % I <= (q + s) % I) continue;
      if (x.v[p] != 0 && x.v[q] != 0)
        add_terms(out.w, basis_.aa(p + s, q + s), x.v[p] * x.v[q] % m);
      if (x.v[I + p] != 0 && x.v[I + q] != 0)
        add_terms(out.w, basis_.bb(p + s, q + s), x.v[I + p] * x.v[I + q] % m);
    }
  }
  reduce(out);
  return out;
}

FiniteQuotient::Element FiniteQuotient::mul(const Element& x, const Element& y) const {
  Element out = d_mul(x, phi(y, x.t));
  out.t = floor_mod(x.t + y.t, spec_.index_modulus);
  return out;
}

FiniteQuotient::Element FiniteQuotient::inv(const Element& x) const {
  Element h = identity();
  for (std::size_t i = 0; i < x.v.size(); ++i) h.v[i] = -x.v[i];
  for (std::size_t p = 0; p < x.w.size(); ++p) h.w[p] = -x.w[p];
  add_collection(h.w, x.v, x.v);
  reduce(h);
  Element out = phi(h, -x.t);
  out.t = floor_mod(-x.t, spec_.index_modulus);
  return out;
}

FiniteQuotient::Element FiniteQuotient::conj(const Element& x, const Element& by) const {
  return mul(mul(inv(by), x), by);
}

FiniteQuotient::Element FiniteQuotient::generator_a(Index i) const {
  Element e = identity();
  e.v[basis_.fold(i)] = 1 % spec_.exponent_modulus;
  return e;
}

FiniteQuotient::Element FiniteQuotient::generator_b(Index i) const {
  Element e = identity();
  e.v[spec_.index_modulus + basis_.fold(i)] = 1 % spec_.exponent_modulus;
  return e;
}

FiniteQuotient::Element FiniteQuotient::generator_t() const {
  Element e = identity();
  e.t = 1 % spec_.index_modulus;
  return e;
}

FiniteQuotient::Element FiniteQuotient::image(const GElement& g) const {
  const Index I = spec_.index_modulus;
  const std::int64_t m = spec_.exponent_modulus;
  Element acc = identity();
  auto small = [m](const BigInt& e) { return static_cast<std::int64_t>(floor_mod(e, BigInt(m))); };
  for (const auto& [i, e] : g.d_part.a_part) {
    Element f = identity();
    f.v[basis_.fold(i)] = small(e);
    acc = d_mul(acc, f);
  }
  for (const auto& [i, e] : g.d_part.b_part) {
    Element f = identity();
    f.v[I + basis_.fold(i)] = small(e);
    acc = d_mul(acc, f);
  }
  for (const auto& [key, e] : g.d_part.derived_part) {
    std::int64_t c = small(e);
    switch (key.kind) {
      case BasisKind::AA: add_terms(acc.w, basis_.aa(key.i, key.j), c); break;
      case BasisKind::BB: add_terms(acc.w, basis_.bb(key.i, key.j), c); break;
      case BasisKind::AB: add_terms(acc.w, basis_.ab(key.i, key.j), c); break;
      case BasisKind::C: add_terms(acc.w, basis_.c(key.i), c); break;
    }
  }
  acc.t = g.t_exp;
  reduce(acc);
  return acc;
}

FiniteQuotient::Element FiniteQuotient::element_at(std::uint64_t index) const {
  Element e = identity();
  const auto m = static_cast<std::uint64_t>(spec_.exponent_modulus);
  for (auto& c : e.v) {
    c = static_cast<std::int64_t>(index % m);
    index /= m;
  }
  for (std::size_t p = 0; p < e.w.size(); ++p) {
    auto mod = static_cast<std::uint64_t>(moduli_[p]);
    e.w[p] = static_cast<std::int64_t>(index % mod);
    index /= mod;
  }
  e.t = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(spec_.index_modulus));
  return e;
}

std::string FiniteQuotient::to_string(const Element& x) const {
  const Index I = spec_.index_modulus;
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " ";
    first = false;
  };
  for (Index i = 0; i < I; ++i)
    if (x.v[i] != 0) {
      sep();
      os << "a[" << i << "]^" << x.v[i];
    }
  for (Index i = 0; i < I; ++i)
    if (x.v[I + i] != 0) {
      sep();
      os << "b[" << i << "]^" << x.v[I + i];
    }
  for (std::size_t p = 0; p < x.w.size(); ++p)
    if (x.w[p] != 0) {
      sep();
      os << basis_.key(p).to_string() << "^" << x.w[p];
    }
  if (x.t != 0) {
    sep();
    os << "t^" << x.t;
  }
  if (first) os << "1";
  return os.str();
}

FiniteQuotient::Element finite_image(const GElement& g, const FiniteQuotientSpec& spec,
                                     const SeparabilityFunction& d) {
  if (!quotient_is_well_defined(spec, d))
    throw std::invalid_argument(spec.label() + " is not a quotient of G_d for this d");
  return FiniteQuotient(spec).image(g);
}

// ---------------------------------------------------------------------------

namespace {

__extension__ using u128 = unsigned __int128;

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>(static_cast<u128>(a) * static_cast<u128>(b) %
                                   static_cast<u128>(q));
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t q) {
  std::int64_t r0 = q, r1 = a % q, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t k = r0 / r1;
    std::int64_t t = r0 - k * r1;
    r0 = r1;
    r1 = t;
    t = s0 - k * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw std::logic_error("not a unit");
  return floor_mod(s0, q);
}

// Elimination over Z/p^e with pivots of least p-adic valuation.
bool solvable_prime_power(std::vector<std::vector<std::int64_t>> a, std::vector<std::int64_t> b,
                          std::int64_t p, std::int64_t q) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  auto valuation = [p](std::int64_t x) {
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };
  std::vector<char> row_done(rows, 0), col_done(cols, 0);
  while (true) {
    int best = -1;
    std::size_t br = 0, bc = 0;
    for (std::size_t r = 0; r < rows && best != 0; ++r) {
      if (row_done[r]) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        if (col_done[c] || a[r][c] == 0) continue;
        int v = valuation(a[r][c]);
        if (best < 0 || v < best) {
          best = v;
          br = r;
          bc = c;
          if (v == 0) break;
        }
      }
    }
    if (best < 0) break;
    std::int64_t pv = 1;
    for (int i = 0; i < best; ++i) pv *= p;
    if (b[br] % pv != 0) return false;
    std::int64_t unit_inv = inverse_mod(a[br][bc] / pv, q);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == br || row_done[r] || a[r][bc] == 0) continue;
      std::int64_t f = mulmod(a[r][bc] / pv, unit_inv, q);
      for (std::size_t c = 0; c < cols; ++c) {
        if (col_done[c] || a[br][c] == 0) continue;
        a[r][c] = floor_mod(a[r][c] - mulmod(f, a[br][c], q), q);
      }
      b[r] = floor_mod(b[r] - mulmod(f, b[br], q), q);
    }
    row_done[br] = 1;
    col_done[bc] = 1;
  }
  for (std::size_t r = 0; r < rows; ++r)
    if (!row_done[r] && b[r] != 0) return false;
  return true;
}

std::vector<std::pair<std::int64_t, std::int64_t>> prime_powers(std::int64_t m) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    std::int64_t q = 1;
    while (m % p == 0) {
      m /= p;
      q *= p;
    }
    out.emplace_back(p, q);
  }
  if (m > 1) out.emplace_back(m, m);
  return out;
}

}  // namespace

bool solvable_mod(const std::vector<std::vector<std::int64_t>>& a,
                  const std::vector<std::int64_t>& b,
                  const std::vector<std::int64_t>& row_moduli, std::int64_t m) {
  for (const auto& [p, q] : prime_powers(m)) {
    std::vector<std::vector<std::int64_t>> aq(a.size());
    std::vector<std::int64_t> bq(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
      std::int64_t scale = m / row_moduli[r];
      aq[r].resize(a[r].size());
      for (std::size_t c = 0; c < a[r].size(); ++c)
        aq[r][c] = mulmod(floor_mod(a[r][c], q), scale % q, q);
      bq[r] = mulmod(floor_mod(b[r], q), scale % q, q);
    }
    if (!solvable_prime_power(std::move(aq), std::move(bq), p, q)) return false;
  }
  return true;
}

bool finite_conjugate_exhaustive(const FiniteQuotient& q, const FiniteQuotient::Element& x,
                                 const FiniteQuotient::Element& y) {
  BigInt order = q.order();
  if (order > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw std::invalid_argument("quotient too large for exhaustive search");
  auto n = static_cast<std::uint64_t>(order);
  for (std::uint64_t i = 0; i < n; ++i)
    if (q.conj(x, q.element_at(i)) == y) return true;
  return false;
}

// g = k t^s conjugates x = (h1, n) to y = (h2, n) iff k^-1 h1 phi_n(k) = phi_s(h2).
// Abelian coordinates give (phi_n - 1) v = phi_s(h2)_v - h1_v, solved along the
// cycles of i -> i - n. Fixing one solution k0 and writing k = k0 k_u z with u
// constant on cycles and z central, the derived coordinates of
// k^-1 h1 phi_n(k) are affine in (u, z) modulo the image of phi_n - 1, so each
// s reduces to one linear system over Z/m.
bool finite_conjugate_structured(const FiniteQuotient& q, const FiniteQuotient::Element& x,
                                 const FiniteQuotient::Element& y) {
  if (x.t != y.t) return false;
  const Index I = q.spec().index_modulus;
  const std::int64_t m = q.spec().exponent_modulus;
  const Index n = x.t;
  const std::size_t W = q.basis().derived_size();
  FiniteQuotient::Element h1 = x;
  h1.t = 0;
  FiniteQuotient::Element h2 = y;
  h2.t = 0;

  // Cycles of i -> i - n on residues.
  std::vector<std::vector<Index>> cycles;
  std::vector<char> seen(static_cast<std::size_t>(I), 0);
  for (Index i = 0; i < I; ++i) {
    if (seen[i]) continue;
    std::vector<Index> cyc;
    for (Index j = i; !seen[j]; j = floor_mod(j - n, I)) {
      seen[j] = 1;
      cyc.push_back(j);
    }
    cycles.push_back(std::move(cyc));
  }

  std::vector<std::int64_t> row_moduli;
  std::vector<std::size_t> rows;
  for (std::size_t p = 0; p < W; ++p)
    if (q.modulus(p) > 1) {
      rows.push_back(p);
      row_moduli.push_back(q.modulus(p));
    }

  for (Index s = 0; s < I; ++s) {
    FiniteQuotient::Element H = q.phi(h2, s);
    FiniteQuotient::Element k0 = q.identity();
    bool ok = true;
    for (Index block = 0; block < 2 && ok; ++block) {
      for (const auto& cyc : cycles) {
        // v_{i-n} = v_i + delta_i along the cycle, starting from v = 0.
        std::int64_t val = 0;
        for (std::size_t idx = 0; idx < cyc.size(); ++idx) {
          Index i = cyc[idx];
          std::int64_t delta = H.v[block * I + i] - h1.v[block * I + i];
          if (idx + 1 < cyc.size()) {
            val = floor_mod(val + delta, m);
            k0.v[block * I + cyc[idx + 1]] = val;
          } else if (floor_mod(val + delta, m) != 0) {
            ok = false;
          }
        }
        if (!ok) break;
      }
    }
    if (!ok) continue;
    FiniteQuotient::Element X = q.d_mul(q.d_mul(q.inv(k0), h1), q.phi(k0, n));
    if (X.v != H.v) throw std::logic_error("abelian conjugacy step failed");

    std::vector<std::vector<std::int64_t>> columns;
    for (Index block = 0; block < 2; ++block)
      for (const auto& cyc : cycles) {
        FiniteQuotient::Element ku = q.identity();
        for (Index i : cyc) ku.v[block * I + i] = 1 % m;
        FiniteQuotient::Element moved = q.d_mul(q.d_mul(q.inv(ku), X), q.phi(ku, n));
        std::vector<std::int64_t> col(W);
        for (std::size_t p = 0; p < W; ++p) col[p] = moved.w[p] - X.w[p];
        columns.push_back(std::move(col));
      }
    if (n % I != 0) {
      for (std::size_t p = 0; p < W; ++p) {
        std::vector<std::int64_t> col(W, 0);
        for (const auto& t : q.basis().phi(p, n)) col[t.pos] += t.coeff;
        col[p] -= 1;
        columns.push_back(std::move(col));
      }
    }
    std::vector<std::vector<std::int64_t>> a(rows.size(), std::vector<std::int64_t>(columns.size()));
    std::vector<std::int64_t> b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < columns.size(); ++c) a[r][c] = columns[c][rows[r]];
      b[r] = H.w[rows[r]] - X.w[rows[r]];
    }
    if (solvable_mod(a, b, row_moduli, m)) return true;
  }
  return false;
}

bool finite_conjugate(const FiniteQuotient& q, const FiniteQuotient::Element& x,
                      const FiniteQuotient::Element& y, const BigInt& max_order) {
  BigInt order = q.order();
  if (order > max_order)
    throw std::invalid_argument(q.spec().label() + " exceeds the quotient order cap");
  if (x == y) return true;
  if (order <= kExhaustiveOrderLimit) return finite_conjugate_exhaustive(q, x, y);
  return finite_conjugate_structured(q, x, y);
}

}  // namespace conjlab
