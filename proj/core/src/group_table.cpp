#include "conjlab/group_table.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>

namespace conjlab {

FiniteGroupTable::FiniteGroupTable(std::uint32_t order, std::vector<Elem> table, Elem alpha,
                                   Elem beta, Elem tau, std::uint32_t max_order)
    : order_(order), table_(std::move(table)), alpha_(alpha), beta_(beta), tau_(tau) {
  if (order_ == 0) throw GroupTableError("order must be positive");
  if (order_ > max_order)
    throw GroupTableError("order " + std::to_string(order_) + " exceeds the cap " +
                          std::to_string(max_order));
  if (table_.size() != std::size_t{order_} * order_)
    throw GroupTableError("expected " + std::to_string(std::size_t{order_} * order_) +
                          " table entries, got " + std::to_string(table_.size()));
  for (Elem e : table_)
    if (e >= order_) throw GroupTableError("table entry " + std::to_string(e) + " out of range");
  for (Elem e : {alpha_, beta_, tau_})
    if (e >= order_)
      throw GroupTableError("distinguished element " + std::to_string(e) + " out of range");
  validate();
}

void FiniteGroupTable::validate() {
  const std::uint32_t q = order_;
  // Identity.
  bool found = false;
  for (Elem e = 0; e < q && !found; ++e) {
    bool ok = true;
    for (Elem x = 0; x < q && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw GroupTableError("not a group: no identity element");
  // Latin square, which gives two-sided inverses once associativity holds.
  std::vector<char> seen(q);
  for (Elem x = 0; x < q; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem y = 0; y < q; ++y) {
      Elem z = mul(x, y);
      if (seen[z]) throw GroupTableError("not a group: row " + std::to_string(x) + " repeats");
      seen[z] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem y = 0; y < q; ++y) {
      Elem z = mul(y, x);
      if (seen[z]) throw GroupTableError("not a group: column " + std::to_string(x) + " repeats");
      seen[z] = 1;
    }
  }
  inverse_.assign(q, 0);
  for (Elem x = 0; x < q; ++x)
    for (Elem y = 0; y < q; ++y)
      if (mul(x, y) == identity_) {
        if (mul(y, x) != identity_)
          throw GroupTableError("not a group: " + std::to_string(x) + " has no two-sided inverse");
        inverse_[x] = y;
        break;
      }

  // Light's test: associativity need only be checked against a generating set.
  std::vector<Elem> gens;
  std::vector<char> reached(q, 0);
  std::uint32_t reached_count = 0;
  auto close = [&] {
    std::fill(reached.begin(), reached.end(), 0);
    std::vector<Elem> queue{identity_};
    reached[identity_] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (Elem g : gens) {
        Elem z = mul(queue[head], g);
        if (!reached[z]) {
          reached[z] = 1;
          queue.push_back(z);
        }
      }
    reached_count = static_cast<std::uint32_t>(queue.size());
  };
  close();
  for (Elem x = 0; x < q && reached_count < q; ++x)
    if (!reached[x]) {
      gens.push_back(x);
      close();
    }
  for (Elem g : gens)
    for (Elem x = 0; x < q; ++x) {
      Elem xg = mul(x, g);
      for (Elem y = 0; y < q; ++y)
        if (mul(x, mul(g, y)) != mul(xg, y))
          throw GroupTableError("not a group: (" + std::to_string(x) + "*" + std::to_string(g) +
                                ")*" + std::to_string(y) + " is not associative");
    }
}

namespace {

std::uint32_t read_u32(std::istream& in, const std::string& what) {
  long long v = -1;
  if (!(in >> v) || v < 0 || v > 0xffffffffLL)
    throw GroupTableError("malformed table: expected " + what);
  return static_cast<std::uint32_t>(v);
}

void expect_word(std::istream& in, const std::string& word) {
  std::string w;
  if (!(in >> w) || w != word)
    throw GroupTableError("malformed table: expected '" + word + "'" +
                          (w.empty() ? std::string() : ", got '" + w + "'"));
}

}  // namespace

FiniteGroupTable FiniteGroupTable::parse(std::istream& in, std::uint32_t max_order) {
  std::string head;
  if (!(in >> head)) throw GroupTableError("malformed table: empty input");
  if (head == "permutations") {
    std::uint32_t degree = read_u32(in, "degree");
    if (degree == 0) throw GroupTableError("malformed table: degree must be positive");
    std::map<std::string, Permutation> perms;
    for (const char* name : {"alpha", "beta", "tau"}) {
      expect_word(in, name);
      Permutation p(degree);
      for (auto& x : p) x = read_u32(in, std::string("an image point of ") + name);
      perms[name] = std::move(p);
    }
    return from_permutations(perms["alpha"], perms["beta"], perms["tau"], max_order);
  }
  if (head != "order") throw GroupTableError("malformed table: expected 'order' or 'permutations'");
  std::uint32_t q = read_u32(in, "the order");
  if (q == 0 || q > max_order)
    throw GroupTableError("order " + std::to_string(q) + " outside 1.." + std::to_string(max_order));
  std::vector<Elem> table(std::size_t{q} * q);
  for (auto& e : table) e = read_u32(in, "a table entry");
  expect_word(in, "alpha");
  Elem a = read_u32(in, "alpha");
  expect_word(in, "beta");
  Elem b = read_u32(in, "beta");
  expect_word(in, "tau");
  Elem t = read_u32(in, "tau");
  std::string extra;
  if (in >> extra) throw GroupTableError("malformed table: trailing input '" + extra + "'");
  return {q, std::move(table), a, b, t, max_order};
}

FiniteGroupTable FiniteGroupTable::load(const std::string& path, std::uint32_t max_order) {
  std::ifstream in(path);
  if (!in) throw GroupTableError("cannot open " + path);
  return parse(in, max_order);
}

FiniteGroupTable FiniteGroupTable::from_permutations(const Permutation& alpha,
                                                     const Permutation& beta,
                                                     const Permutation& tau,
                                                     std::uint32_t max_order) {
  const std::size_t n = alpha.size();
  for (const auto* p : {&alpha, &beta, &tau}) {
    if (p->size() != n) throw GroupTableError("permutations of different degrees");
    std::vector<char> seen(n, 0);
    for (auto x : *p) {
      if (x >= n || seen[x]) throw GroupTableError("not a permutation");
      seen[x] = 1;
    }
  }
  // x*y means "apply x, then y"; any fixed convention gives an isomorphic table.
  auto compose = [n](const Permutation& x, const Permutation& y) {
    Permutation z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = y[x[i]];
    return z;
  };
  Permutation id(n);
  std::iota(id.begin(), id.end(), 0u);
  std::map<Permutation, Elem> index{{id, 0}};
  std::vector<Permutation> elems{id};
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const auto* g : {&alpha, &beta, &tau}) {
      Permutation z = compose(elems[head], *g);
      if (index.emplace(z, static_cast<Elem>(elems.size())).second) {
        elems.push_back(std::move(z));
        if (elems.size() > max_order)
          throw GroupTableError("generated group exceeds the order cap " +
                                std::to_string(max_order));
      }
    }
  const auto q = static_cast<std::uint32_t>(elems.size());
  std::vector<Elem> table(std::size_t{q} * q);
  for (Elem x = 0; x < q; ++x)
    for (Elem y = 0; y < q; ++y) table[std::size_t{x} * q + y] = index.at(compose(elems[x], elems[y]));
  return {q, std::move(table), index.at(alpha), index.at(beta), index.at(tau), max_order};
}

FiniteGroupTable FiniteGroupTable::from_quotient(const FiniteQuotient& fq, std::uint64_t relabel_seed,
                                                 std::uint32_t max_order) {
  if (fq.order() > max_order)
    throw GroupTableError(fq.spec().label() + " exceeds the order cap " + std::to_string(max_order));
  const auto q = static_cast<std::uint32_t>(fq.order());
  const std::int64_t m = fq.spec().exponent_modulus;
  auto index_of = [&](const FiniteQuotient::Element& e) {
    std::uint64_t idx = 0;
    std::uint64_t radix = 1;
    for (auto c : e.v) {
      idx += static_cast<std::uint64_t>(c) * radix;
      radix *= static_cast<std::uint64_t>(m);
    }
    for (std::size_t p = 0; p < e.w.size(); ++p) {
      idx += static_cast<std::uint64_t>(e.w[p]) * radix;
      radix *= static_cast<std::uint64_t>(fq.modulus(p));
    }
    idx += static_cast<std::uint64_t>(e.t) * radix;
    return static_cast<Elem>(idx);
  };
  std::vector<Elem> label(q);
  std::iota(label.begin(), label.end(), 0u);
  if (relabel_seed != 0) {
    std::mt19937_64 rng(relabel_seed);
    std::shuffle(label.begin(), label.end(), rng);
  }
  std::vector<FiniteQuotient::Element> elems(q);
  for (Elem x = 0; x < q; ++x) elems[x] = fq.element_at(x);
  std::vector<Elem> table(std::size_t{q} * q);
  for (Elem x = 0; x < q; ++x)
    for (Elem y = 0; y < q; ++y)
      table[std::size_t{label[x]} * q + label[y]] = label[index_of(fq.mul(elems[x], elems[y]))];
  return {q,
          std::move(table),
          label[index_of(fq.generator_a(0))],
          label[index_of(fq.generator_b(0))],
          label[index_of(fq.generator_t())],
          max_order};
}

void FiniteGroupTable::write(std::ostream& out) const {
  out << "order " << order_ << "\n";
  for (Elem x = 0; x < order_; ++x) {
    for (Elem y = 0; y < order_; ++y) out << (y ? " " : "") << mul(x, y);
    out << "\n";
  }
  out << "alpha " << alpha_ << " beta " << beta_ << " tau " << tau_ << "\n";
}

// ---------------------------------------------------------------------------

namespace {

class Counted {
 public:
  explicit Counted(const FiniteGroupTable& q) : q_(q) {}
  using Elem = FiniteGroupTable::Elem;
  Elem mul(Elem x, Elem y) {
    ++count;
    return q_.mul(x, y);
  }
  Elem comm(Elem x, Elem y) { return mul(mul(mul(x, y), q_.inv(x)), q_.inv(y)); }
  bool commute(Elem x, Elem y) { return mul(x, y) == mul(y, x); }
  std::uint32_t order_of(Elem x) {
    std::uint32_t o = 1;
    for (Elem y = x; y != q_.identity(); y = mul(y, x)) ++o;
    return o;
  }
  std::uint64_t count = 0;

 private:
  const FiniteGroupTable& q_;
};

// Is d(j) divisible by o? d is prime-valued, so only o = 1 or o = d(j) work.
bool d_divisible(const SeparabilityFunction& d, std::uint64_t j, std::uint32_t o) {
  if (o == 1) return true;
  return d.at_least(j, o) && !d.at_least(j, BigInt(o) + 1);
}

}  // namespace

HomCheckResult hom_check(const FiniteGroupTable& q, const SeparabilityFunction& d) {
  using Elem = FiniteGroupTable::Elem;
  HomCheckResult res;
  Counted g(q);
  auto fail = [&](std::string why) {
    res.extends = false;
    res.failure = std::move(why);
    res.multiplications = g.count;
    return res;
  };

  const Elem tau = q.tau();
  const std::uint32_t r = g.order_of(tau);
  const Elem tau_inv = q.inv(tau);
  std::vector<Elem> alpha(r), beta(r);
  alpha[0] = q.alpha();
  beta[0] = q.beta();
  for (std::uint32_t i = 1; i < r; ++i) {
    alpha[i] = g.mul(g.mul(tau, alpha[i - 1]), tau_inv);
    beta[i] = g.mul(g.mul(tau, beta[i - 1]), tau_inv);
  }

  // [[x,y],z] = 1 over distinct generator images.
  std::vector<Elem> gens;
  gens.insert(gens.end(), alpha.begin(), alpha.end());
  gens.insert(gens.end(), beta.begin(), beta.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<char> comm_seen(q.order(), 0);
  std::vector<Elem> comms;
  for (Elem x : gens)
    for (Elem y : gens) {
      Elem c = g.comm(x, y);
      if (!comm_seen[c]) {
        comm_seen[c] = 1;
        comms.push_back(c);
      }
    }
  for (Elem c : comms)
    for (Elem z : gens)
      if (!g.commute(c, z))
        return fail("[[x,y],z]: commutator " + std::to_string(c) + " does not commute with " +
                    std::to_string(z));

  // gamma_k = [alpha_0, beta_k][beta_0, alpha_k] and the defining relation.
  std::vector<Elem> gamma(r);
  for (std::uint32_t k = 0; k < r; ++k)
    gamma[k] = g.mul(g.comm(alpha[0], beta[k]), g.comm(beta[0], alpha[k]));
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = 0; j < r; ++j) {
      Elem lhs = g.mul(g.comm(alpha[i], beta[j]), g.comm(beta[i], alpha[j]));
      if (lhs != gamma[(j + r - i) % r])
        return fail("[a_" + std::to_string(i) + ",b_" + std::to_string(j) + "][b_" +
                    std::to_string(i) + ",a_" + std::to_string(j) + "] != c_" +
                    std::to_string((j + r - i) % r));
    }
  for (std::uint32_t k = 0; k < r; ++k)
    if (!g.commute(gamma[k], tau)) return fail("[c_" + std::to_string(k) + ", t] != 1");

  // c_{2^j}^{d(j)}: residues of 2^j mod r, preperiod then period.
  std::map<std::uint32_t, std::uint64_t> first;
  std::uint32_t res_k = 1 % r;
  std::uint64_t j = 0;
  while (!first.count(res_k)) {
    first.emplace(res_k, j);
    res_k = static_cast<std::uint32_t>((std::uint64_t{res_k} * 2) % r);
    ++j;
  }
  const std::uint64_t mu = first.at(res_k);
  const std::uint64_t lambda = j - mu;
  const TailBehavior tail = d.tail();
  for (const auto& [k, j0] : first) {
    std::uint32_t o = g.order_of(gamma[k]);
    auto bad = [&](const std::string& which) {
      return fail("c_" + std::to_string(k) + " has order " + std::to_string(o) +
                  ", incompatible with " + which);
    };
    if (j0 < mu) {
      if (!d_divisible(d, j0, o)) return bad("d(" + std::to_string(j0) + ")");
      continue;
    }
    if (o == 1) continue;
    if (tail.kind != TailBehavior::Kind::EventuallyConstant)
      return bad("infinitely many d(j) on its residue class");
    for (std::uint64_t jj = j0; jj < tail.from; jj += lambda)
      if (!d_divisible(d, jj, o)) return bad("d(" + std::to_string(jj) + ")");
    if (tail.value % o != 0) return bad("the eventual value of d");
  }
  res.extends = true;
  res.multiplications = g.count;
  return res;
}

}  // namespace conjlab
