#include "conjlab/gd_group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "conjlab/separability.hpp"

namespace conjlab {

GElement g_identity() { return {}; }

GElement g_from_d(DElement h) { return {std::move(h), 0}; }

GElement g_t(Index n) { return {d_identity(), n}; }

GElement g_mul(const GElement& x, const GElement& y) {
  return {d_mul(x.d_part, phi_shift(y.d_part, x.t_exp)), x.t_exp + y.t_exp};
}

GElement g_inv(const GElement& x) {
  return {phi_shift(d_inv(x.d_part), -x.t_exp), -x.t_exp};
}

GElement g_pow(const GElement& x, const BigInt& e) {
  GElement base = e < 0 ? g_inv(x) : x;
  BigInt k = big_abs(e);
  GElement acc = g_identity();
  while (k > 0) {
    if ((k & 1) != 0) acc = g_mul(acc, base);
    k >>= 1;
    if (k > 0) base = g_mul(base, base);
  }
  return acc;
}

GElement g_conj(const GElement& x, const GElement& by) {
  return g_mul(g_mul(g_inv(by), x), by);
}

GElement g_commutator(const GElement& x, const GElement& y) {
  return g_mul(g_mul(x, y), g_inv(g_mul(y, x)));
}

bool g_equal(const GElement& x, const GElement& y, const SeparabilityFunction& d) {
  if (x.t_exp != y.t_exp) return false;
  return is_identity_d(d_mul(d_inv(x.d_part), y.d_part), d);
}

bool g_is_identity(const GElement& x, const SeparabilityFunction& d) {
  return x.t_exp == 0 && is_identity_d(x.d_part, d);
}

std::optional<Index> abelianization_min_index(const GElement& g) {
  const auto& a = g.d_part.a_part;
  const auto& b = g.d_part.b_part;
  if (a.empty() && b.empty()) return std::nullopt;
  if (a.empty()) return b.min_index();
  if (b.empty()) return a.min_index();
  return std::min(a.min_index(), b.min_index());
}

std::optional<IndexInterval> derived_support(const GElement& g) {
  if (g.t_exp != 0) throw std::invalid_argument("derived_support requires t_exp == 0");
  const DElement& h = g.d_part;
  std::optional<IndexInterval> out;
  auto cover = [&out](Index lo, Index hi) {
    if (!out) {
      out = IndexInterval{lo, hi};
    } else {
      out->lo = std::min(out->lo, lo);
      out->hi = std::max(out->hi, hi);
    }
  };
  if (!h.a_part.empty() || !h.b_part.empty()) {
    if (!h.a_part.empty()) cover(h.a_part.min_index(), h.a_part.max_index());
    if (!h.b_part.empty()) cover(h.b_part.min_index(), h.b_part.max_index());
    return out;
  }
  for (const auto& [key, v] : h.derived_part) {
    if (!key.is_central()) cover(key.i, key.j);
  }
  return out;
}

// ---------------------------------------------------------------------------

void GeneratorWord::push_power(Letter l, Index e) {
  int s = e < 0 ? -1 : 1;
  for (Index k = 0; k < (e < 0 ? -e : e); ++k) letters_.push_back({l, s});
}

void GeneratorWord::append(const GeneratorWord& w) {
  letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
}

GeneratorWord GeneratorWord::inverse() const {
  std::vector<WordLetter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.exp = -l.exp;
  return GeneratorWord(std::move(out));
}

std::string GeneratorWord::to_string() const {
  std::string out;
  out.reserve(2 * letters_.size());
  for (const auto& l : letters_) {
    if (!out.empty()) out.push_back(' ');
    char c = l.letter == Letter::T ? 't' : l.letter == Letter::A ? 'a' : 'b';
    out.push_back(l.exp < 0 ? static_cast<char>(std::toupper(c)) : c);
  }
  return out;
}

namespace {

void push_conjugate(GeneratorWord& w, Letter l, Index i, Index e) {
  w.push_power(Letter::T, i);
  w.push_power(l, e);
  w.push_power(Letter::T, -i);
}

// x_i^e y_j x_i^-e y_j^-1 with conjugates spelled out
void push_commutator(GeneratorWord& w, Letter x, Index i, Index e, Letter y, Index j) {
  push_conjugate(w, x, i, e);
  push_conjugate(w, y, j, 1);
  push_conjugate(w, x, i, -e);
  push_conjugate(w, y, j, -1);
}

// [a_0, b_k]^e [b_0, a_k]^e = c_k^e
GeneratorWord c_power_word(Index k, Index e) {
  GeneratorWord w;
  push_commutator(w, Letter::A, 0, e, Letter::B, k);
  push_commutator(w, Letter::B, 0, e, Letter::A, k);
  return w;
}

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  GeneratorWord run() {
    GeneratorWord out;
    skip_space();
    while (pos_ < text_.size()) {
      parse_factor(out);
      skip_space();
    }
    return out;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Index parse_int(const char* what) {
    std::size_t start = pos_;
    std::size_t end = pos_;
    if (end < text_.size() && (text_[end] == '-' || text_[end] == '+')) ++end;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    const char* first = text_.data() + start + (start < text_.size() && text_[start] == '+');
    Index v = 0;
    auto [ptr, ec] = std::from_chars(first, text_.data() + end, v);
    if (ec != std::errc() || ptr != text_.data() + end)
      throw ParseError(std::string("expected ") + what, start);
    pos_ = end;
    return v;
  }

  void parse_factor(GeneratorWord& out) {
    std::size_t start = pos_;
    char c = text_[pos_++];
    Letter letter;
    int sign = 1;
    bool central = false;
    switch (c) {
      case 't': letter = Letter::T; break;
      case 'T': letter = Letter::T; sign = -1; break;
      case 'a': letter = Letter::A; break;
      case 'A': letter = Letter::A; sign = -1; break;
      case 'b': letter = Letter::B; break;
      case 'B': letter = Letter::B; sign = -1; break;
      case 'c': letter = Letter::T; central = true; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    std::optional<Index> index;
    if (pos_ < text_.size() && text_[pos_] == '[') {
      if (letter == Letter::T && !central) throw ParseError("t takes no index", pos_);
      ++pos_;
      index = parse_int("index");
      if (*index > kMaxRepeat || *index < -kMaxRepeat) throw ParseError("index too large", start);
      if (pos_ >= text_.size() || text_[pos_] != ']') throw ParseError("expected ']'", pos_);
      ++pos_;
    } else if (central) {
      throw ParseError("c requires an index, e.g. c[1]", start);
    }
    Index e = 1;
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      e = parse_int("exponent");
    }
    if (e > kMaxRepeat || e < -kMaxRepeat) throw ParseError("exponent too large", start);
    e *= sign;
    if (central) {
      out.append(c_power_word(*index, e));
    } else if (index) {
      push_conjugate(out, letter, *index, e);
    } else {
      out.push_power(letter, e);
    }
  }

  static constexpr Index kMaxRepeat = 1'000'000;

  std::string_view text_;
  std::size_t pos_ = 0;
};

Index small_exponent(const BigInt& e) {
  if (e > std::numeric_limits<std::int32_t>::max() || e < std::numeric_limits<std::int32_t>::min())
    throw std::overflow_error("exponent " + e.str() + " too large to spell as a word");
  return static_cast<Index>(e);
}

}  // namespace

GeneratorWord parse_word_text(std::string_view text) { return WordParser(text).run(); }

GElement evaluate(const GeneratorWord& w) {
  GElement g;
  for (const auto& l : w.letters()) {
    switch (l.letter) {
      case Letter::T: g.t_exp += l.exp; break;
      case Letter::A: mul_right_a(g.d_part, g.t_exp, l.exp); break;
      case Letter::B: mul_right_b(g.d_part, g.t_exp, l.exp); break;
    }
  }
  return g;
}

GElement parse_word(std::string_view text) { return evaluate(parse_word_text(text)); }

GeneratorWord c_witness_word(Index k) {
  if (k < 1) throw std::invalid_argument("c_witness_word requires k >= 1");
  return c_power_word(k, 1);
}

GeneratorWord word_a(Index i) {
  GeneratorWord w;
  push_conjugate(w, Letter::A, i, 1);
  return w;
}

GeneratorWord word_b(Index i) {
  GeneratorWord w;
  push_conjugate(w, Letter::B, i, 1);
  return w;
}

GeneratorWord element_to_word(const GElement& g) {
  GeneratorWord w;
  const DElement& h = g.d_part;
  for (const auto& [i, e] : h.a_part) push_conjugate(w, Letter::A, i, small_exponent(e));
  for (const auto& [i, e] : h.b_part) push_conjugate(w, Letter::B, i, small_exponent(e));
  for (const auto& [key, v] : h.derived_part) {
    Index e = small_exponent(v);
    switch (key.kind) {
      case BasisKind::AA: push_commutator(w, Letter::A, key.i, e, Letter::A, key.j); break;
      case BasisKind::BB: push_commutator(w, Letter::B, key.i, e, Letter::B, key.j); break;
      case BasisKind::AB: push_commutator(w, Letter::A, key.i, e, Letter::B, key.j); break;
      case BasisKind::C: w.append(c_power_word(key.i, e)); break;
    }
  }
  w.push_power(Letter::T, g.t_exp);
  return w;
}

// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json exponent_json(const BigInt& e) {
  if (e <= std::numeric_limits<std::int64_t>::max() && e >= std::numeric_limits<std::int64_t>::min())
    return static_cast<std::int64_t>(e);
  return e.str();
}

BigInt exponent_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos)
      throw std::invalid_argument("bad exponent '" + s + "'");
    return BigInt(s);
  }
  throw std::invalid_argument("exponent must be an integer or a decimal string");
}

json vector_json(const ExponentVector& v) {
  json arr = json::array();
  for (const auto& [i, e] : v) arr.push_back(json::array({i, exponent_json(e)}));
  return arr;
}

}  // namespace

std::string to_json(const GElement& g) {
  json j;
  j["a"] = vector_json(g.d_part.a_part);
  j["b"] = vector_json(g.d_part.b_part);
  json derived = json::array();
  for (const auto& [key, v] : g.d_part.derived_part)
    derived.push_back(json::array({key.to_string(), exponent_json(v)}));
  j["derived"] = derived;
  j["t"] = g.t_exp;
  return j.dump();
}

GElement from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("element JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("element JSON must be an object");
  for (const auto& [k, v] : j.items()) {
    if (k != "a" && k != "b" && k != "derived" && k != "t")
      throw std::invalid_argument("unknown element key '" + k + "'");
  }
  auto pairs = [&j](const char* key) {
    json arr = j.value(key, json::array());
    if (!arr.is_array()) throw std::invalid_argument(std::string(key) + " must be an array");
    for (const auto& p : arr)
      if (!p.is_array() || p.size() != 2)
        throw std::invalid_argument(std::string(key) + " entries must be pairs");
    return arr;
  };
  DElement h;
  for (const auto& p : pairs("a")) h.a_part.add(p[0].get<Index>(), exponent_from_json(p[1]));
  for (const auto& p : pairs("b")) h.b_part.add(p[0].get<Index>(), exponent_from_json(p[1]));
  for (const auto& p : pairs("derived")) {
    if (!p[0].is_string()) throw std::invalid_argument("derived keys must be strings");
    h.derived_part.add(CommutatorBasisElement::parse(p[0].get<std::string>()),
                       exponent_from_json(p[1]));
  }
  GElement g{std::move(h), 0};
  if (j.contains("t")) g.t_exp = j["t"].get<Index>();
  return g;
}

std::string to_string(const GElement& g) {
  std::ostringstream os;
  os << "(" << to_string(g.d_part) << ", " << g.t_exp << ")";
  return os.str();
}

}  // namespace conjlab
