// conjlab: command-line front end.
//
//   conjlab conj <w1> <w2>            decide conjugacy in G_d
//   conjlab mckinsey <w1> <w2>        interleaved word / finite-quotient search
//   conjlab growth <i_max>            rf witness orders for c_{2^i}
//   conjlab check-quotient <file>     homomorphism check for a finite group
//   conjlab selftest                  quick internal consistency run
//
// Exit codes: 0 conjugate / true / pass, 1 non-conjugate / false / fail,
// 2 error, 3 budget exhausted.

#include <chrono>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "conjlab/conjugacy.hpp"
#include "conjlab/gd_group.hpp"
#include "conjlab/group_table.hpp"
#include "conjlab/mckinsey.hpp"
#include "conjlab/quotient.hpp"
#include "conjlab/separability.hpp"

using namespace conjlab;
using nlohmann::json;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;
constexpr int kExitBudget = 3;

struct RunConfig {
  std::string d_spec = "constant:2";
  std::string max_order = "1000000";
  std::size_t max_conj_len = 6;
  std::size_t max_specs = 1000;
  std::uint64_t seed = 1;
  std::string format = "text";
  bool time = false;

  BigInt max_order_value() const {
    auto caret = max_order.find('^');
    try {
      if (caret == std::string::npos) return BigInt(max_order);
      BigInt base(max_order.substr(0, caret));
      unsigned long e = std::stoul(max_order.substr(caret + 1));
      return boost::multiprecision::pow(base, static_cast<unsigned>(e));
    } catch (const std::exception&) {
      throw std::invalid_argument("--max-order must be an integer or <base>^<exp>, got '" +
                                  max_order + "'");
    }
  }

  McKinseyBudget budget() const {
    McKinseyBudget b;
    b.max_conj_len = max_conj_len;
    b.max_order = max_order_value();
    b.max_specs = max_specs;
    return b;
  }

  json to_json() const {
    return {{"d", d_spec},           {"max_order", max_order}, {"max_conj_len", max_conj_len},
            {"max_specs", max_specs}, {"seed", seed},          {"format", format},
            {"time", time}};
  }

  std::string inline_text() const {
    std::ostringstream os;
    os << "d=" << d_spec << " max_order=" << max_order << " max_conj_len=" << max_conj_len
       << " max_specs=" << max_specs << " seed=" << seed;
    return os.str();
  }
};

// Emits one flat record in the chosen format.
class Report {
 public:
  Report(std::string command, const RunConfig& cfg) : cfg_(cfg) { add("command", std::move(command)); }

  void add(const std::string& key, json value) {
    keys_.push_back(key);
    body_[key] = std::move(value);
  }

  void print(std::ostream& out) const {
    if (cfg_.format == "json") {
      json j = body_;
      j["config"] = cfg_.to_json();
      out << j.dump(2) << "\n";
    } else if (cfg_.format == "csv") {
      out << "# " << cfg_.inline_text() << "\n";
      for (std::size_t i = 0; i < keys_.size(); ++i) out << (i ? "," : "") << keys_[i];
      out << "\n";
      for (std::size_t i = 0; i < keys_.size(); ++i) out << (i ? "," : "") << csv_cell(body_.at(keys_[i]));
      out << "\n";
    } else {
      for (const auto& k : keys_) out << k << ": " << text_cell(body_.at(k)) << "\n";
      out << "config: " << cfg_.inline_text() << "\n";
    }
  }

  static std::string text_cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    return v.dump();
  }

  static std::string csv_cell(const json& v) {
    std::string s = v.is_null() ? std::string() : text_cell(v);
    if (s.find_first_of(",\"\n ") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }

 private:
  const RunConfig& cfg_;
  std::vector<std::string> keys_;
  json body_ = json::object();
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_conj(const std::string& w1, const std::string& w2, const RunConfig& cfg) {
  auto d = SeparabilityFunction::parse(cfg.d_spec);
  GElement g1 = parse_word(w1);
  GElement g2 = parse_word(w2);
  auto t0 = std::chrono::steady_clock::now();
  auto cert = conjugacy_decide(g1, g2, d);
  double secs = seconds_since(t0);

  Report r("conj", cfg);
  r.add("word1", w1);
  r.add("word2", w2);
  r.add("verdict", cert.conjugate() ? "Conjugate" : "NonConjugate");
  if (cert.conjugate()) {
    r.add("witness", element_to_word(*cert.witness).to_string());
    r.add("verified", verify_certificate(cert, g1, g2, d));
    r.add("reason", nullptr);
  } else {
    r.add("witness", nullptr);
    r.add("verified", nullptr);
    std::string reason = to_string(*cert.reason);
    if (*cert.reason == NonConjugacyReason::CentralObstruction)
      reason += " at C(" + std::to_string(cert.obstruction_k) +
                "), gamma = " + cert.obstruction_gamma.str();
    r.add("reason", reason);
  }
  if (cfg.time) r.add("seconds", secs);
  r.print(std::cout);
  return cert.conjugate() ? kExitYes : kExitNo;
}

int cmd_mckinsey(const std::string& w1, const std::string& w2, const RunConfig& cfg) {
  auto d = SeparabilityFunction::parse(cfg.d_spec);
  GElement g1 = parse_word(w1);
  GElement g2 = parse_word(w2);
  auto t0 = std::chrono::steady_clock::now();
  auto out = mckinsey_search(g1, g2, d, cfg.budget());
  double secs = seconds_since(t0);

  Report r("mckinsey", cfg);
  r.add("word1", w1);
  r.add("word2", w2);
  r.add("verdict", to_string(out.verdict));
  r.add("conjugator", out.conjugator ? json(out.conjugator->to_string()) : json(nullptr));
  r.add("conjugator_length", out.conjugator ? json(out.conjugator->length()) : json(nullptr));
  r.add("witness_quotient", out.witness ? json(out.witness->label()) : json(nullptr));
  r.add("witness_order", out.witness ? json(out.witness_order.str()) : json(nullptr));
  r.add("quotients_tested", out.specs_tested);
  r.add("words_tested", out.words_tested);
  if (cfg.time) r.add("seconds", secs);
  r.print(std::cout);
  switch (out.verdict) {
    case McKinseyOutcome::Verdict::Conjugate: return kExitYes;
    case McKinseyOutcome::Verdict::NonConjugate: return kExitNo;
    case McKinseyOutcome::Verdict::BudgetExhausted: return kExitBudget;
  }
  return kExitError;
}

int cmd_growth(unsigned i_max, const RunConfig& cfg) {
  auto d = SeparabilityFunction::parse(cfg.d_spec);
  auto rows = growth_table(i_max, d, cfg.budget());
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& row : rows)
      arr.push_back({{"i", row.i},
                     {"word_length", row.word_length},
                     {"witness_order", row.witness ? json(row.witness->order.str()) : json(nullptr)},
                     {"witness_quotient", row.witness ? json(row.witness->spec.label()) : json(nullptr)},
                     {"decide_seconds", cfg.time ? json(row.decide_seconds) : json(nullptr)}});
    json j = {{"command", "growth"}, {"rows", arr}, {"config", cfg.to_json()}};
    std::cout << j.dump(2) << "\n";
    return kExitYes;
  }
  std::cout << "# " << cfg.inline_text() << "\n";
  std::cout << "i,word_length,witness_order,decide_seconds\n";
  for (const auto& row : rows) {
    std::cout << row.i << "," << row.word_length << ","
              << (row.witness ? row.witness->order.str() : std::string()) << ",";
    if (cfg.time) std::cout << row.decide_seconds;
    std::cout << "\n";
  }
  return kExitYes;
}

int cmd_check_quotient(const std::string& path, const RunConfig& cfg) {
  auto d = SeparabilityFunction::parse(cfg.d_spec);
  auto table = FiniteGroupTable::load(path);
  auto res = hom_check(table, d);
  Report r("check-quotient", cfg);
  r.add("file", path);
  r.add("order", table.order());
  r.add("extends", res.extends);
  r.add("failure", res.failure.empty() ? json(nullptr) : json(res.failure));
  r.add("multiplications", res.multiplications);
  r.print(std::cout);
  return res.extends ? kExitYes : kExitNo;
}

int cmd_selftest(const RunConfig& cfg) {
  auto d = SeparabilityFunction::parse(cfg.d_spec);
  std::mt19937_64 rng(cfg.seed);
  const char* letters[] = {"t", "T", "a", "A", "b", "B", "a[1]", "b[-1]"};
  auto random_word = [&](int len) {
    std::string s;
    for (int i = 0; i < len; ++i) s += std::string(letters[rng() % 8]) + " ";
    return s;
  };
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  bool rel = true;
  for (Index i = -3; i <= 3; ++i)
    for (Index j = -3; j <= 3; ++j) {
      GElement lhs = g_mul(g_commutator(evaluate(parse_word_text("a[" + std::to_string(i) + "]")),
                                        evaluate(parse_word_text("b[" + std::to_string(j) + "]"))),
                           g_commutator(evaluate(parse_word_text("b[" + std::to_string(i) + "]")),
                                        evaluate(parse_word_text("a[" + std::to_string(j) + "]"))));
      rel = rel && g_equal(lhs, g_from_d(central_c(j - i)), d);
    }
  check("relation [a_i,b_j][b_i,a_j] = c_{j-i}", rel);

  bool conj_ok = true;
  for (int k = 0; k < 50; ++k) {
    GElement g1 = parse_word(random_word(6));
    GElement h = parse_word(random_word(6));
    auto cert = conjugacy_decide(g1, g_conj(g1, h), d);
    conj_ok = conj_ok && cert.conjugate() && verify_certificate(cert, g1, g_conj(g1, h), d);
  }
  check("constructed conjugate pairs", conj_ok);

  bool hom = true;
  FiniteQuotient q(make_spec(3, 2, d));
  for (int k = 0; k < 50; ++k) {
    GElement x = parse_word(random_word(5));
    GElement y = parse_word(random_word(5));
    hom = hom && q.image(g_mul(x, y)) == q.mul(q.image(x), q.image(y));
  }
  check("finite image is a homomorphism", hom);

  auto cert = conjugacy_decide(parse_word("a"), parse_word("a c[1]"), d);
  check("central obstruction at C(1)",
        !cert.conjugate() && cert.reason == NonConjugacyReason::CentralObstruction &&
            cert.obstruction_k == 1);

  std::istringstream s3("permutations 3\nalpha 1 0 2\nbeta 2 1 0\ntau 0 1 2\n");
  check("hom_check rejects S3", !hom_check(FiniteGroupTable::parse(s3), d).extends);
  check("hom_check accepts Q(I=2,m=2)",
        hom_check(FiniteGroupTable::from_quotient(FiniteQuotient(make_spec(2, 2, d)), cfg.seed), d)
            .extends);

  std::cout << (failures == 0 ? "selftest passed" : "selftest failed") << " (" << cfg.inline_text()
            << ")\n";
  return failures == 0 ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conjlab: conjugacy in the groups G_d"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--d", cfg.d_spec,
                 "separability function: constant:<p>, table:<p,...>, nth-prime, "
                 "program:<path>, demo:<name>")
      ->capture_default_str();
  app.add_option("--max-order", cfg.max_order, "quotient order cap, e.g. 2048 or 10^900")
      ->capture_default_str();
  app.add_option("--max-conj-len", cfg.max_conj_len, "conjugator word length cap")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--max-specs", cfg.max_specs, "quotient count cap")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--format", cfg.format, "output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_flag("--time", cfg.time, "report wall-clock times");

  std::string w1, w2, path;
  unsigned i_max = 0;
  auto* conj = app.add_subcommand("conj", "decide conjugacy of two words");
  conj->add_option("word1", w1)->required();
  conj->add_option("word2", w2)->required();
  auto* mck = app.add_subcommand("mckinsey", "McKinsey-style search");
  mck->add_option("word1", w1)->required();
  mck->add_option("word2", w2)->required();
  auto* growth = app.add_subcommand("growth", "rf witness orders for c_{2^i}, i = 0..i_max");
  growth->add_option("i_max", i_max)->required();
  auto* checkq = app.add_subcommand("check-quotient", "check a finite group table");
  checkq->add_option("table_file", path)->required();
  auto* self = app.add_subcommand("selftest", "quick internal checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    (void)cfg.max_order_value();
    if (conj->parsed()) return cmd_conj(w1, w2, cfg);
    if (mck->parsed()) return cmd_mckinsey(w1, w2, cfg);
    if (growth->parsed()) return cmd_growth(i_max, cfg);
    if (checkq->parsed()) return cmd_check_quotient(path, cfg);
    if (self->parsed()) return cmd_selftest(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
