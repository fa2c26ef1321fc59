#include "conjlab/separability.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace conjlab {

std::uint64_t step_budget_constant() {
  if (const char* env = std::getenv("CONJLAB_BUDGET_C")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 64;
}

bool is_prime(std::uint64_t n, StepCounter* counter) {
  if (n < 2) throw std::invalid_argument("is_prime requires n >= 2");
  for (std::uint64_t q = 2; q <= n / q; ++q) {
    if (counter) ++counter->steps;
    if (n % q == 0) return false;
  }
  return true;
}

bool is_prime(const BigInt& n) {
  if (n < 2) throw std::invalid_argument("is_prime requires n >= 2");
  for (BigInt q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::uint64_t next_prime_after(std::uint64_t n, StepCounter* counter) {
  std::uint64_t c = std::max<std::uint64_t>(n + 1, 2);
  while (true) {
    if (counter) ++counter->steps;
    if (is_prime(c, counter)) return c;
    ++c;
  }
}

namespace {

constexpr std::uint64_t kSmallLimit = std::uint64_t{1} << 62;

void charge(StepCounter* counter, std::uint64_t s) {
  if (counter) counter->steps += s;
}

}  // namespace

class SeparabilityFunction::Impl {
 public:
  explicit Impl(std::string descriptor) : descriptor_(std::move(descriptor)) {}
  virtual ~Impl() = default;

  virtual bool at_least(std::uint64_t n, std::uint64_t m, StepCounter* c) const = 0;
  virtual std::uint64_t value(std::uint64_t n, StepCounter* c) const = 0;
  virtual TailBehavior tail() const = 0;

  const std::string& descriptor() const { return descriptor_; }

 private:
  std::string descriptor_;
};

namespace {

class TableImpl final : public SeparabilityFunction::Impl {
 public:
  TableImpl(std::vector<std::uint64_t> values, std::string descriptor)
      : Impl(std::move(descriptor)), values_(std::move(values)) {}

  bool at_least(std::uint64_t n, std::uint64_t m, StepCounter* c) const override {
    charge(c, 1);
    return lookup(n) >= m;
  }
  std::uint64_t value(std::uint64_t n, StepCounter* c) const override {
    charge(c, 1);
    return lookup(n);
  }
  TailBehavior tail() const override {
    return {TailBehavior::Kind::EventuallyConstant, values_.size() - 1, values_.back()};
  }

 private:
  std::uint64_t lookup(std::uint64_t n) const {
    return n < values_.size() ? values_[n] : values_.back();
  }
  std::vector<std::uint64_t> values_;
};

class NthPrimeImpl final : public SeparabilityFunction::Impl {
 public:
  NthPrimeImpl() : Impl("nth-prime") {}

  // Scans candidates upward; stops at the (n+1)-th prime or at m.
  bool at_least(std::uint64_t n, std::uint64_t m, StepCounter* c) const override {
    std::uint64_t found = 0;
    for (std::uint64_t cand = 2;; ++cand) {
      if (cand >= m) return true;
      charge(c, 1);
      if (is_prime(cand, c) && found++ == n) return false;
    }
  }
  std::uint64_t value(std::uint64_t n, StepCounter* c) const override {
    std::uint64_t found = 0;
    for (std::uint64_t cand = 2;; ++cand) {
      charge(c, 1);
      if (is_prime(cand, c) && found++ == n) return cand;
    }
  }
  TailBehavior tail() const override { return {TailBehavior::Kind::Unbounded, 0, 0}; }
};

class MajorantImpl final : public SeparabilityFunction::Impl {
 public:
  explicit MajorantImpl(RegisterProgram program)
      : Impl("program:" + program.name()), program_(std::move(program)) {}

  struct Prefix {
    std::uint64_t d0_max = 0;
    std::uint64_t total_steps = 0;
    bool complete = false;
  };

  // Runs d_0(0..n) sequentially, stopping once total_steps reaches `limit`.
  // Each interpreted instruction costs two abstract steps: the instruction
  // and the counter increment that accompanies it.
  Prefix run_prefix(std::uint64_t n, std::uint64_t limit, StepCounter* c) const {
    Prefix p;
    for (std::uint64_t k = 0; k <= n; ++k) {
      if (p.total_steps >= limit) return p;
      auto r = program_.run(k, limit - p.total_steps);
      charge(c, 2 * r.steps);
      p.total_steps += r.steps;
      if (!r.halted) return p;
      p.d0_max = std::max(p.d0_max, r.output);
    }
    p.complete = true;
    return p;
  }

  std::uint64_t base(std::uint64_t n, StepCounter* c) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = base_memo_.find(n); it != base_memo_.end()) return it->second;
    }
    Prefix p = run_prefix(n, std::numeric_limits<std::uint64_t>::max(), c);
    std::uint64_t d1 = p.d0_max + p.total_steps;
    std::lock_guard lock(mutex_);
    base_memo_.emplace(n, d1);
    return d1;
  }

  std::uint64_t input(std::uint64_t n) const {
    return run_prefix(n, std::numeric_limits<std::uint64_t>::max(), nullptr).d0_max;
  }

  bool at_least(std::uint64_t n, std::uint64_t m, StepCounter* c) const override {
    if (m <= 2) return true;
    // d(n) > d_1(n) >= steps so far, so reaching m - 1 steps settles it.
    Prefix p = run_prefix(n, m - 1, c);
    if (!p.complete) return true;
    std::uint64_t d1 = p.d0_max + p.total_steps;
    if (d1 + 1 >= m) return true;
    for (std::uint64_t i = d1 + 1; i < m; ++i) {
      charge(c, 1);
      if (is_prime(i, c)) return false;
    }
    return true;
  }

  std::uint64_t value(std::uint64_t n, StepCounter* c) const override {
    return next_prime_after(base(n, c), c);
  }

  TailBehavior tail() const override { return {TailBehavior::Kind::Unbounded, 0, 0}; }

 private:
  RegisterProgram program_;
  mutable std::mutex mutex_;
  mutable std::map<std::uint64_t, std::uint64_t> base_memo_;
};

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  std::size_t used = 0;
  try {
    v = std::stoull(std::string(s), &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

SeparabilityFunction::SeparabilityFunction(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

SeparabilityFunction SeparabilityFunction::constant_prime(std::uint64_t p) {
  if (p < 2 || !is_prime(p))
    throw std::invalid_argument("constant separability value must be prime");
  return SeparabilityFunction(
      std::make_shared<TableImpl>(std::vector<std::uint64_t>{p}, "constant:" + std::to_string(p)));
}

SeparabilityFunction SeparabilityFunction::from_table(std::vector<std::uint64_t> prefix) {
  if (prefix.empty()) throw std::invalid_argument("table must be non-empty");
  std::ostringstream desc;
  desc << "table:";
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] < 2 || !is_prime(prefix[i]))
      throw std::invalid_argument("table value " + std::to_string(prefix[i]) + " is not prime");
    if (i > 0 && prefix[i] < prefix[i - 1])
      throw std::invalid_argument("table values must be non-decreasing");
    desc << (i ? "," : "") << prefix[i];
  }
  return SeparabilityFunction(std::make_shared<TableImpl>(std::move(prefix), desc.str()));
}

SeparabilityFunction SeparabilityFunction::nth_prime() {
  return SeparabilityFunction(std::make_shared<NthPrimeImpl>());
}

SeparabilityFunction SeparabilityFunction::fast_majorant(RegisterProgram program) {
  auto impl = std::make_shared<MajorantImpl>(std::move(program));
  // A faulty program fails here rather than at the first query.
  auto probe = impl->run_prefix(0, std::uint64_t{1} << 24, nullptr);
  (void)probe;
  return SeparabilityFunction(std::move(impl));
}

SeparabilityFunction SeparabilityFunction::parse(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view head = spec.substr(0, colon);
  std::string_view body = colon == std::string_view::npos ? "" : spec.substr(colon + 1);
  if (head == "nth-prime" && colon == std::string_view::npos) return nth_prime();
  if (head == "constant") return constant_prime(parse_u64(body, "prime"));
  if (head == "table") {
    std::vector<std::uint64_t> vals;
    std::size_t start = 0;
    while (start <= body.size()) {
      auto comma = body.find(',', start);
      auto piece = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
      vals.push_back(parse_u64(piece, "table value"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return from_table(std::move(vals));
  }
  if (head == "program") return fast_majorant(RegisterProgram::load(std::string(body)));
  if (head == "demo") return fast_majorant(RegisterProgram::demo(body));
  throw std::invalid_argument("unknown d-spec '" + std::string(spec) + "'");
}

bool SeparabilityFunction::at_least(std::uint64_t n, const BigInt& m,
                                    StepCounter* counter) const {
  if (m <= 2) return true;
  if (m >= kSmallLimit) return value(n, counter) >= m;
  return impl_->at_least(n, static_cast<std::uint64_t>(m), counter);
}

BigInt SeparabilityFunction::value(std::uint64_t n, StepCounter* counter) const {
  return BigInt(impl_->value(n, counter));
}

TailBehavior SeparabilityFunction::tail() const { return impl_->tail(); }

const std::string& SeparabilityFunction::descriptor() const { return impl_->descriptor(); }

std::uint64_t SeparabilityFunction::majorant_base(std::uint64_t n) const {
  auto* m = dynamic_cast<const MajorantImpl*>(impl_.get());
  if (!m) throw std::logic_error("not a fast majorant");
  return m->base(n, nullptr);
}

std::uint64_t SeparabilityFunction::majorant_input(std::uint64_t n) const {
  auto* m = dynamic_cast<const MajorantImpl*>(impl_.get());
  if (!m) throw std::logic_error("not a fast majorant");
  return m->input(n);
}

}  // namespace conjlab
