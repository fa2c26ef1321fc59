#include "conjlab/register_machine.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace conjlab {

namespace {

constexpr std::string_view kConstantOne = R"(# d0(n) = 1
inc r1
halt
)";

constexpr std::string_view kIdentity = R"(# d0(n) = n
loop:
  dec r0 done
  inc r1
  dec r15 loop
done:
  halt
)";

constexpr std::string_view kDouble = R"(# d0(n) = 2n
loop:
  dec r0 done
  inc r1
  inc r1
  dec r15 loop
done:
  halt
)";

constexpr std::string_view kSquare = R"(# d0(n) = n*n, r2 keeps n, r3 is scratch
copy:
  dec r0 outer
  inc r2
  inc r3
  dec r15 copy
outer:
  dec r2 done
inner:
  dec r3 refill
  inc r1
  inc r4
  dec r15 inner
refill:
  dec r4 outer
  inc r3
  dec r15 refill
done:
  halt
)";

constexpr std::string_view kExp2 = R"(# d0(n) = 2^n by repeated doubling of r1
  inc r1
round:
  dec r0 done
move:
  dec r1 twice
  inc r2
  dec r15 move
twice:
  dec r2 round
  inc r1
  inc r1
  dec r15 twice
done:
  halt
)";

unsigned parse_register(std::string_view tok, std::size_t line) {
  if (tok.size() < 2 || tok[0] != 'r')
    throw ProgramError("line " + std::to_string(line) + ": expected register, got '" +
                       std::string(tok) + "'");
  unsigned reg = 0;
  auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), reg);
  if (ec != std::errc() || ptr != tok.data() + tok.size() ||
      reg >= RegisterProgram::kRegisters)
    throw ProgramError("line " + std::to_string(line) + ": bad register '" +
                       std::string(tok) + "'");
  return reg;
}

}  // namespace

RegisterProgram RegisterProgram::parse(std::string_view text, std::string name) {
  struct Pending {
    std::size_t instr;
    std::string label;
    std::size_t line;
  };
  RegisterProgram prog;
  prog.name_ = std::move(name);
  std::map<std::string, std::size_t> labels;
  std::vector<Pending> pending;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    std::size_t pos = 0;
    while (pos < toks.size() && toks[pos].back() == ':') {
      std::string label = toks[pos].substr(0, toks[pos].size() - 1);
      if (label.empty() || !labels.emplace(label, prog.code_.size()).second)
        throw ProgramError("line " + std::to_string(line_no) + ": bad or duplicate label");
      ++pos;
    }
    if (pos == toks.size()) continue;
    const std::string& op = toks[pos];
    std::size_t argc = toks.size() - pos - 1;
    Instruction ins;
    if (op == "inc" && argc == 1) {
      ins.op = Op::Inc;
      ins.reg = parse_register(toks[pos + 1], line_no);
    } else if (op == "dec" && argc == 2) {
      ins.op = Op::Dec;
      ins.reg = parse_register(toks[pos + 1], line_no);
      pending.push_back({prog.code_.size(), toks[pos + 2], line_no});
    } else if (op == "halt" && argc == 0) {
      ins.op = Op::Halt;
    } else {
      throw ProgramError("line " + std::to_string(line_no) + ": cannot parse '" +
                         raw + "'");
    }
    prog.code_.push_back(ins);
  }
  for (const auto& p : pending) {
    std::size_t target = 0;
    if (auto it = labels.find(p.label); it != labels.end()) {
      target = it->second;
    } else {
      auto [ptr, ec] =
          std::from_chars(p.label.data(), p.label.data() + p.label.size(), target);
      if (ec != std::errc() || ptr != p.label.data() + p.label.size())
        throw ProgramError("line " + std::to_string(p.line) + ": unknown label '" +
                           p.label + "'");
    }
    if (target >= prog.code_.size())
      throw ProgramError("line " + std::to_string(p.line) + ": jump target out of range");
    prog.code_[p.instr].target = target;
  }
  if (prog.code_.empty()) throw ProgramError("empty program");
  return prog;
}

RegisterProgram RegisterProgram::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ProgramError("cannot open program file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

RegisterProgram RegisterProgram::demo(std::string_view name) {
  if (name == "constant-one") return parse(kConstantOne, "demo:constant-one");
  if (name == "identity") return parse(kIdentity, "demo:identity");
  if (name == "double") return parse(kDouble, "demo:double");
  if (name == "square") return parse(kSquare, "demo:square");
  if (name == "exp2") return parse(kExp2, "demo:exp2");
  throw ProgramError("unknown demo program '" + std::string(name) + "'");
}

std::vector<std::string> RegisterProgram::demo_names() {
  return {"constant-one", "identity", "double", "square", "exp2"};
}

RegisterProgram::RunResult RegisterProgram::run(std::uint64_t input,
                                                std::uint64_t step_limit) const {
  std::array<std::uint64_t, kRegisters> r{};
  r[0] = input;
  RunResult res;
  std::size_t pc = 0;
  while (res.steps < step_limit) {
    if (pc >= code_.size()) throw ProgramError(name_ + ": ran past the last instruction");
    const Instruction& ins = code_[pc];
    ++res.steps;
    switch (ins.op) {
      case Op::Inc:
        ++r[ins.reg];
        ++pc;
        break;
      case Op::Dec:
        if (r[ins.reg] == 0) {
          pc = ins.target;
        } else {
          --r[ins.reg];
          ++pc;
        }
        break;
      case Op::Halt:
        res.halted = true;
        res.output = r[1];
        return res;
    }
  }
  res.output = r[1];
  return res;
}

}  // namespace conjlab
