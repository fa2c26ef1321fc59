#pragma once

// A minimal counting interpreter. Programs are lists of
//
//   inc r<k>            r<k> += 1
//   dec r<k> <target>   if r<k> == 0 jump to <target>, else r<k> -= 1
//   halt
//
// where <target> is a label (declared as `name:`) or an instruction number.
// Input is placed in r0, output is read from r1. Every executed instruction,
// including the final halt, is one step. `#` starts a comment.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace conjlab {

class ProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RegisterProgram {
 public:
  enum class Op : std::uint8_t { Inc, Dec, Halt };

  struct Instruction {
    Op op = Op::Halt;
    unsigned reg = 0;
    std::size_t target = 0;
  };

  struct RunResult {
    std::uint64_t output = 0;
    std::uint64_t steps = 0;
    bool halted = false;  // false when the step limit was reached first
  };

  static constexpr unsigned kRegisters = 16;

  static RegisterProgram parse(std::string_view text, std::string name = "<inline>");
  static RegisterProgram load(const std::filesystem::path& path);

  /// Bundled demo programs: constant-one, identity, double, square, exp2.
  static RegisterProgram demo(std::string_view name);
  static std::vector<std::string> demo_names();

  [[nodiscard]] RunResult run(std::uint64_t input, std::uint64_t step_limit) const;

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t size() const noexcept { return code_.size(); }

 private:
  std::string name_;
  std::vector<Instruction> code_;
};

}  // namespace conjlab
