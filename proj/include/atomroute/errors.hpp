#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atomroute {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// A gate outside the 1Q whitelist + `cz`; the input must be transpiled to
/// the CZ gate set before compiling.
class UnsupportedGate : public ParseError {
public:
  UnsupportedGate(std::size_t line, const std::string& gate)
      : ParseError(line, "unsupported gate '" + gate + "'"), gate_(gate) {}
  [[nodiscard]] const std::string& gate() const { return gate_; }

private:
  std::string gate_;
};

class DegenerateInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class UnknownTrap : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// No SWAP path, no reachable empty trap and no eviction chain exists for a
/// blocked CZ.
class NoValidTransport : public std::runtime_error {
public:
  NoValidTransport(int qubitA, int qubitB, std::size_t gate,
                   bool swapUnavailable, bool shuttleUnavailable,
                   bool evictionUnavailable)
      : std::runtime_error(describe(qubitA, qubitB, gate, swapUnavailable,
                                    shuttleUnavailable, evictionUnavailable)),
        qubitA(qubitA), qubitB(qubitB), gate(gate),
        swapUnavailable(swapUnavailable),
        shuttleUnavailable(shuttleUnavailable),
        evictionUnavailable(evictionUnavailable) {}

  int qubitA;
  int qubitB;
  std::size_t gate;
  bool swapUnavailable;
  bool shuttleUnavailable;
  bool evictionUnavailable;

private:
  static std::string describe(int a, int b, std::size_t gate, bool sw,
                              bool sh, bool ev) {
    auto flag = [](bool v) { return v ? "unavailable" : "available"; };
    return "no valid transport for qubit pair (" + std::to_string(a) + ", " +
           std::to_string(b) + ") at gate " + std::to_string(gate) +
           ": swap " + flag(sw) + ", shuttle " + flag(sh) + ", eviction " +
           flag(ev);
  }
};

class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(double budgetSeconds)
      : std::runtime_error("compile budget of " +
                           std::to_string(budgetSeconds) + " s exceeded"),
        budgetSeconds(budgetSeconds) {}
  double budgetSeconds;
};

/// An artifact without a schedule was given to a command that needs one.
class MissingSchedule : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace atomroute
