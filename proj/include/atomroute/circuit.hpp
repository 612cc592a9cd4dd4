#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace atomroute {

enum class GateKind { OneQ, CZ };

struct Gate {
  GateKind kind = GateKind::OneQ;
  std::string name;   // lower-case gate name, "cz" for CZ
  std::string params; // raw parameter text without parentheses, may be empty
  std::vector<int> qubits;
  std::size_t sourceLine = 0;

  [[nodiscard]] bool isCZ() const { return kind == GateKind::CZ; }
};

struct Circuit {
  std::string name;
  int numQubits = 0;
  std::vector<Gate> gates;

  [[nodiscard]] std::size_t czCount() const;
  [[nodiscard]] std::size_t oneQCount() const;
};

/// Unordered qubit pair, always stored with first < second.
using QubitPair = std::pair<int, int>;

inline QubitPair makePair(int a, int b) {
  return a < b ? QubitPair{a, b} : QubitPair{b, a};
}

/// CZ counts per unordered pair. Only pairs with at least one CZ are present.
struct InteractionGraph {
  int numQubits = 0;
  std::map<QubitPair, int> weights;

  [[nodiscard]] int weight(int a, int b) const;
  [[nodiscard]] long long totalWeight() const;
};

/// For each gate, the indices of the most recent earlier gate on each of its
/// qubits (deduplicated, ascending).
struct DependencyDag {
  std::vector<std::vector<std::size_t>> predecessors;
};

bool isSupportedOneQ(std::string_view name);

Circuit parseQasm(std::string_view text, std::string name = "");
Circuit parseQasmFile(const std::string& path);

/// Serializes onto a single register `q`; parseQasm(toQasm(c)) reproduces the
/// gate list.
std::string toQasm(const Circuit& circuit);

InteractionGraph interactionGraph(const Circuit& circuit);
DependencyDag dependencyDag(const Circuit& circuit);

} // namespace atomroute
