#include "atomroute/circuit.hpp"

#include "atomroute/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

namespace atomroute {

namespace {

constexpr std::array kOneQWhitelist = {
    std::string_view{"u1"}, std::string_view{"u2"},  std::string_view{"u3"},
    std::string_view{"u"},  std::string_view{"rz"},  std::string_view{"rx"},
    std::string_view{"ry"}, std::string_view{"h"},   std::string_view{"x"},
    std::string_view{"y"},  std::string_view{"z"},   std::string_view{"s"},
    std::string_view{"sdg"}, std::string_view{"t"},  std::string_view{"tdg"},
    std::string_view{"id"}};

struct Statement {
  std::string text;
  std::size_t line = 1;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) {
    ++b;
  }
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) {
    --e;
  }
  return std::string(s.substr(b, e - b));
}

bool startsWithWord(std::string_view s, std::string_view word) {
  if (s.substr(0, word.size()) != word) {
    return false;
  }
  return s.size() == word.size() ||
         !(std::isalnum(static_cast<unsigned char>(s[word.size()])) != 0 ||
           s[word.size()] == '_');
}

bool isIdentifier(std::string_view s) {
  if (s.empty() ||
      !(std::isalpha(static_cast<unsigned char>(s.front())) != 0)) {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

// Splits the program into `;`-terminated statements, dropping comments and
// gate/opaque definition bodies.
std::vector<Statement> splitStatements(std::string_view text) {
  std::vector<Statement> out;
  Statement cur;
  std::size_t line = 1;
  bool fresh = true;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') {
        ++i;
      }
      if (i < text.size()) {
        ++line;
        cur.text.push_back(' ');
      }
      continue;
    }
    if (c == '\n') {
      ++line;
      cur.text.push_back(' ');
      continue;
    }
    if (fresh && std::isspace(static_cast<unsigned char>(c)) == 0) {
      cur.line = line;
      fresh = false;
    }
    if (c == '{') {
      const std::string head = trim(cur.text);
      if (!startsWithWord(head, "gate") && !startsWithWord(head, "opaque")) {
        throw ParseError(line, "unexpected '{'");
      }
      int depth = 1;
      const std::size_t openLine = line;
      while (depth > 0) {
        ++i;
        if (i >= text.size()) {
          throw ParseError(openLine, "unterminated gate body");
        }
        if (text[i] == '{') {
          ++depth;
        } else if (text[i] == '}') {
          --depth;
        } else if (text[i] == '\n') {
          ++line;
        }
      }
      cur = Statement{};
      fresh = true;
      continue;
    }
    if (c == ';') {
      cur.text = trim(cur.text);
      if (cur.text.empty()) {
        throw ParseError(line, "empty statement");
      }
      out.push_back(std::move(cur));
      cur = Statement{};
      fresh = true;
      continue;
    }
    cur.text.push_back(c);
  }
  if (!trim(cur.text).empty()) {
    throw ParseError(cur.line, "missing ';' after '" + trim(cur.text) + "'");
  }
  return out;
}

struct Register {
  std::string name;
  int offset = 0;
  int size = 0;
};

class Parser {
public:
  explicit Parser(Circuit& circuit) : circuit_(circuit) {}

  void statement(const Statement& st) {
    const std::string& s = st.text;
    line_ = st.line;
    if (!sawHeader_) {
      if (!startsWithWord(s, "OPENQASM")) {
        throw ParseError(line_, "expected 'OPENQASM 2.0' header");
      }
      const std::string version = trim(std::string_view(s).substr(8));
      if (version.rfind("2.", 0) != 0 && version != "2") {
        throw ParseError(line_, "unsupported OpenQASM version " + version);
      }
      sawHeader_ = true;
      return;
    }
    if (startsWithWord(s, "OPENQASM")) {
      throw ParseError(line_, "duplicate OPENQASM header");
    }
    if (startsWithWord(s, "include")) {
      return;
    }
    if (startsWithWord(s, "qreg")) {
      declareQreg(trim(std::string_view(s).substr(4)));
      return;
    }
    if (startsWithWord(s, "creg") || startsWithWord(s, "barrier") ||
        startsWithWord(s, "measure")) {
      return;
    }
    if (startsWithWord(s, "if")) {
      throw ParseError(line_, "classical control is not supported");
    }
    if (startsWithWord(s, "gate") || startsWithWord(s, "opaque")) {
      // opaque declarations end in ';' with no body
      return;
    }
    gateCall(s);
  }

private:
  void declareQreg(const std::string& decl) {
    const auto lb = decl.find('[');
    const auto rb = decl.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb ||
        trim(std::string_view(decl).substr(rb + 1)) != "") {
      throw ParseError(line_, "malformed qreg declaration");
    }
    Register reg;
    reg.name = trim(std::string_view(decl).substr(0, lb));
    if (!isIdentifier(reg.name)) {
      throw ParseError(line_, "bad register name '" + reg.name + "'");
    }
    reg.size = parseIndex(trim(std::string_view(decl).substr(lb + 1, rb - lb - 1)));
    if (reg.size <= 0) {
      throw ParseError(line_, "register size must be positive");
    }
    if (findRegister(reg.name) != nullptr) {
      throw ParseError(line_, "duplicate register '" + reg.name + "'");
    }
    reg.offset = circuit_.numQubits;
    circuit_.numQubits += reg.size;
    registers_.push_back(reg);
  }

  int parseIndex(const std::string& s) const {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c)) != 0;
        })) {
      throw ParseError(line_, "expected integer, got '" + s + "'");
    }
    try {
      return std::stoi(s);
    } catch (const std::exception&) {
      throw ParseError(line_, "integer out of range '" + s + "'");
    }
  }

  const Register* findRegister(const std::string& name) const {
    for (const auto& r : registers_) {
      if (r.name == name) {
        return &r;
      }
    }
    return nullptr;
  }

  // One argument expands to a single qubit or to a whole register.
  std::vector<int> argument(const std::string& arg) const {
    const auto lb = arg.find('[');
    const std::string regName =
        trim(std::string_view(arg).substr(0, lb));
    const Register* reg = findRegister(regName);
    if (reg == nullptr) {
      throw ParseError(line_, "unknown quantum register '" + regName + "'");
    }
    if (lb == std::string::npos) {
      std::vector<int> all(static_cast<std::size_t>(reg->size));
      for (int k = 0; k < reg->size; ++k) {
        all[static_cast<std::size_t>(k)] = reg->offset + k;
      }
      return all;
    }
    const auto rb = arg.find(']', lb);
    if (rb == std::string::npos || trim(std::string_view(arg).substr(rb + 1)) != "") {
      throw ParseError(line_, "malformed argument '" + arg + "'");
    }
    const int idx = parseIndex(trim(std::string_view(arg).substr(lb + 1, rb - lb - 1)));
    if (idx >= reg->size) {
      throw ParseError(line_, "index " + std::to_string(idx) +
                                  " out of range for register '" + regName +
                                  "'");
    }
    return {reg->offset + idx};
  }

  void gateCall(const std::string& s) {
    std::size_t pos = 0;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) != 0 ||
            s[pos] == '_')) {
      ++pos;
    }
    std::string name = s.substr(0, pos);
    if (!isIdentifier(name)) {
      throw ParseError(line_, "malformed statement '" + s + "'");
    }
    std::string params;
    std::string rest = trim(std::string_view(s).substr(pos));
    if (!rest.empty() && rest.front() == '(') {
      int depth = 0;
      std::size_t close = std::string::npos;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] == '(') {
          ++depth;
        } else if (rest[i] == ')' && --depth == 0) {
          close = i;
          break;
        }
      }
      if (close == std::string::npos) {
        throw ParseError(line_, "unbalanced parentheses in '" + s + "'");
      }
      params = trim(std::string_view(rest).substr(1, close - 1));
      rest = trim(std::string_view(rest).substr(close + 1));
    }
    if (rest.empty()) {
      throw ParseError(line_, "gate '" + name + "' has no arguments");
    }
    std::vector<std::vector<int>> args;
    std::stringstream ss(rest);
    std::string arg;
    while (std::getline(ss, arg, ',')) {
      arg = trim(arg);
      if (arg.empty()) {
        throw ParseError(line_, "empty argument in '" + s + "'");
      }
      args.push_back(argument(arg));
    }

    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (name == "U") {
      lower = "u";
    }
    const bool isCz = name == "cz";
    const bool isOneQ = name == lower ? isSupportedOneQ(lower) : name == "U";
    if (!isCz && !isOneQ) {
      throw UnsupportedGate(line_, name);
    }
    const std::size_t arity = isCz ? 2 : 1;
    if (args.size() != arity) {
      throw ParseError(line_, "gate '" + name + "' expects " +
                                  std::to_string(arity) + " argument(s)");
    }
    std::size_t width = 1;
    for (const auto& a : args) {
      if (a.size() > 1) {
        if (width > 1 && a.size() != width) {
          throw ParseError(line_, "register size mismatch in '" + s + "'");
        }
        width = a.size();
      }
    }
    for (std::size_t k = 0; k < width; ++k) {
      Gate g;
      g.kind = isCz ? GateKind::CZ : GateKind::OneQ;
      g.name = lower;
      g.params = params;
      g.sourceLine = line_;
      for (const auto& a : args) {
        g.qubits.push_back(a.size() == 1 ? a.front() : a[k]);
      }
      if (isCz && g.qubits[0] == g.qubits[1]) {
        throw ParseError(line_, "cz on identical qubits");
      }
      circuit_.gates.push_back(std::move(g));
    }
  }

  Circuit& circuit_;
  std::vector<Register> registers_;
  std::size_t line_ = 1;
  bool sawHeader_ = false;
};

} // namespace

std::size_t Circuit::czCount() const {
  return static_cast<std::size_t>(std::count_if(
      gates.begin(), gates.end(), [](const Gate& g) { return g.isCZ(); }));
}

std::size_t Circuit::oneQCount() const { return gates.size() - czCount(); }

int InteractionGraph::weight(int a, int b) const {
  const auto it = weights.find(makePair(a, b));
  return it == weights.end() ? 0 : it->second;
}

long long InteractionGraph::totalWeight() const {
  long long total = 0;
  for (const auto& [pair, w] : weights) {
    total += w;
  }
  return total;
}

bool isSupportedOneQ(std::string_view name) {
  return std::find(kOneQWhitelist.begin(), kOneQWhitelist.end(), name) !=
         kOneQWhitelist.end();
}

Circuit parseQasm(std::string_view text, std::string name) {
  Circuit circuit;
  circuit.name = std::move(name);
  Parser parser(circuit);
  const auto statements = splitStatements(text);
  if (statements.empty()) {
    throw ParseError(1, "expected 'OPENQASM 2.0' header");
  }
  for (const auto& st : statements) {
    parser.statement(st);
  }
  return circuit;
}

Circuit parseQasmFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) {
    stem = stem.substr(slash + 1);
  }
  if (const auto dot = stem.rfind('.'); dot != std::string::npos) {
    stem = stem.substr(0, dot);
  }
  return parseQasm(buffer.str(), stem);
}

std::string toQasm(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  if (circuit.numQubits > 0) {
    out << "qreg q[" << circuit.numQubits << "];\n";
  }
  for (const auto& g : circuit.gates) {
    out << g.name;
    if (!g.params.empty()) {
      out << '(' << g.params << ')';
    }
    for (std::size_t k = 0; k < g.qubits.size(); ++k) {
      out << (k == 0 ? " " : ",") << "q[" << g.qubits[k] << ']';
    }
    out << ";\n";
  }
  return out.str();
}

InteractionGraph interactionGraph(const Circuit& circuit) {
  InteractionGraph g;
  g.numQubits = circuit.numQubits;
  for (const auto& gate : circuit.gates) {
    if (gate.isCZ()) {
      ++g.weights[makePair(gate.qubits[0], gate.qubits[1])];
    }
  }
  return g;
}

DependencyDag dependencyDag(const Circuit& circuit) {
  DependencyDag dag;
  dag.predecessors.resize(circuit.gates.size());
  std::vector<long long> last(static_cast<std::size_t>(circuit.numQubits), -1);
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    auto& preds = dag.predecessors[i];
    for (const int q : circuit.gates[i].qubits) {
      auto& l = last[static_cast<std::size_t>(q)];
      if (l >= 0) {
        preds.push_back(static_cast<std::size_t>(l));
      }
      l = static_cast<long long>(i);
    }
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
  }
  return dag;
}

} // namespace atomroute
