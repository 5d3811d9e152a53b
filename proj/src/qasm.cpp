// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qccd-compiler Authors

#include "qccd/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <optional>

namespace qccd {

QasmError::QasmError(QasmErrorKind kind, int line, int column,
                     const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(message) {}

std::vector<Gate> decompose_toffoli(int a, int b, int t) {
  if (a == b || a == t || b == t) {
    throw std::invalid_argument("ccx operands must be distinct");
  }
  auto one = [](const char* kind, int q) { return Gate{0, kind, {q}, {}}; };
  auto cx = [](int c, int x) { return Gate{0, "cx", {c, x}, {}}; };
  return {
      one("h", t),   cx(b, t),      one("tdg", t), cx(a, t),
      one("t", t),   cx(b, t),      one("tdg", t), cx(a, t),
      one("t", b),   one("t", t),   one("h", t),   cx(a, b),
      one("t", a),   one("tdg", b), cx(a, b),
  };
}

namespace {

enum class Tok { Ident, Int, Real, String, Symbol, Arrow, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space_and_comments();
    Token tok;
    tok.line = line_;
    tok.column = col_;
    if (pos_ >= src_.size()) return tok;
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.type = Tok::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        tok.text += advance();
      }
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      tok.type = Tok::Int;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        tok.text += advance();
      }
      if (pos_ < src_.size() && src_[pos_] == '.') {
        tok.type = Tok::Real;
        tok.text += advance();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          tok.text += advance();
        }
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t save = pos_;
        int save_col = col_;
        std::string exp(1, advance());
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) exp += advance();
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            exp += advance();
          }
          tok.type = Tok::Real;
          tok.text += exp;
        } else {
          pos_ = save;
          col_ = save_col;
        }
      }
      return tok;
    }
    if (c == '"') {
      tok.type = Tok::String;
      advance();
      while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
        tok.text += advance();
      }
      if (pos_ >= src_.size() || src_[pos_] != '"') {
        throw QasmError(QasmErrorKind::Syntax, tok.line, tok.column,
                        "unterminated string literal");
      }
      advance();
      return tok;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      tok.type = Tok::Arrow;
      tok.text = "->";
      return tok;
    }
    static constexpr std::string_view symbols = ";,[](){}+-*/^=<>";
    if (symbols.find(c) != std::string_view::npos) {
      tok.type = Tok::Symbol;
      tok.text = std::string(1, advance());
      return tok;
    }
    throw QasmError(QasmErrorKind::Syntax, tok.line, tok.column,
                    std::string("unexpected character '") + c + "'");
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Register {
  int offset = 0;
  int size = 0;
  bool quantum = true;
};

// A register operand, either one element or the whole register.
struct Argument {
  std::string reg;
  std::optional<int> index;
  Token at;
};

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options)
      : lex_(text), options_(options) {
    cur_ = lex_.next();
  }

  ParseResult run() {
    if (is_ident("OPENQASM")) {
      take();
      if (cur_.type != Tok::Real && cur_.type != Tok::Int) fail("expected version number");
      if (cur_.text != "2.0" && cur_.text != "2") {
        fail("unsupported OpenQASM version " + cur_.text);
      }
      take();
      expect(";");
    }
    while (cur_.type != Tok::End) statement();
    result_.circuit.n_qubits = n_qubits_;
    return std::move(result_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg,
                         QasmErrorKind kind = QasmErrorKind::Syntax) {
    throw QasmError(kind, cur_.line, cur_.column, msg);
  }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg,
                                   QasmErrorKind kind) {
    throw QasmError(kind, t.line, t.column, msg);
  }

  bool is_ident(std::string_view s) const { return cur_.type == Tok::Ident && cur_.text == s; }
  bool is_symbol(std::string_view s) const {
    return cur_.type == Tok::Symbol && cur_.text == s;
  }

  Token take() {
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  void expect(std::string_view sym) {
    if (!is_symbol(sym)) {
      fail("expected '" + std::string(sym) + "'" +
           (cur_.type == Tok::End ? " before end of input" : " but found '" + cur_.text + "'"));
    }
    take();
  }

  std::string identifier(const char* what) {
    if (cur_.type != Tok::Ident) fail(std::string("expected ") + what);
    return take().text;
  }

  int integer() {
    if (cur_.type != Tok::Int) fail("expected integer");
    Token t = take();
    long v = std::strtol(t.text.c_str(), nullptr, 10);
    if (v > 1'000'000) fail_at(t, "integer too large", QasmErrorKind::Syntax);
    return static_cast<int>(v);
  }

  void warn(const Token& at, std::string msg) {
    result_.warnings.push_back({at.line, at.column, std::move(msg)});
  }

  void statement() {
    Token head = cur_;
    if (cur_.type != Tok::Ident) fail("expected statement");
    const std::string word = cur_.text;
    if (word == "include") {
      take();
      if (cur_.type != Tok::String) fail("expected file name");
      Token file = take();
      if (file.text != "qelib1.inc") {
        fail_at(file, "only qelib1.inc may be included", QasmErrorKind::Syntax);
      }
      expect(";");
    } else if (word == "qreg" || word == "creg") {
      bool quantum = word == "qreg";
      take();
      Token name_tok = cur_;
      std::string name = identifier("register name");
      expect("[");
      int size = integer();
      expect("]");
      expect(";");
      if (size <= 0) fail_at(name_tok, "register size must be positive", QasmErrorKind::Syntax);
      if (registers_.contains(name)) {
        fail_at(name_tok, "register '" + name + "' redeclared", QasmErrorKind::Syntax);
      }
      Register reg{quantum ? n_qubits_ : 0, size, quantum};
      if (quantum) {
        n_qubits_ += size;
      } else {
        warn(head, "creg '" + name + "' ignored for scheduling");
      }
      registers_[name] = reg;
    } else if (word == "measure") {
      take();
      argument();
      if (cur_.type != Tok::Arrow) fail("expected '->'");
      take();
      argument(/*quantum=*/false);
      expect(";");
      warn(head, "measure dropped");
    } else if (word == "barrier" || word == "reset") {
      take();
      argument();
      while (is_symbol(",")) {
        take();
        argument();
      }
      expect(";");
      warn(head, word + " dropped");
    } else if (word == "gate" || word == "opaque") {
      fail("custom gate definitions are not supported");
    } else if (word == "if") {
      fail("classically controlled statements are not supported");
    } else {
      gate_statement();
    }
  }

  Argument argument(bool quantum = true) {
    Argument arg;
    arg.at = cur_;
    arg.reg = identifier("register operand");
    auto it = registers_.find(arg.reg);
    if (it == registers_.end() || it->second.quantum != quantum) {
      fail_at(arg.at,
              std::string("undeclared ") + (quantum ? "quantum" : "classical") +
                  " register '" + arg.reg + "'",
              QasmErrorKind::UndeclaredQubit);
    }
    if (is_symbol("[")) {
      take();
      Token idx_tok = cur_;
      int idx = integer();
      expect("]");
      if (idx >= it->second.size) {
        fail_at(idx_tok,
                "index " + std::to_string(idx) + " out of range for register '" +
                    arg.reg + "[" + std::to_string(it->second.size) + "]'",
                QasmErrorKind::UndeclaredQubit);
      }
      arg.index = idx;
    }
    return arg;
  }

  void gate_statement() {
    Token head = take();
    std::vector<double> params;
    if (is_symbol("(")) {
      take();
      if (!is_symbol(")")) {
        params.push_back(expression());
        while (is_symbol(",")) {
          take();
          params.push_back(expression());
        }
      }
      expect(")");
    }
    std::vector<Argument> args{argument()};
    while (is_symbol(",")) {
      take();
      args.push_back(argument());
    }
    expect(";");

    // Register-wide operands broadcast element-wise.
    int width = 1;
    for (const Argument& a : args) {
      if (a.index) continue;
      int size = registers_.at(a.reg).size;
      if (width != 1 && size != width) {
        fail_at(a.at, "register operands of different sizes", QasmErrorKind::Syntax);
      }
      width = size;
    }
    for (int k = 0; k < width; ++k) {
      std::vector<int> qubits;
      for (const Argument& a : args) {
        const Register& reg = registers_.at(a.reg);
        qubits.push_back(reg.offset + (a.index ? *a.index : k));
      }
      emit(head, qubits, params);
    }
  }

  void emit(const Token& head, const std::vector<int>& qubits,
            const std::vector<double>& params) {
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      for (std::size_t j = i + 1; j < qubits.size(); ++j) {
        if (qubits[i] == qubits[j]) {
          fail_at(head, "gate '" + head.text + "' repeats a qubit operand",
                  QasmErrorKind::Syntax);
        }
      }
    }
    Circuit& c = result_.circuit;
    c.n_qubits = n_qubits_;
    if (qubits.size() > 2) {
      if (head.text == "ccx" && qubits.size() == 3 && options_.decompose_toffoli) {
        for (Gate& g : decompose_toffoli(qubits[0], qubits[1], qubits[2])) {
          c.append(std::move(g.kind), std::move(g.operands));
        }
        return;
      }
      fail_at(head,
              "gate '" + head.text + "' acts on " + std::to_string(qubits.size()) +
                  " qubits; at most 2 are supported",
              QasmErrorKind::UnsupportedGate);
    }
    c.append(head.text, qubits, params);
  }

  // expr := term (('+'|'-') term)*
  double expression() {
    double v = term();
    while (is_symbol("+") || is_symbol("-")) {
      bool plus = take().text == "+";
      double rhs = term();
      v = plus ? v + rhs : v - rhs;
    }
    return v;
  }

  double term() {
    double v = power();
    while (is_symbol("*") || is_symbol("/")) {
      bool mul = take().text == "*";
      double rhs = power();
      v = mul ? v * rhs : v / rhs;
    }
    return v;
  }

  double power() {
    double base = unary();
    if (is_symbol("^")) {
      take();
      return std::pow(base, power());
    }
    return base;
  }

  double unary() {
    if (is_symbol("-")) {
      take();
      return -unary();
    }
    if (is_symbol("+")) {
      take();
      return unary();
    }
    return primary();
  }

  double primary() {
    if (cur_.type == Tok::Int || cur_.type == Tok::Real) {
      return std::strtod(take().text.c_str(), nullptr);
    }
    if (is_symbol("(")) {
      take();
      double v = expression();
      expect(")");
      return v;
    }
    if (cur_.type == Tok::Ident) {
      Token name = take();
      if (name.text == "pi") return std::numbers::pi;
      static const std::map<std::string, double (*)(double)> functions = {
          {"sin", [](double x) { return std::sin(x); }},
          {"cos", [](double x) { return std::cos(x); }},
          {"tan", [](double x) { return std::tan(x); }},
          {"exp", [](double x) { return std::exp(x); }},
          {"ln", [](double x) { return std::log(x); }},
          {"sqrt", [](double x) { return std::sqrt(x); }},
      };
      auto fn = functions.find(name.text);
      if (fn == functions.end()) {
        fail_at(name, "unknown identifier '" + name.text + "' in expression",
                QasmErrorKind::Syntax);
      }
      expect("(");
      double arg = expression();
      expect(")");
      return fn->second(arg);
    }
    fail("expected expression");
  }

  Lexer lex_;
  ParseOptions options_;
  Token cur_;
  std::map<std::string, Register> registers_;
  int n_qubits_ = 0;
  ParseResult result_;
};

} // namespace

ParseResult parse_qasm_with_diagnostics(std::string_view text,
                                        const ParseOptions& options) {
  return Parser(text, options).run();
}

Circuit parse_qasm(std::string_view text, const ParseOptions& options) {
  return parse_qasm_with_diagnostics(text, options).circuit;
}

} // namespace qccd
