// Copyright 2026 The qcollapse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>

#include <fmt/format.h>

#include "qcollapse/error.hpp"
#include "qcollapse/scenario.hpp"
#include "qcollapse/states.hpp"

namespace qcollapse::scenario {
namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind { kIdent, kNumber, kKet, kSymbol, kNewline, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  double number = 0.0;
  bool integral = false;
  char symbol = 0;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    while (true) {
      skip_blanks();
      Token t;
      t.pos = {line_, column_};
      if (at_end()) {
        t.kind = Token::Kind::kEnd;
        out.push_back(t);
        return out;
      }
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      if (c == '\n') {
        advance();
        t.kind = Token::Kind::kNewline;
        out.push_back(t);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Token::Kind::kIdent;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                             peek() == '_')) {
          t.text.push_back(advance());
        }
        out.push_back(t);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        out.push_back(number(t));
        continue;
      }
      if (c == '|') {
        out.push_back(ket(t));
        continue;
      }
      if (std::string_view("=,;()*/+-").find(c) != std::string_view::npos) {
        t.kind = Token::Kind::kSymbol;
        t.symbol = advance();
        t.text = std::string(1, t.symbol);
        out.push_back(t);
        continue;
      }
      throw ParseError(ErrorKind::kParse, line_, column_,
                       describe_char(c, "unexpected character"));
    }
  }

 private:
  static std::string describe_char(char c, const char* what) {
    if (std::isprint(static_cast<unsigned char>(c))) {
      return fmt::format("{} '{}'", what, c);
    }
    return fmt::format("{} (byte 0x{:02x})", what, static_cast<unsigned char>(c));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }
  void skip_blanks() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }

  Token number(Token t) {
    t.kind = Token::Kind::kNumber;
    t.integral = true;
    while (std::isdigit(static_cast<unsigned char>(peek()))) t.text.push_back(advance());
    if (peek() == '.') {
      t.integral = false;
      t.text.push_back(advance());
      while (std::isdigit(static_cast<unsigned char>(peek()))) t.text.push_back(advance());
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') &&
          std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      t.integral = false;
      t.text.push_back(advance());
      if (peek() == '+' || peek() == '-') t.text.push_back(advance());
      while (std::isdigit(static_cast<unsigned char>(peek()))) t.text.push_back(advance());
    }
    t.number = std::strtod(t.text.c_str(), nullptr);
    if (!std::isfinite(t.number)) {
      throw ParseError(ErrorKind::kParse, t.pos.line, t.pos.column,
                       fmt::format("number '{}' out of range", t.text));
    }
    return t;
  }

  Token ket(Token t) {
    t.kind = Token::Kind::kKet;
    advance();  // '|'
    while (true) {
      if (at_end() || peek() == '\n') {
        throw ParseError(ErrorKind::kParse, line_, column_, "unterminated ket, expected '>'");
      }
      const char c = peek();
      if (c == '>') {
        advance();
        break;
      }
      if (c != '0' && c != '1' && c != '+' && c != '-') {
        throw ParseError(ErrorKind::kParse, line_, column_,
                         describe_char(c, "invalid ket symbol") +
                             "; expected 0, 1, + or -");
      }
      t.text.push_back(advance());
    }
    if (t.text.empty()) {
      throw ParseError(ErrorKind::kParse, t.pos.line, t.pos.column, "empty ket");
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

const std::set<std::string, std::less<>> kBuiltinStates = {"phi0", "phi1", "psi0",
                                                           "psi1", "eta_tilde"};
const std::set<std::string, std::less<>> kReserved = {
    "qubits", "state",     "obs",   "measure", "outcomes", "assert_prob",
    "report", "phi0",      "phi1",  "psi0",    "psi1",     "eta_tilde",
    "F",      "G",         "i",     "sqrt",    "normalize", "singlet",
    "embed",  "sigma",     "sigmax", "sigmay", "sigmaz"};

std::optional<PauliAxis> axis_from(std::string_view s) {
  if (s.size() != 1) return std::nullopt;
  switch (std::tolower(static_cast<unsigned char>(s[0]))) {
    case 'x': return PauliAxis::kX;
    case 'y': return PauliAxis::kY;
    case 'z': return PauliAxis::kZ;
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Parser + evaluator

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Config& config)
      : toks_(std::move(tokens)), config_(config) {}

  Scenario run() {
    while (true) {
      while (peek().kind == Token::Kind::kNewline) ++i_;
      if (peek().kind == Token::Kind::kEnd) break;
      statement();
    }
    return std::move(sc_);
  }

 private:
  // -- token helpers --------------------------------------------------------
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (i_ < toks_.size() - 1) ++i_;
    return t;
  }
  bool is_symbol(const Token& t, char c) const {
    return t.kind == Token::Kind::kSymbol && t.symbol == c;
  }
  bool is_ident(const Token& t, std::string_view s) const {
    return t.kind == Token::Kind::kIdent && t.text == s;
  }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::kNewline: return "end of line";
      case Token::Kind::kEnd: return "end of input";
      case Token::Kind::kKet: return fmt::format("ket '|{}>'", t.text);
      default: return fmt::format("'{}'", t.text);
    }
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(ErrorKind::kParse, t.pos.line, t.pos.column, msg);
  }
  [[noreturn]] void semantic(SourcePos pos, const std::string& msg) const {
    throw ParseError(ErrorKind::kSemantic, pos.line, pos.column, msg);
  }
  void expect_symbol(char c, const char* context) {
    const Token& t = peek();
    if (!is_symbol(t, c)) {
      fail(t, fmt::format("expected '{}' {}, found {}", c, context, describe(t)));
    }
    next();
  }
  std::string expect_name(const char* context) {
    const Token& t = peek();
    if (t.kind != Token::Kind::kIdent) {
      fail(t, fmt::format("expected a name {}, found {}", context, describe(t)));
    }
    next();
    return t.text;
  }
  int expect_int(const char* context) {
    const Token& t = peek();
    if (t.kind != Token::Kind::kNumber || !t.integral) {
      fail(t, fmt::format("expected an integer {}, found {}", context, describe(t)));
    }
    next();
    if (t.text.size() > 6) fail(t, fmt::format("integer '{}' too large", t.text));
    return std::atoi(t.text.c_str());
  }
  void expect_line_end() {
    const Token& t = peek();
    if (t.kind != Token::Kind::kNewline && t.kind != Token::Kind::kEnd) {
      fail(t, fmt::format("expected end of line, found {}", describe(t)));
    }
    next();
  }

  // -- statements -----------------------------------------------------------
  void statement() {
    const Token& head = peek();
    if (head.kind != Token::Kind::kIdent) {
      fail(head, fmt::format("expected a statement keyword, found {}", describe(head)));
    }
    Statement st;
    st.pos = head.pos;
    if (head.text == "qubits") {
      next();
      st.kind = Statement::Kind::kQubits;
      const Token& num = peek();
      st.qubits = expect_int("after 'qubits'");
      if (sc_.n_qubits) semantic(head.pos, "'qubits' declared twice");
      if (st.qubits < 1 || st.qubits > config_.max_qubits) {
        semantic(num.pos, fmt::format("qubit count {} outside [1, {}]", st.qubits,
                                      config_.max_qubits));
      }
      sc_.n_qubits = st.qubits;
    } else if (head.text == "state") {
      next();
      st.kind = Statement::Kind::kState;
      const Token& name_tok = peek();
      st.name = expect_name("after 'state'");
      check_new_name(name_tok);
      expect_symbol('=', "after the state name");
      st.state = sum();
      StateVector v = eval_state(*st.state);
      if (!v.is_normalized(config_.norm)) {
        semantic(st.state->pos,
                 fmt::format("state '{}' has squared norm {:.12g}; wrap it in "
                             "normalize(...) if that is intended",
                             st.name, v.squared_norm()));
      }
      sc_.states.emplace_back(st.name, std::move(v));
      current_ = st.name;
    } else if (head.text == "obs") {
      next();
      st.kind = Statement::Kind::kObs;
      const Token& name_tok = peek();
      st.name = expect_name("after 'obs'");
      check_new_name(name_tok);
      expect_symbol('=', "after the observable name");
      st.obs = obs_expr();
      sc_.observables.emplace_back(st.name, eval_obs(*st.obs));
    } else if (head.text == "measure") {
      next();
      st.kind = Statement::Kind::kMeasure;
      std::vector<const Token*> name_toks;
      name_toks.push_back(&peek());
      st.names.push_back(expect_name("after 'measure'"));
      while (is_symbol(peek(), ',')) {
        next();
        name_toks.push_back(&peek());
        st.names.push_back(expect_name("after ','"));
      }
      if (!is_ident(peek(), "outcomes")) {
        fail(peek(), fmt::format("expected 'outcomes', found {}", describe(peek())));
      }
      next();
      const Token& signs_tok = peek();
      st.outcomes = signs();
      if (st.outcomes.size() != st.names.size()) {
        semantic(signs_tok.pos, fmt::format("{} outcomes for {} observables",
                                            st.outcomes.size(), st.names.size()));
      }
      for (std::size_t k = 0; k < st.names.size(); ++k) {
        check_measurable(*name_toks[k], st.outcomes[k], signs_tok.pos);
      }
    } else if (head.text == "assert_prob") {
      next();
      st.kind = Statement::Kind::kAssertProb;
      const Token& name_tok = peek();
      st.name = expect_name("after 'assert_prob'");
      const Token& signs_tok = peek();
      st.outcomes = signs();
      if (st.outcomes.size() != 1) {
        semantic(signs_tok.pos, "assert_prob takes exactly one outcome sign");
      }
      expect_symbol('=', "before the expected probability");
      st.expected = rational();
      check_measurable(name_tok, st.outcomes[0], signs_tok.pos);
    } else if (head.text == "report") {
      next();
      st.kind = Statement::Kind::kReport;
      const Token& name_tok = peek();
      st.name = expect_name("after 'report'");
      if (sc_.find_observable(st.name)) {
        check_measurable(name_tok, std::nullopt, name_tok.pos);
      } else if (!sc_.find_state(st.name)) {
        semantic(name_tok.pos, fmt::format("unknown name '{}'", st.name));
      }
    } else {
      fail(head, fmt::format("unknown statement '{}'", head.text));
    }
    expect_line_end();
    sc_.statements.push_back(std::move(st));
  }

  void check_new_name(const Token& t) {
    if (kReserved.count(t.text)) {
      semantic(t.pos, fmt::format("'{}' is reserved", t.text));
    }
    if (sc_.find_state(t.text) || sc_.find_observable(t.text)) {
      semantic(t.pos, fmt::format("'{}' is already defined", t.text));
    }
  }

  void check_measurable(const Token& name_tok, std::optional<double> outcome,
                        SourcePos outcome_pos) {
    const SpectralObservable* obs = sc_.find_observable(name_tok.text);
    if (!obs) {
      semantic(name_tok.pos, sc_.find_state(name_tok.text)
                                 ? fmt::format("'{}' is a state, not an observable",
                                               name_tok.text)
                                 : fmt::format("unknown observable '{}'", name_tok.text));
    }
    if (!current_) {
      semantic(name_tok.pos, "no state has been declared yet");
    }
    const StateVector* s = sc_.find_state(*current_);
    if (s->n_qubits() != obs->n_qubits()) {
      semantic(name_tok.pos,
               fmt::format("'{}' acts on {} qubits but the current state '{}' has {}",
                           name_tok.text, obs->n_qubits(), *current_, s->n_qubits()));
    }
    if (outcome && !obs->find_branch(*outcome, config_.cluster)) {
      semantic(outcome_pos, fmt::format("{:+g} is not an eigenvalue of '{}'",
                                        *outcome, name_tok.text));
    }
  }

  std::vector<double> signs() {
    std::vector<double> out;
    while (true) {
      const Token& t = peek();
      if (is_symbol(t, '+')) {
        out.push_back(1.0);
      } else if (is_symbol(t, '-')) {
        out.push_back(-1.0);
      } else if (t.kind == Token::Kind::kNumber && t.integral &&
                 t.text.find_first_not_of('0') == std::string::npos) {
        out.insert(out.end(), t.text.size(), 0.0);
      } else {
        break;
      }
      next();
    }
    if (out.empty()) {
      fail(peek(), fmt::format("expected outcome signs (+, - or 0), found {}",
                               describe(peek())));
    }
    return out;
  }

  Rational rational() {
    Rational r;
    const Token& t = peek();
    if (t.kind != Token::Kind::kNumber) {
      fail(t, fmt::format("expected a probability, found {}", describe(t)));
    }
    next();
    r.numerator = t.number;
    if (is_symbol(peek(), '/')) {
      next();
      const Token& d = peek();
      if (d.kind != Token::Kind::kNumber) {
        fail(d, fmt::format("expected a denominator, found {}", describe(d)));
      }
      next();
      if (d.number == 0.0) semantic(d.pos, "zero denominator");
      r.denominator = d.number;
    }
    return r;
  }

  // -- state expressions ----------------------------------------------------
  bool starts_coefficient(const Token& t) const {
    return t.kind == Token::Kind::kNumber || is_ident(t, "sqrt") || is_ident(t, "i");
  }

  Coefficient::Factor coefficient_factor() {
    const Token& t = peek();
    Coefficient::Factor f;
    if (t.kind == Token::Kind::kNumber) {
      next();
      f.value = t.number;
    } else if (is_ident(t, "sqrt")) {
      next();
      expect_symbol('(', "after 'sqrt'");
      const Token& arg = peek();
      if (arg.kind != Token::Kind::kNumber) {
        fail(arg, fmt::format("expected a number inside sqrt(), found {}", describe(arg)));
      }
      next();
      expect_symbol(')', "to close sqrt(");
      f.kind = Coefficient::Factor::Kind::kSqrt;
      f.value = arg.number;
    } else if (is_ident(t, "i")) {
      next();
      f.kind = Coefficient::Factor::Kind::kImaginary;
    } else {
      fail(t, fmt::format("expected a coefficient, found {}", describe(t)));
    }
    return f;
  }

  Coefficient coefficient() {
    Coefficient c;
    c.factors.push_back(coefficient_factor());
    while ((is_symbol(peek(), '*') || is_symbol(peek(), '/')) &&
           starts_coefficient(peek(1))) {
      const bool divide = is_symbol(next(), '/');
      auto f = coefficient_factor();
      f.divide = divide;
      if (divide && f.kind != Coefficient::Factor::Kind::kImaginary && f.value == 0.0) {
        semantic(peek().pos, "division by zero in coefficient");
      }
      c.factors.push_back(f);
    }
    return c;
  }

  StateExprPtr make(StateExpr e) { return std::make_shared<const StateExpr>(std::move(e)); }

  StateExprPtr sum() {
    const SourcePos start = peek().pos;
    StateExprPtr lhs;
    if (is_symbol(peek(), '-')) {
      next();
      StateExprPtr t = term();
      if (t->kind == StateExpr::Kind::kScaled && !t->coeff.negate) {
        StateExpr copy = *t;
        copy.coeff.negate = true;
        copy.pos = start;
        lhs = make(std::move(copy));
      } else {
        StateExpr e;
        e.kind = StateExpr::Kind::kScaled;
        e.pos = start;
        e.coeff.negate = true;
        e.lhs = t;
        lhs = make(std::move(e));
      }
    } else {
      lhs = term();
    }
    while (is_symbol(peek(), '+') || is_symbol(peek(), '-')) {
      const Token& op = next();
      StateExpr e;
      e.kind = op.symbol == '+' ? StateExpr::Kind::kSum : StateExpr::Kind::kDifference;
      e.pos = op.pos;
      e.lhs = lhs;
      e.rhs = term();
      lhs = make(std::move(e));
    }
    return lhs;
  }

  StateExprPtr term() {
    StateExprPtr lhs = factor();
    while (is_symbol(peek(), '*')) {
      const Token& op = next();
      StateExpr e;
      e.kind = StateExpr::Kind::kTensor;
      e.pos = op.pos;
      e.lhs = lhs;
      e.rhs = factor();
      lhs = make(std::move(e));
    }
    return lhs;
  }

  StateExprPtr factor() {
    if (starts_coefficient(peek())) {
      StateExpr e;
      e.kind = StateExpr::Kind::kScaled;
      e.pos = peek().pos;
      e.coeff = coefficient();
      if (is_symbol(peek(), '*')) next();
      e.lhs = atom();
      return make(std::move(e));
    }
    return atom();
  }

  StateExprPtr atom() {
    const Token& t = peek();
    StateExpr e;
    e.pos = t.pos;
    if (t.kind == Token::Kind::kKet) {
      next();
      e.kind = StateExpr::Kind::kKet;
      e.text = t.text;
      return make(std::move(e));
    }
    if (is_symbol(t, '(')) {
      next();
      StateExprPtr inner = sum();
      expect_symbol(')', "to close '('");
      return inner;
    }
    if (t.kind == Token::Kind::kIdent) {
      if (t.text == "normalize") {
        next();
        expect_symbol('(', "after 'normalize'");
        e.kind = StateExpr::Kind::kNormalize;
        e.lhs = sum();
        expect_symbol(')', "to close normalize(");
        return make(std::move(e));
      }
      if (t.text == "singlet") {
        next();
        expect_symbol('(', "after 'singlet'");
        e.kind = StateExpr::Kind::kSinglet;
        while (true) {
          const int a = expect_int("(singlet site)");
          expect_symbol(',', "between singlet sites");
          const int b = expect_int("(singlet site)");
          e.pairs.emplace_back(a, b);
          if (!is_symbol(peek(), ';')) break;
          next();
        }
        expect_symbol(')', "to close singlet(");
        return make(std::move(e));
      }
      next();
      e.kind = kBuiltinStates.count(t.text) ? StateExpr::Kind::kBuiltin
                                            : StateExpr::Kind::kName;
      e.text = t.text;
      return make(std::move(e));
    }
    fail(t, fmt::format("expected a state expression, found {}", describe(t)));
  }

  StateVector eval_state(const StateExpr& e) {
    try {
      switch (e.kind) {
        case StateExpr::Kind::kKet: {
          std::vector<AxisBit> spec;
          for (char c : e.text) {
            switch (c) {
              case '0': spec.push_back({KetAxis::kZ, 0}); break;
              case '1': spec.push_back({KetAxis::kZ, 1}); break;
              case '+': spec.push_back({KetAxis::kX, 0}); break;
              default: spec.push_back({KetAxis::kX, 1}); break;
            }
          }
          return basis_ket(spec, config_);
        }
        case StateExpr::Kind::kName: {
          if (const StateVector* s = sc_.find_state(e.text)) return *s;
          if (sc_.find_observable(e.text)) {
            semantic(e.pos, fmt::format("'{}' is an observable, not a state", e.text));
          }
          semantic(e.pos, fmt::format("unknown state '{}'", e.text));
        }
        case StateExpr::Kind::kBuiltin: {
          if (e.text == "eta_tilde") return eta_tilde();
          const SpinZeroBasis b = spin_zero_basis();
          return (e.text == "phi0" || e.text == "psi0") ? b.phi0 : b.phi1;
        }
        case StateExpr::Kind::kSinglet: {
          int n = 0;
          for (const auto& [a, b] : e.pairs) n = std::max({n, a, b});
          return singlet_pairs(e.pairs, n, config_);
        }
        case StateExpr::Kind::kTensor:
          return tensor(eval_state(*e.lhs), eval_state(*e.rhs), config_);
        case StateExpr::Kind::kSum:
        case StateExpr::Kind::kDifference: {
          StateVector a = eval_state(*e.lhs);
          StateVector b = eval_state(*e.rhs);
          if (a.n_qubits() != b.n_qubits()) {
            semantic(e.pos, fmt::format("cannot {} a {}-qubit and a {}-qubit state",
                                        e.kind == StateExpr::Kind::kSum ? "add" : "subtract",
                                        a.n_qubits(), b.n_qubits()));
          }
          return e.kind == StateExpr::Kind::kSum ? a + b : a - b;
        }
        case StateExpr::Kind::kScaled:
          return eval_state(*e.lhs) * e.coeff.value();
        case StateExpr::Kind::kNormalize:
          return eval_state(*e.lhs).normalized();
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      semantic(e.pos, err.what());
    }
    semantic(e.pos, "unhandled expression");
  }

  // -- observable expressions -----------------------------------------------
  ObsExprPtr obs_expr() {
    const Token& t = peek();
    ObsExpr e;
    e.pos = t.pos;
    if (t.kind != Token::Kind::kIdent) {
      fail(t, fmt::format("expected an observable expression, found {}", describe(t)));
    }
    next();
    if (t.text == "sigma" || t.text == "sigmax" || t.text == "sigmay" ||
        t.text == "sigmaz") {
      e.kind = ObsExpr::Kind::kPauli;
      std::optional<PauliAxis> axis;
      if (t.text == "sigma") {
        const Token& a = peek();
        if (a.kind == Token::Kind::kIdent) axis = axis_from(a.text);
        if (!axis) fail(a, fmt::format("expected axis x, y or z, found {}", describe(a)));
        next();
      } else {
        axis = axis_from(t.text.substr(5));
      }
      e.axis = *axis;
      e.site = expect_int("(pauli site)");
    } else if (t.text == "F") {
      e.kind = ObsExpr::Kind::kF;
    } else if (t.text == "G") {
      e.kind = ObsExpr::Kind::kG;
    } else if (t.text == "embed") {
      e.kind = ObsExpr::Kind::kEmbed;
      expect_symbol('(', "after 'embed'");
      e.inner = obs_expr();
      expect_symbol(';', "after the embedded observable");
      e.sites.push_back(expect_int("(embed site)"));
      while (is_symbol(peek(), ',')) {
        next();
        e.sites.push_back(expect_int("(embed site)"));
      }
      expect_symbol(';', "before the register size");
      e.n_qubits = expect_int("(register size)");
      expect_symbol(')', "to close embed(");
    } else {
      e.kind = ObsExpr::Kind::kName;
      e.name = t.text;
    }
    return std::make_shared<const ObsExpr>(std::move(e));
  }

  SpectralObservable eval_obs(const ObsExpr& e) {
    try {
      switch (e.kind) {
        case ObsExpr::Kind::kPauli:
          if (!sc_.n_qubits) {
            semantic(e.pos, "'sigma' needs a preceding 'qubits' declaration");
          }
          return pauli(e.axis, e.site, *sc_.n_qubits);
        case ObsExpr::Kind::kF: return observable_F();
        case ObsExpr::Kind::kG: return observable_G();
        case ObsExpr::Kind::kEmbed:
          return embed(eval_obs(*e.inner), e.sites, e.n_qubits, config_);
        case ObsExpr::Kind::kName:
          if (const SpectralObservable* o = sc_.find_observable(e.name)) return *o;
          if (sc_.find_state(e.name)) {
            semantic(e.pos, fmt::format("'{}' is a state, not an observable", e.name));
          }
          semantic(e.pos, fmt::format("unknown observable '{}'", e.name));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      semantic(e.pos, err.what());
    }
    semantic(e.pos, "unhandled observable expression");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const Config& config_;
  Scenario sc_;
  std::optional<std::string> current_;
};

}  // namespace

Complex Coefficient::value() const {
  Complex v = negate ? -1.0 : 1.0;
  for (const auto& f : factors) {
    Complex x;
    switch (f.kind) {
      case Factor::Kind::kNumber: x = f.value; break;
      case Factor::Kind::kSqrt: x = std::sqrt(f.value); break;
      case Factor::Kind::kImaginary: x = Complex(0, 1); break;
    }
    v = f.divide ? v / x : v * x;
  }
  return v;
}

const StateVector* Scenario::find_state(std::string_view name) const {
  for (const auto& [n, s] : states) {
    if (n == name) return &s;
  }
  return nullptr;
}

const SpectralObservable* Scenario::find_observable(std::string_view name) const {
  for (const auto& [n, o] : observables) {
    if (n == name) return &o;
  }
  return nullptr;
}

Scenario parse_scenario(std::string_view text, const Config& config) {
  return Parser(Lexer(text).tokenize(), config).run();
}

}  // namespace qcollapse::scenario
