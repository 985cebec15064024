#include <cctype>

#include "ingest_internal.hpp"

namespace owlhorn::detail {
namespace {

enum class Tok { Name, Var, Quoted, Number, LParen, RParen, LBracket, RBracket, Comma, Bar, End, Neck, Eq, Neq, Eof, Bad };

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  int line = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    Token t;
    t.line = line_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    auto single = [&](Tok k) {
      t.kind = k;
      t.text = std::string(1, c);
      ++pos_;
      return t;
    };
    if (std::islower(static_cast<unsigned char>(c))) {
      t.kind = Tok::Name;
      t.text = ident();
      return t;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Var;
      t.text = ident();
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      t.kind = Tok::Number;
      t.text = number();
      return t;
    }
    switch (c) {
      case '(':
        return single(Tok::LParen);
      case ')':
        return single(Tok::RParen);
      case '[':
        return single(Tok::LBracket);
      case ']':
        return single(Tok::RBracket);
      case ',':
        return single(Tok::Comma);
      case '|':
        return single(Tok::Bar);
      case '=':
        return single(Tok::Eq);
      case '\'':
        return quoted(t);
      case '.':
        if (pos_ + 1 >= text_.size() || std::isspace(static_cast<unsigned char>(text_[pos_ + 1])) ||
            text_[pos_ + 1] == '%') {
          return single(Tok::End);
        }
        break;
      case ':':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
          pos_ += 2;
          t.kind = Tok::Neck;
          t.text = ":-";
          return t;
        }
        break;
      case '\\':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          pos_ += 2;
          t.kind = Tok::Neq;
          t.text = "\\=";
          return t;
        }
        break;
      default:
        break;
    }
    t.kind = Tok::Bad;
    t.text = std::string(1, c);
    ++pos_;
    return t;
  }

 private:
  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        pos_ += 2;
        while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
          if (text_[pos_] == '\n') ++line_;
          ++pos_;
        }
        pos_ = std::min(pos_ + 2, text_.size());
      } else {
        break;
      }
    }
  }

  std::string ident() {
    size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string number() {
    size_t start = pos_;
    if (text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Token quoted(Token t) {
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '\'') {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
      } else if (c == '\\' && pos_ + 1 < text_.size()) {
        c = text_[++pos_];
        if (c == 'n') c = '\n';
      }
      out += c;
      ++pos_;
    }
    if (pos_ >= text_.size()) {
      t.kind = Tok::Bad;
      t.text = "unterminated quoted constant";
      return t;
    }
    ++pos_;
    t.kind = Tok::Quoted;
    t.text = std::move(out);
    return t;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
};

// Generic syntax tree before any interpretation.
struct PTerm {
  enum class Kind { Var, Name, Quoted, Number, Compound, List };
  Kind kind = Kind::Name;
  std::string text;
  std::vector<PTerm> args;
  int line = 0;

  bool is(std::string_view functor, size_t arity) const {
    return (kind == Kind::Compound || kind == Kind::Name) && text == functor && args.size() == arity;
  }
};

struct SyntaxError {
  int line;
  std::string message;
};

class TermParser {
 public:
  explicit TermParser(std::string_view text) : lexer_(text) { advance(); }

  const Token& peek() const { return tok_; }
  bool at_eof() const { return tok_.kind == Tok::Eof; }

  Token advance() {
    Token prev = tok_;
    tok_ = lexer_.next();
    return prev;
  }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what + describe());
    advance();
  }

  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError{tok_.line, message}; }

  std::string describe() const {
    switch (tok_.kind) {
      case Tok::Eof:
        return " at end of input";
      case Tok::Bad:
        return ", found '" + tok_.text + "'";
      default:
        return " before '" + tok_.text + "'";
    }
  }

  // Skips to just past the next statement terminator.
  void recover() {
    while (tok_.kind != Tok::End && tok_.kind != Tok::Eof) advance();
    if (tok_.kind == Tok::End) advance();
  }

  PTerm arg() {
    PTerm lhs = term();
    if (tok_.kind == Tok::Eq || tok_.kind == Tok::Neq) {
      PTerm op;
      op.kind = PTerm::Kind::Compound;
      op.text = tok_.kind == Tok::Eq ? "=" : "\\=";
      op.line = tok_.line;
      advance();
      op.args.push_back(std::move(lhs));
      op.args.push_back(term());
      return op;
    }
    return lhs;
  }

  PTerm term() {
    PTerm t;
    t.line = tok_.line;
    switch (tok_.kind) {
      case Tok::Var:
        t.kind = PTerm::Kind::Var;
        t.text = advance().text;
        if (t.text == "_") t.text = "_G" + std::to_string(++anonymous_);
        return t;
      case Tok::Number:
        t.kind = PTerm::Kind::Number;
        t.text = advance().text;
        return t;
      case Tok::Name:
      case Tok::Quoted:
      case Tok::Eq:
      case Tok::Neq: {
        t.kind = tok_.kind == Tok::Quoted ? PTerm::Kind::Quoted : PTerm::Kind::Name;
        t.text = advance().text;
        if (tok_.kind == Tok::LParen) {
          advance();
          t.kind = PTerm::Kind::Compound;
          t.args = sequence(Tok::RParen, "')'");
        } else if (t.text == "=" || t.text == "\\=") {
          fail("expected '(' after '" + t.text + "'");
        }
        return t;
      }
      case Tok::LBracket:
        advance();
        t.kind = PTerm::Kind::List;
        t.args = sequence(Tok::RBracket, "']'");
        return t;
      case Tok::LParen: {
        advance();
        PTerm inner = arg();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail("expected a term" + describe());
    }
  }

 private:
  std::vector<PTerm> sequence(Tok close, const char* what) {
    std::vector<PTerm> out;
    if (tok_.kind == close) {
      advance();
      return out;
    }
    while (true) {
      out.push_back(arg());
      if (tok_.kind == Tok::Comma) {
        advance();
        continue;
      }
      if (tok_.kind == Tok::Bar) fail("list tails ('|') are not supported");
      expect(close, what);
      return out;
    }
  }

  Lexer lexer_;
  Token tok_;
  unsigned anonymous_ = 0;
};

class Interpreter {
 public:
  Interpreter(const ParseOptions& options) : options_(options) {}

  Term data(const PTerm& t) const {
    switch (t.kind) {
      case PTerm::Kind::Var:
        return Term::variable(t.text);
      case PTerm::Kind::Name:
      case PTerm::Kind::Quoted:
      case PTerm::Kind::Number:
        return Term::constant(t.text);
      case PTerm::Kind::List: {
        std::vector<Term> elems;
        for (const auto& a : t.args) elems.push_back(data(a));
        return Term::list(std::move(elems));
      }
      case PTerm::Kind::Compound: {
        if (!options_.allow_reserved && is_reserved_functor(t.text, t.args.size())) {
          throw SyntaxError{t.line, "functor " + t.text + "/" + std::to_string(t.args.size()) +
                                        " is reserved for system-generated terms"};
        }
        std::vector<Term> args;
        for (const auto& a : t.args) args.push_back(data(a));
        return Term::compound(t.text, std::move(args));
      }
    }
    return {};
  }

  Literal literal(const PTerm& t, Layer ambiguous_default) const {
    unsigned negations = 0;
    const PTerm* cur = &t;
    while (cur->is("logicNot", 1)) {
      ++negations;
      cur = &cur->args[0];
    }
    return canonicalize_literal(atom(*cur, ambiguous_default), negations);
  }

  Atom atom(const PTerm& t, Layer ambiguous_default) const {
    if (t.kind != PTerm::Kind::Name && t.kind != PTerm::Kind::Compound && t.kind != PTerm::Kind::Quoted) {
      throw SyntaxError{t.line, "expected an atom, found '" + render(t) + "'"};
    }
    auto pred = Predicate::lookup(t.text, ambiguous_default);
    if (!pred) {
      throw SyntaxError{t.line, "unknown predicate " + t.text + "/" + std::to_string(t.args.size())};
    }
    if (pred->arity() != t.args.size()) {
      throw SyntaxError{t.line, "predicate " + t.text + " takes " + std::to_string(pred->arity()) +
                                    " argument(s), found " + std::to_string(t.args.size())};
    }
    Atom a{*pred, {}};
    for (const auto& arg : t.args) a.args.push_back(data(arg));
    return a;
  }

  static std::string render(const PTerm& t) {
    switch (t.kind) {
      case PTerm::Kind::Var:
      case PTerm::Kind::Number:
      case PTerm::Kind::Name:
        return t.text;
      case PTerm::Kind::Quoted:
        return quote_constant(t.text);
      default:
        break;
    }
    std::string out = t.kind == PTerm::Kind::List ? "[" : t.text + "(";
    for (size_t i = 0; i < t.args.size(); ++i) out += (i ? ", " : "") + render(t.args[i]);
    return out + (t.kind == PTerm::Kind::List ? "]" : ")");
  }

  // Head of a clause or a fact.
  void head(const PTerm& t, SourceRule& rule) const {
    if (t.kind == PTerm::Kind::Compound && t.text == "or" && !t.args.empty()) {
      rule.head_kind = SourceRule::HeadKind::Disjunction;
      flatten_or(t, rule.head);
      return;
    }
    if (t.is("orEach", 3)) {
      rule.head_kind = SourceRule::HeadKind::Disjunction;
      rule.each = DisjunctiveHead::Each{data(t.args[0]), data(t.args[1])};
      rule.head.push_back(disjunct(t.args[2]));
      return;
    }
    rule.head.push_back(SourceLiteral{literal(t, Layer::Derived), true});
  }

  SourceBodyItem body_item(const PTerm& t) const {
    if (t.is("=", 2) || t.is("\\=", 2)) {
      return Guard{t.text == "=" ? Guard::Kind::Equal : Guard::Kind::NotEqual, data(t.args[0]), data(t.args[1])};
    }
    if (t.is("not", 1)) {
      const auto& inner = t.args[0];
      if (inner.is("=", 2) || inner.is("\\=", 2)) {
        return Guard{inner.text == "=" ? Guard::Kind::NotEqual : Guard::Kind::Equal, data(inner.args[0]),
                     data(inner.args[1])};
      }
      throw SyntaxError{t.line, "finite-failure not/1 is only supported around '=' guards; use logicNot/1"};
    }
    if (t.is("member", 2)) return ListMember{data(t.args[0]), data(t.args[1])};
    return SourceLiteral{literal(t, Layer::Derived), true};
  }

 private:
  void flatten_or(const PTerm& t, std::vector<SourceLiteral>& out) const {
    for (const auto& a : t.args) {
      if (a.kind == PTerm::Kind::Compound && a.text == "or" && !a.args.empty()) {
        flatten_or(a, out);
      } else {
        out.push_back(disjunct(a));
      }
    }
  }

  SourceLiteral disjunct(const PTerm& t) const {
    if (t.is("=", 2)) {
      Atom a{Predicate(Vocab::EquivalentIndividuals, Layer::Base), {data(t.args[0]), data(t.args[1])}};
      return SourceLiteral{Literal{Polarity::Positive, std::move(a)}, true};
    }
    auto lit = literal(t, Layer::Derived);
    if (lit.negative()) throw SyntaxError{t.line, "disjuncts must be positive atoms"};
    return SourceLiteral{std::move(lit), true};
  }

  const ParseOptions& options_;
};

bool is_plain_value(const PTerm& t) {
  return t.kind == PTerm::Kind::Name || t.kind == PTerm::Kind::Quoted || t.kind == PTerm::Kind::Number;
}

}  // namespace

ParseResult parse_native(std::string_view text, const ParseOptions& options) {
  ParseResult result;
  TermParser parser(text);
  Interpreter interp(options);
  auto error = [&](int line, std::string message) {
    result.diagnostics.push_back(
        Diagnostic{Severity::Error, DiagnosticKind::Syntax, {options.file, line}, std::move(message)});
  };

  while (!parser.at_eof()) {
    int line = parser.peek().line;
    try {
      if (parser.peek().kind == Tok::Neck) {
        parser.advance();
        PTerm directive = parser.arg();
        parser.expect(Tok::End, "'.'");
        if (!directive.is("pragma", 2) || !is_plain_value(directive.args[0]) || !is_plain_value(directive.args[1])) {
          error(line, "unknown directive '" + Interpreter::render(directive) + "'");
          continue;
        }
        const auto& name = directive.args[0].text;
        const auto& value = directive.args[1].text;
        Pragmas probe;
        if (!probe.set(name, value)) {
          error(line, "invalid pragma " + name + " = " + value);
          continue;
        }
        result.pragmas.emplace_back(name, value);
        continue;
      }

      PTerm head = parser.arg();
      std::vector<PTerm> body;
      if (parser.peek().kind == Tok::Neck) {
        parser.advance();
        body.push_back(parser.arg());
        while (parser.peek().kind == Tok::Comma) {
          parser.advance();
          body.push_back(parser.arg());
        }
      }
      parser.expect(Tok::End, "',' or '.'");

      SourceRule rule;
      rule.location = SourceLocation{options.file, line};
      interp.head(head, rule);
      for (const auto& b : body) rule.body.push_back(interp.body_item(b));

      if (rule.body.empty() && rule.head_kind == SourceRule::HeadKind::Conjunction) {
        if (auto axiom = axiom_from_literal(rule.head.front().literal, rule.location)) {
          result.axioms.push_back(std::move(*axiom));
          continue;
        }
      }
      result.rules.push_back(std::move(rule));
    } catch (const SyntaxError& e) {
      error(e.line ? e.line : line, e.message);
      parser.recover();
    }
  }
  return result;
}

}  // namespace owlhorn::detail

namespace owlhorn {

namespace {

Literal parse_single_literal(std::string_view text, bool allow_reserved) {
  using namespace detail;
  ParseOptions options;
  options.allow_reserved = allow_reserved;
  TermParser parser(text);
  Interpreter interp(options);
  try {
    PTerm t = parser.arg();
    if (parser.peek().kind == Tok::End) parser.advance();
    if (!parser.at_eof()) parser.fail("unexpected text after the atom" + parser.describe());
    return interp.literal(t, Layer::Derived);
  } catch (const SyntaxError& e) {
    throw ParseError(e.message);
  }
}

}  // namespace

Literal parse_query(std::string_view text, bool allow_reserved) { return parse_single_literal(text, allow_reserved); }

GroundLiteral parse_ground_literal(std::string_view text, bool allow_reserved) {
  auto lit = parse_single_literal(text, allow_reserved);
  if (!lit.atom.is_ground()) throw ParseError("'" + std::string(text) + "' is not ground");
  return GroundLiteral{lit.polarity, GroundAtom::from(lit.atom)};
}

}  // namespace owlhorn
