#include "pidec/parser.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>

namespace pidec {

namespace {

enum class Tok { Name, Zero, Bang, Query, LParen, RParen, LBracket, RBracket, Eq, Dot, Bar, Plus, New, Tau, End };

const char* describe(Tok t) {
  switch (t) {
    case Tok::Name: return "name";
    case Tok::Zero: return "'0'";
    case Tok::Bang: return "'!'";
    case Tok::Query: return "'?'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Eq: return "'='";
    case Tok::Dot: return "'.'";
    case Tok::Bar: return "'|'";
    case Tok::Plus: return "'+'";
    case Tok::New: return "'new'";
    case Tok::Tau: return "'tau'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  SourceSpan span;
  std::string_view text;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (c >= 'a' && c <= 'z') {
      while (i < src.size() && is_ident(src[i])) ++i;
      auto word = src.substr(start, i - start);
      Tok k = word == "new" ? Tok::New : word == "tau" ? Tok::Tau : Tok::Name;
      out.push_back({k, {start, i}, word});
      continue;
    }
    Tok k;
    switch (c) {
      case '0': k = Tok::Zero; break;
      case '!': k = Tok::Bang; break;
      case '?': k = Tok::Query; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case '=': k = Tok::Eq; break;
      case '.': k = Tok::Dot; break;
      case '|': k = Tok::Bar; break;
      case '+': k = Tok::Plus; break;
      default:
        throw SyntaxError("unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(i),
                          {i, i + 1}, {});
    }
    ++i;
    out.push_back({k, {start, i}, src.substr(start, 1)});
  }
  out.push_back({Tok::End, {src.size(), src.size()}, {}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Process parse_all() {
    Process p = proc();
    expect({Tok::End});
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    std::vector<std::string> names;
    for (Tok t : expected) names.emplace_back(describe(t));
    std::string msg = "expected ";
    for (std::size_t i = 0; i < names.size(); ++i) msg += (i ? ", " : "") + names[i];
    msg += " but found " + std::string(describe(peek().kind)) + " at offset " + std::to_string(peek().span.start);
    throw SyntaxError(msg, peek().span, std::move(names));
  }

  const Token& expect(std::initializer_list<Tok> kinds) {
    for (Tok k : kinds)
      if (at(k)) return toks_[pos_++];
    fail(kinds);
  }

  Name name() { return Name::user(expect({Tok::Name}).text); }

  Process proc() {
    Process p = sum();
    while (at(Tok::Bar)) {
      ++pos_;
      p = Process::par(std::move(p), sum());
    }
    return p;
  }

  Process sum() {
    Process p = seq();
    while (at(Tok::Plus)) {
      ++pos_;
      p = Process::sum(std::move(p), seq());
    }
    return p;
  }

  Process seq() {
    switch (peek().kind) {
      case Tok::Zero:
        ++pos_;
        return Process::nil();
      case Tok::New: {
        ++pos_;
        Name z = name();
        expect({Tok::Dot});
        return Process::restrict(z, seq());
      }
      case Tok::Bang:
        ++pos_;
        return Process::repl(seq());
      case Tok::LParen: {
        ++pos_;
        Process p = proc();
        expect({Tok::RParen});
        return p;
      }
      case Tok::LBracket:
      case Tok::Name:
      case Tok::Tau: {
        Prefix pi = prefix();
        expect({Tok::Dot});
        return Process::prefixed(std::move(pi), seq());
      }
      default:
        fail({Tok::Zero, Tok::Name, Tok::Tau, Tok::LBracket, Tok::New, Tok::Bang, Tok::LParen});
    }
  }

  Prefix prefix() {
    std::vector<Guard> guards;
    while (at(Tok::LBracket)) {
      ++pos_;
      Name l = name();
      expect({Tok::Eq});
      Name r = name();
      expect({Tok::RBracket});
      guards.push_back({l, r});
    }
    Prefix pi;
    if (at(Tok::Tau)) {
      ++pos_;
      pi = Prefix::tau();
    } else if (at(Tok::Name)) {
      Name x = name();
      if (at(Tok::Bang)) {
        ++pos_;
        pi = Prefix::output(x, name());
      } else if (at(Tok::Query)) {
        ++pos_;
        expect({Tok::LParen});
        Name z = name();
        expect({Tok::RParen});
        pi = Prefix::input(x, z);
      } else {
        fail({Tok::Bang, Tok::Query});
      }
    } else {
      fail({Tok::Name, Tok::Tau, Tok::LBracket});
    }
    pi.guards = std::move(guards);
    return pi;
  }
};

class Printer {
 public:
  explicit Printer(const Process& p) {
    for (Name n : p.free_names())
      if (n.is_user()) used_.insert(n.text());
    assign(p);
  }

  void print(const Process& p, int level, std::string& out) {
    int own = p.kind() == ProcessKind::Par ? 0 : p.kind() == ProcessKind::Sum ? 1 : 2;
    bool parens = own < level;
    if (parens) out += '(';
    switch (p.kind()) {
      case ProcessKind::Nil:
        out += '0';
        break;
      case ProcessKind::Prefixed: {
        const Prefix& pi = p.prefix();
        for (const auto& g : pi.guards) out += "[" + show(g.lhs) + "=" + show(g.rhs) + "]";
        switch (pi.kind) {
          case PrefixKind::Tau: out += "tau"; break;
          case PrefixKind::Output: out += show(pi.channel) + "!" + show(pi.object); break;
          case PrefixKind::Input: out += show(pi.channel) + "?(" + show(pi.object) + ")"; break;
        }
        out += '.';
        print(p.body(), 2, out);
        break;
      }
      case ProcessKind::Sum:
        print(p.left(), 1, out);
        out += " + ";
        print(p.right(), 2, out);
        break;
      case ProcessKind::Par:
        print(p.left(), 0, out);
        out += " | ";
        print(p.right(), 1, out);
        break;
      case ProcessKind::Restrict:
        out += "new " + show(p.binder()) + ".";
        print(p.body(), 2, out);
        break;
      case ProcessKind::Repl:
        out += '!';
        print(p.body(), 2, out);
        break;
    }
    if (parens) out += ')';
  }

 private:
  std::set<std::string> used_;
  std::unordered_map<Name, std::string> display_;

  std::string show(Name n) const {
    if (auto it = display_.find(n); it != display_.end()) return it->second;
    return n.text();
  }

  void pick(Name b, std::initializer_list<const char*> stems) {
    if (display_.count(b)) return;
    for (int round = 0;; ++round) {
      for (const char* s : stems) {
        std::string cand = round == 0 ? std::string(s) : std::string(s) + std::to_string(round);
        if (!used_.count(cand)) {
          used_.insert(cand);
          display_.emplace(b, std::move(cand));
          return;
        }
      }
    }
  }

  void assign(const Process& p) {
    switch (p.kind()) {
      case ProcessKind::Nil:
        return;
      case ProcessKind::Prefixed:
        if (p.prefix().binds()) pick(p.prefix().object, {"x", "y", "u", "v"});
        assign(p.body());
        return;
      case ProcessKind::Sum:
      case ProcessKind::Par:
        assign(p.left());
        assign(p.right());
        return;
      case ProcessKind::Restrict:
        pick(p.binder(), {"z", "w", "k", "m"});
        assign(p.body());
        return;
      case ProcessKind::Repl:
        assign(p.body());
        return;
    }
  }
};

}  // namespace

SyntaxError::SyntaxError(const std::string& message, SourceSpan span, std::vector<std::string> expected)
    : Error(ErrorKind::SyntaxError, message), span_(span), expected_(std::move(expected)) {}

Process parse_raw(std::string_view text) { return Parser(lex(text)).parse_all(); }

Process parse(std::string_view text) {
  Process p = alpha_canonical(parse_raw(text));
  if (auto d = validate(p)) {
    ErrorKind k = d->code == Diagnostic::Code::MalformedSum ? ErrorKind::MalformedSum : ErrorKind::SyntaxError;
    throw Error(k, d->message + ": " + pretty(d->subterm));
  }
  return p;
}

std::string pretty(const Process& p) {
  Process q = alpha_canonical(p);
  Printer printer(q);
  std::string out;
  printer.print(q, 0, out);
  return out;
}

}  // namespace pidec
