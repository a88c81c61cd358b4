// Recursive-descent parsers for the concept and term grammars
// (see docs/grammar.md).

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "polydl/error.hpp"
#include "polydl/syntax.hpp"

namespace polydl {
namespace {

enum class Tok { Name, Number, Ge, Lt, Eq, LParen, RParen, Comma, Dot, Caret, Minus, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '@') {
      ++i;
      while (i < src.size() && ident_char(src[i])) ++i;
      std::string text(src.substr(start, i - start));
      if (!is_identifier(text)) throw ParseError("malformed name '" + text + "'", start);
      out.push_back({Tok::Name, std::move(text), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Number, std::string(src.substr(start, i - start)), start});
      continue;
    }
    if (c == '>' && i + 1 < src.size() && src[i + 1] == '=') {
      out.push_back({Tok::Ge, ">=", start});
      i += 2;
      continue;
    }
    Tok kind;
    switch (c) {
      case '<': kind = Tok::Lt; break;
      case '=': kind = Tok::Eq; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case '.': kind = Tok::Dot; break;
      case '^': kind = Tok::Caret; break;
      case '-': kind = Tok::Minus; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "top" || s == "bot" || s == "not" || s == "and";
}

class Cursor {
 public:
  explicit Cursor(std::string_view src) : toks_(lex(src)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const { return peek().kind == Tok::Name && peek().text == w; }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg + (t.kind == Tok::End ? " but reached end of input"
                                                : " but found '" + t.text + "'"),
                     t.pos);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Role-specific parts of the two concept grammars.
struct PolyadicRoles {
  const Signature* signature;
  std::map<std::string, std::size_t> inferred;
  static constexpr bool allow_generated = false;

  RoleExpr parse(Cursor& cur) {
    Token name = cur.expect(Tok::Name, "role name");
    if (is_keyword(name.text)) throw ParseError("keyword used as role name", name.pos);
    if (is_generated_name(name.text)) {
      throw ParseError("names starting with '@' are reserved", name.pos);
    }
    RoleExpr r;
    r.name = name.text;
    if (cur.at(Tok::Caret)) {
      cur.next();
      Token w = cur.expect(Tok::Name, "permutation word over {p,s}");
      if (w.text.find_first_not_of("ps") != std::string::npos) {
        throw ParseError("permutation word may contain only 'p' and 's'", w.pos);
      }
      r.word = PermWord(w.text);
    }
    return r;
  }

  void check_arity(RoleExpr& r, std::size_t nargs, std::size_t pos) {
    const std::size_t arity = nargs + 1;
    if (signature) {
      auto it = signature->roles.find(r.name);
      if (it == signature->roles.end()) {
        throw ParseError("role '" + r.name + "' not declared in signature", pos);
      }
      if (it->second != arity) {
        throw ParseError("arity mismatch: role '" + r.name + "' has arity " +
                             std::to_string(it->second) + " but is used with " +
                             std::to_string(nargs) + " argument(s)",
                         pos);
      }
    } else {
      auto [it, inserted] = inferred.emplace(r.name, arity);
      if (!inserted && it->second != arity) {
        throw ParseError("arity mismatch: role '" + r.name + "' used with arities " +
                             std::to_string(it->second) + " and " + std::to_string(arity),
                         pos);
      }
    }
    r.arity = arity;
  }
};

struct BinaryRoles {
  static constexpr bool allow_generated = true;

  BinRole parse(Cursor& cur) {
    Token name = cur.expect(Tok::Name, "role name");
    if (is_keyword(name.text)) throw ParseError("keyword used as role name", name.pos);
    BinRole r{name.text, false};
    if (cur.at(Tok::Caret)) {
      cur.next();
      cur.expect(Tok::Minus, "'-' after '^'");
      r.inverse = true;
    }
    return r;
  }

  void check_arity(BinRole&, std::size_t nargs, std::size_t pos) {
    if (nargs != 1) throw ParseError("ALCQI restrictions take exactly one argument", pos);
  }
};

template <class Role, class Roles>
class ConceptParser {
 public:
  using C = BasicConcept<Role>;

  ConceptParser(std::string_view src, Roles roles) : cur_(src), roles_(std::move(roles)) {}

  C parse_all() {
    C c = parse_concept();
    if (!cur_.at(Tok::End)) cur_.fail("expected end of input");
    return c;
  }

 private:
  C parse_concept() {
    C acc = parse_unary();
    while (cur_.at_word("and")) {
      cur_.next();
      acc = C::conjunction(acc, parse_unary());
    }
    return acc;
  }

  C parse_unary() {
    const Token& t = cur_.peek();
    switch (t.kind) {
      case Tok::LParen: {
        cur_.next();
        C inner = parse_concept();
        cur_.expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ge:
      case Tok::Lt:
      case Tok::Eq:
        return parse_restriction();
      case Tok::Name:
        break;
      default:
        cur_.fail("expected a concept");
    }
    if (t.text == "top") {
      cur_.next();
      return C::top();
    }
    if (t.text == "bot") {
      cur_.next();
      return C::bot();
    }
    if (t.text == "not") {
      cur_.next();
      return C::negation(parse_unary());
    }
    if (t.text == "and") cur_.fail("expected a concept");
    if ((t.text == "E" || t.text == "A") && cur_.peek(1).kind == Tok::Name &&
        !is_keyword(cur_.peek(1).text)) {
      return parse_restriction();
    }
    Token name = cur_.next();
    if (is_generated_name(name.text) && !Roles::allow_generated) {
      throw ParseError("names starting with '@' are reserved", name.pos);
    }
    return C::atomic(name.text);
  }

  C parse_restriction() {
    Token head = cur_.next();
    ConceptKind kind;
    Count k(1);
    if (head.kind == Tok::Name) {
      kind = head.text == "E" ? ConceptKind::Exists : ConceptKind::Forall;
    } else {
      kind = head.kind == Tok::Ge   ? ConceptKind::AtLeast
             : head.kind == Tok::Lt ? ConceptKind::Less
                                    : ConceptKind::Exactly;
      Token num = cur_.expect(Tok::Number, "a count");
      k = *Count::parse(num.text);
      if (k.is_zero()) throw ParseError("count must be a positive integer", num.pos);
    }
    Role role = roles_.parse(cur_);
    cur_.expect(Tok::Dot, "'.'");
    cur_.expect(Tok::LParen, "'('");
    std::vector<C> args;
    args.push_back(parse_concept());
    while (cur_.at(Tok::Comma)) {
      cur_.next();
      args.push_back(parse_concept());
    }
    cur_.expect(Tok::RParen, "')'");
    roles_.check_arity(role, args.size(), head.pos);
    return C::restriction(kind, std::move(k), std::move(role), std::move(args));
  }

  Cursor cur_;
  Roles roles_;
};

// --- terms

class TermParser {
 public:
  TermParser(std::string_view src, const Signature* sig) : cur_(src), sig_(sig) {}

  GraTerm parse_all() {
    GraTerm t = parse_term();
    if (!cur_.at(Tok::End)) cur_.fail("expected end of input");
    return t;
  }

 private:
  GraTerm parse_term() {
    Token name = cur_.expect(Tok::Name, "a term");
    if (cur_.at(Tok::LParen)) {
      static const std::map<std::string, std::pair<TermKind, int>> ops = {
          {"p", {TermKind::P, 1}},          {"s", {TermKind::S, 1}},
          {"I", {TermKind::I, 1}},          {"neg", {TermKind::Neg, 1}},
          {"join", {TermKind::Join, 2}},    {"ex", {TermKind::Ex, 1}},
          {"dotcap", {TermKind::DotCap, 2}}, {"ex1", {TermKind::Ex1, 1}},
          {"cap1", {TermKind::Cap1, 2}},    {"neg1", {TermKind::Neg1, 1}},
      };
      auto it = ops.find(name.text);
      if (it == ops.end()) throw ParseError("unknown operator '" + name.text + "'", name.pos);
      cur_.next();
      GraTerm a = parse_term();
      if (it->second.second == 1) {
        cur_.expect(Tok::RParen, "')'");
        return GraTerm::unary(it->second.first, a);
      }
      cur_.expect(Tok::Comma, "','");
      GraTerm b = parse_term();
      cur_.expect(Tok::RParen, "')'");
      return GraTerm::binary(it->second.first, a, b);
    }
    if (name.text == "e") return GraTerm::eq();
    if (name.text == "top") return GraTerm::top();
    if (name.text == "bot") return GraTerm::bot();
    if (sig_ && !sig_->arity_of(name.text)) {
      throw ParseError("undeclared relation symbol '" + name.text + "'", name.pos);
    }
    return GraTerm::atom(name.text);
  }

  Cursor cur_;
  const Signature* sig_;
};

}  // namespace

Concept parse_concept(std::string_view text, const Signature* signature) {
  return ConceptParser<RoleExpr, PolyadicRoles>(text, PolyadicRoles{signature, {}}).parse_all();
}

AlcqiConcept parse_alcqi(std::string_view text) {
  return ConceptParser<BinRole, BinaryRoles>(text, BinaryRoles{}).parse_all();
}

GraTerm parse_term(std::string_view text, const Signature* signature) {
  return TermParser(text, signature).parse_all();
}

}  // namespace polydl
