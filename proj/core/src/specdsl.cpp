#include "selfsim/specdsl.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace selfsim {

namespace {

enum class Tok {
  KwBase,
  KwDim,
  KwState,
  KwInitial,
  KwEdge,
  KwAllow,
  Ident,
  Int,
  LParen,
  RParen,
  Comma,
  EdgeOpen,   // -(
  EdgeClose,  // )->
  End,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::KwBase: return "'base'";
    case Tok::KwDim: return "'dim'";
    case Tok::KwState: return "'state'";
    case Tok::KwInitial: return "'initial'";
    case Tok::KwEdge: return "'edge'";
    case Tok::KwAllow: return "'allow'";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::EdgeOpen: return "'-('";
    case Tok::EdgeClose: return "')->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  long long value = 0;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_ws();
    SourcePos pos{line_, col_};
    if (i_ >= text_.size()) return {Tok::End, "", 0, pos};
    char c = text_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (i_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_'))
        word.push_back(advance());
      static const std::map<std::string, Tok> keywords = {
          {"base", Tok::KwBase},   {"dim", Tok::KwDim},   {"state", Tok::KwState},
          {"initial", Tok::KwInitial}, {"edge", Tok::KwEdge}, {"allow", Tok::KwAllow},
      };
      auto it = keywords.find(word);
      return {it == keywords.end() ? Tok::Ident : it->second, word, 0, pos};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_])))
        digits.push_back(advance());
      if (digits.size() > 9)
        throw Error(ErrorCode::SyntaxError, "integer literal too large", pos);
      return {Tok::Int, digits, std::stoll(digits), pos};
    }
    switch (c) {
      case '(': advance(); return {Tok::LParen, "(", 0, pos};
      case ',': advance(); return {Tok::Comma, ",", 0, pos};
      case '-':
        advance();
        if (i_ < text_.size() && text_[i_] == '(') {
          advance();
          return {Tok::EdgeOpen, "-(", 0, pos};
        }
        throw Error(ErrorCode::SyntaxError, "expected '(' after '-'", pos);
      case ')':
        advance();
        if (i_ + 1 < text_.size() && text_[i_] == '-' && text_[i_ + 1] == '>') {
          advance();
          advance();
          return {Tok::EdgeClose, ")->", 0, pos};
        }
        return {Tok::RParen, ")", 0, pos};
      default:
        throw Error(ErrorCode::SyntaxError,
                    std::string("unexpected character '") + c + "'", pos);
    }
  }

 private:
  char advance() {
    char c = text_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_ws() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  const std::string& text_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { shift(); }

  DigitSystemSpec parse() {
    DigitSystemSpec spec;
    expect(Tok::KwBase);
    Token base = expect(Tok::Int);
    if (base.value < 2 || base.value > kMaxBase)
      throw Error(ErrorCode::SyntaxError, "base must be in [2,36]", base.pos);
    expect(Tok::KwDim);
    Token dim = expect(Tok::Int);
    if (dim.value < 1 || dim.value > kMaxDim)
      throw Error(ErrorCode::SyntaxError, "dim must be in [1,4]", dim.pos);
    spec.k = static_cast<int>(base.value);
    spec.d = static_cast<int>(dim.value);

    bool saw_allow = false, saw_explicit = false;
    while (current_.kind != Tok::End) {
      SourcePos item_pos = current_.pos;
      switch (current_.kind) {
        case Tok::KwAllow: {
          if (saw_explicit)
            throw Error(ErrorCode::SyntaxError, "'allow' cannot be mixed with explicit states",
                        item_pos);
          saw_allow = true;
          shift();
          expect(Tok::LParen);
          SpecItem item;
          item.kind = SpecItem::Kind::Allow;
          item.pos = item_pos;
          item.digits = digit_list(spec, Tok::RParen);
          spec.declarations.push_back(std::move(item));
          break;
        }
        case Tok::KwState: {
          if (saw_allow)
            throw Error(ErrorCode::SyntaxError, "explicit states cannot be mixed with 'allow'",
                        item_pos);
          saw_explicit = true;
          shift();
          Token name = expect(Tok::Ident);
          SpecItem item;
          item.kind = SpecItem::Kind::State;
          item.name = name.text;
          item.pos = item_pos;
          if (current_.kind == Tok::KwInitial) {
            item.initial = true;
            shift();
          }
          spec.declarations.push_back(std::move(item));
          break;
        }
        case Tok::KwEdge: {
          if (saw_allow)
            throw Error(ErrorCode::SyntaxError, "edges cannot be mixed with 'allow'", item_pos);
          saw_explicit = true;
          shift();
          Token from = expect(Tok::Ident);
          expect(Tok::EdgeOpen);
          SpecItem item;
          item.kind = SpecItem::Kind::Edge;
          item.from = from.text;
          item.pos = item_pos;
          item.digits = digit_list(spec, Tok::EdgeClose);
          Token to = expect(Tok::Ident);
          item.to = to.text;
          spec.declarations.push_back(std::move(item));
          break;
        }
        default:
          throw Error(ErrorCode::SyntaxError,
                      std::string("expected 'state', 'edge' or 'allow', got ") +
                          tok_name(current_.kind),
                      item_pos);
      }
    }
    static_checks(spec);
    return spec;
  }

 private:
  void shift() { current_ = lexer_.next(); }
  Token expect(Tok kind) {
    if (current_.kind != kind)
      throw Error(ErrorCode::SyntaxError,
                  std::string("expected ") + tok_name(kind) + ", got " + tok_name(current_.kind),
                  current_.pos);
    Token t = current_;
    shift();
    return t;
  }

  std::vector<int> digit_list(const DigitSystemSpec& spec, Tok closer) {
    std::vector<int> digits;
    for (;;) {
      Token lit = expect(Tok::Int);
      if (lit.value < 0 || lit.value >= spec.k)
        throw Error(ErrorCode::DigitRange,
                    "digit " + lit.text + " outside [0," + std::to_string(spec.k) + ")", lit.pos);
      digits.push_back(static_cast<int>(lit.value));
      if (current_.kind == Tok::Comma) {
        shift();
        continue;
      }
      break;
    }
    Token close = expect(closer);
    if (static_cast<int>(digits.size()) != spec.d)
      throw Error(ErrorCode::ArityMismatch,
                  "tuple has " + std::to_string(digits.size()) + " digits, expected " +
                      std::to_string(spec.d),
                  close.pos);
    return digits;
  }

  void static_checks(const DigitSystemSpec& spec) {
    std::map<std::string, SourcePos> declared;
    bool explicit_form = false;
    int initial_count = 0;
    SourcePos last_pos{1, 1};
    for (const SpecItem& item : spec.declarations) {
      last_pos = item.pos;
      if (item.kind == SpecItem::Kind::State) {
        explicit_form = true;
        if (declared.count(item.name))
          throw Error(ErrorCode::DuplicateState, "state '" + item.name + "' already declared",
                      item.pos);
        declared.emplace(item.name, item.pos);
        if (item.initial && ++initial_count > 1)
          throw Error(ErrorCode::SyntaxError, "more than one initial state", item.pos);
      }
    }
    for (const SpecItem& item : spec.declarations) {
      if (item.kind != SpecItem::Kind::Edge) continue;
      if (!declared.count(item.from))
        throw Error(ErrorCode::UnknownState, "state '" + item.from + "' not declared", item.pos);
      if (!declared.count(item.to))
        throw Error(ErrorCode::UnknownState, "state '" + item.to + "' not declared", item.pos);
    }
    if (explicit_form && initial_count == 0)
      throw Error(ErrorCode::NoInitial, "no state marked initial", last_pos);
  }

  Lexer lexer_;
  Token current_;
};

}  // namespace

DigitSystemSpec parse_spec(const std::string& text) { return Parser(text).parse(); }

std::string print_spec(const DigitSystemSpec& spec) {
  std::ostringstream os;
  os << "base " << spec.k << "\n"
     << "dim " << spec.d << "\n";
  auto tuple = [](const std::vector<int>& digits) {
    std::string s = "(";
    for (size_t i = 0; i < digits.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(digits[i]);
    }
    return s + ")";
  };
  for (const SpecItem& item : spec.declarations) {
    switch (item.kind) {
      case SpecItem::Kind::Allow:
        os << "allow " << tuple(item.digits) << "\n";
        break;
      case SpecItem::Kind::State:
        os << "state " << item.name << (item.initial ? " initial" : "") << "\n";
        break;
      case SpecItem::Kind::Edge:
        os << "edge " << item.from << " -" << tuple(item.digits) << "-> " << item.to << "\n";
        break;
    }
  }
  return os.str();
}

SetAutomaton validate(const DigitSystemSpec& spec) {
  check_envelope(spec.k, spec.d);
  if (spec.declarations.empty())
    throw Error(ErrorCode::EmptySet, "spec declares no states or digits");
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<int> initial;
  std::vector<Edge> edges;

  bool allow_form = !spec.declarations.empty() &&
                    spec.declarations.front().kind == SpecItem::Kind::Allow;
  if (allow_form) {
    names.push_back("q");
    initial.push_back(0);
    for (const SpecItem& item : spec.declarations)
      edges.push_back({0, DigitTuple(item.digits), 0});
  } else {
    for (const SpecItem& item : spec.declarations) {
      if (item.kind != SpecItem::Kind::State) continue;
      index.emplace(item.name, static_cast<int>(names.size()));
      names.push_back(item.name);
      if (item.initial) initial.push_back(index[item.name]);
    }
    if (initial.empty()) throw Error(ErrorCode::NoInitial, "no state marked initial");
    for (const SpecItem& item : spec.declarations) {
      if (item.kind != SpecItem::Kind::Edge) continue;
      edges.push_back({index.at(item.from), DigitTuple(item.digits), index.at(item.to)});
    }
  }

  SetAutomaton raw(spec.k, spec.d, static_cast<int>(names.size()), initial, edges);
  std::vector<int> old_to_new;
  SetAutomaton trimmed = trim(raw, &old_to_new);  // EmptySet propagates
  for (size_t s = 0; s < old_to_new.size(); ++s) {
    if (old_to_new[s] < 0)
      throw Error(ErrorCode::DeadState, "state '" + names[s] + "' is dead (unreachable or no live path)");
  }
  return trimmed;
}

}  // namespace selfsim
