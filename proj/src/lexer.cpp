// p4ifc/lexer.cpp
#include <cctype>

#include "p4ifc/syntax.hpp"

namespace p4ifc {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Multi-character punctuation, longest first.
const char* kPuncts[] = {
    "<=", ">=", "==", "!=", "&&", "||", ":=",
    "<", ">", "(", ")", "{", "}", "[", "]",
    ",", ";", ":", ".", "=", "+", "-", "*", "&", "|", "^", "/", "@",
};

} // namespace

std::vector<Token> lex(const std::string& source) {
  std::vector<Token> tokens;
  size_t i = 0;
  int line = 1, col = 1;

  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (source[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };

  while (i < source.size()) {
    char c = source[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < source.size() && source[i + 1] == '/') {
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }
    Span span{line, col};
    if (ident_start(c)) {
      size_t start = i;
      while (i < source.size() && ident_char(source[i])) advance(1);
      tokens.push_back({TokKind::Ident, source.substr(start, i - start), span});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < source.size() && std::isdigit(static_cast<unsigned char>(source[i]))) advance(1);
      tokens.push_back({TokKind::Int, source.substr(start, i - start), span});
      continue;
    }
    bool matched = false;
    for (const char* p : kPuncts) {
      size_t len = std::char_traits<char>::length(p);
      if (source.compare(i, len, p) == 0) {
        tokens.push_back({TokKind::Punct, p, span});
        advance(len);
        matched = true;
        break;
      }
    }
    if (!matched)
      throw CompileError("LexError", span, std::string("unexpected character '") + c + "'");
  }
  tokens.push_back({TokKind::Eof, "", {line, col}});
  return tokens;
}

} // namespace p4ifc
