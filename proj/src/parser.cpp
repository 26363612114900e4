// p4ifc/parser.cpp - recursive descent parser for the annotated fragment
#include <cstdlib>

#include "p4ifc/syntax.hpp"

namespace p4ifc {

namespace {

constexpr uint32_t kMaxBitWidth = 128;

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Lattice& lattice)
      : toks_(std::move(tokens)), lattice_(lattice) {}

  Program parse() {
    Program p;
    while (!at_ident("control")) {
      if (at_eof()) err(peek().span, "expected a control block");
      p.top_decls.push_back(parse_type_level_decl());
    }
    p.control_span = peek().span;
    expect_ident("control");
    p.control_name = expect(TokKind::Ident).text;
    expect_punct("(");
    if (!at_punct(")")) {
      for (;;) {
        p.control_params.push_back(parse_param(false));
        if (!accept_punct(",")) break;
      }
    }
    expect_punct(")");
    expect_punct("{");
    while (!at_ident("apply")) {
      if (at_eof() || at_punct("}")) err(peek().span, "expected an apply block");
      p.decls.push_back(parse_decl());
    }
    expect_ident("apply");
    p.apply = parse_block();
    expect_punct("}");
    if (!at_eof()) err(peek().span, "trailing input after control block");
    return p;
  }

 private:
  // --- token plumbing -------------------------------------------------------

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_eof() const { return peek().kind == TokKind::Eof; }
  bool at_punct(const char* p) const {
    return peek().kind == TokKind::Punct && peek().text == p;
  }
  bool at_ident(const char* name) const {
    return peek().kind == TokKind::Ident && peek().text == name;
  }
  bool accept_punct(const char* p) {
    if (!at_punct(p)) return false;
    advance();
    return true;
  }
  const Token& expect(TokKind kind) {
    if (peek().kind != kind) err(peek().span, "unexpected token '" + peek().text + "'");
    return advance();
  }
  void expect_punct(const char* p) {
    if (!at_punct(p)) err(peek().span, std::string("expected '") + p + "'");
    advance();
  }
  void expect_ident(const char* name) {
    if (!at_ident(name)) err(peek().span, std::string("expected '") + name + "'");
    advance();
  }
  [[noreturn]] void err(Span span, const std::string& msg) const {
    throw CompileError("ParseError", span, msg);
  }

  bool is_keyword(const std::string& s) const {
    static const std::set<std::string> kw = {
        "control", "table",  "action",  "function", "apply",  "if",
        "else",    "exit",   "return",  "typedef",  "header", "struct",
        "match_kind", "key", "actions", "bool",     "int",    "bit",
        "unit",    "true",   "false",   "in",       "inout",
    };
    return kw.count(s) != 0;
  }

  std::string expect_name() {
    const Token& t = expect(TokKind::Ident);
    if (is_keyword(t.text)) err(t.span, "'" + t.text + "' is a keyword");
    return t.text;
  }

  uint64_t parse_uint(const Token& t) {
    unsigned __int128 v = 0;
    for (char c : t.text) {
      v = v * 10 + static_cast<unsigned>(c - '0');
      if (v > static_cast<unsigned __int128>(UINT64_MAX))
        err(t.span, "integer literal out of range");
    }
    return static_cast<uint64_t>(v);
  }

  SecurityLabel parse_label() {
    const Token& t = expect(TokKind::Ident);
    if (!lattice_.has_label(t.text))
      throw CompileError("UnknownLabel", t.span,
                         "label '" + t.text + "' is not a lattice element");
    return lattice_.label(t.text);
  }

  // --- types ----------------------------------------------------------------

  TypePtr parse_type() {
    TypePtr t = parse_type_head();
    while (at_punct("[")) {
      advance();
      const Token& n = expect(TokKind::Int);
      uint64_t size = parse_uint(n);
      if (size > UINT32_MAX) err(n.span, "stack size out of range");
      expect_punct("]");
      BaseType b;
      b.kind = BaseType::Stack;
      b.elem = t;
      b.size = static_cast<uint32_t>(size);
      t = make_type(std::move(b), lattice_.bottom());
    }
    return t;
  }

  TypePtr parse_type_head() {
    Span span = peek().span;
    if (accept_punct("<")) {
      TypePtr inner = parse_type();
      expect_punct(",");
      SecurityLabel chi = parse_label();
      expect_punct(">");
      if (inner->base.kind == BaseType::Name) {
        // Annotation on an alias is pushed through at resolution time.
        BaseType b = inner->base;
        return make_type(std::move(b), lattice_.join(inner->label, chi));
      }
      return apply_label(lattice_, inner, chi);
    }
    if (at_ident("bool")) {
      advance();
      return bool_type(lattice_.bottom());
    }
    if (at_ident("int")) {
      advance();
      return int_type(lattice_.bottom());
    }
    if (at_ident("unit")) {
      advance();
      return unit_type();
    }
    if (at_ident("bit")) {
      advance();
      expect_punct("<");
      const Token& n = expect(TokKind::Int);
      uint64_t width = parse_uint(n);
      if (width < 1 || width > kMaxBitWidth)
        err(n.span, "bit width must be between 1 and " + std::to_string(kMaxBitWidth));
      expect_punct(">");
      return bit_type(static_cast<uint32_t>(width), lattice_.bottom());
    }
    if (at_ident("header") && peek(1).kind == TokKind::Punct && peek(1).text == "{") {
      advance();
      return parse_fields_type(BaseType::Header);
    }
    if (at_punct("{")) return parse_fields_type(BaseType::Record);
    if (peek().kind == TokKind::Ident && !is_keyword(peek().text)) {
      BaseType b;
      b.kind = BaseType::Name;
      b.name = advance().text;
      return make_type(std::move(b), lattice_.bottom());
    }
    err(span, "expected a type");
  }

  TypePtr parse_fields_type(BaseType::Kind kind) {
    expect_punct("{");
    BaseType b;
    b.kind = kind;
    while (!accept_punct("}")) {
      TypePtr ft = parse_type();
      std::string name = expect_name();
      expect_punct(";");
      b.fields.push_back({std::move(name), std::move(ft)});
    }
    return make_type(std::move(b), lattice_.bottom());
  }

  Param parse_param(bool control_plane) {
    Param p;
    p.span = peek().span;
    p.control_plane = control_plane;
    if (at_ident("in")) {
      advance();
      p.dir = Dir::In;
    } else if (at_ident("inout")) {
      advance();
      p.dir = Dir::InOut;
    } else {
      p.dir = Dir::In;  // omitted directions default to in
    }
    p.type = parse_type();
    p.name = expect_name();
    return p;
  }

  // --- declarations ---------------------------------------------------------

  DeclPtr parse_type_level_decl() {
    Span span = peek().span;
    if (at_ident("typedef")) {
      advance();
      TypePtr t = parse_type();
      std::string name = expect_name();
      expect_punct(";");
      return std::make_shared<const Decl>(Decl{TypedefDecl{t, name}, span});
    }
    if (at_ident("match_kind")) {
      advance();
      expect_punct("{");
      MatchKindDecl mk;
      while (!accept_punct("}")) {
        mk.members.push_back(expect_name());
        accept_punct(",");
      }
      accept_punct(";");
      return std::make_shared<const Decl>(Decl{std::move(mk), span});
    }
    if (at_ident("header") || at_ident("struct")) {
      bool is_header = at_ident("header");
      advance();
      std::string name = expect_name();
      TypePtr t = parse_fields_type(is_header ? BaseType::Header : BaseType::Record);
      return std::make_shared<const Decl>(Decl{TypedefDecl{t, name}, span});
    }
    err(span, "expected typedef, match_kind, header, or struct");
  }

  DeclPtr parse_decl() {
    if (at_ident("typedef") || at_ident("match_kind") ||
        (at_ident("header") && peek(1).kind == TokKind::Ident && !is_keyword(peek(1).text)) ||
        at_ident("struct"))
      return parse_type_level_decl();
    if (at_ident("table")) return parse_table();
    if (at_punct("@") || at_ident("action") || at_ident("function")) return parse_function();
    return parse_var_decl();
  }

  DeclPtr parse_var_decl() {
    Span span = peek().span;
    VarDecl v;
    v.type = parse_type();
    v.name = expect_name();
    if (accept_punct("=") || accept_punct(":=")) v.init = parse_expr();
    expect_punct(";");
    return std::make_shared<const Decl>(Decl{std::move(v), span});
  }

  DeclPtr parse_table() {
    Span span = peek().span;
    expect_ident("table");
    TableDecl t;
    t.name = expect_name();
    expect_punct("{");
    if (at_ident("key")) {
      advance();
      expect_punct("=");
      expect_punct("{");
      while (!accept_punct("}")) {
        TableKey k;
        k.span = peek().span;
        k.expr = parse_expr();
        expect_punct(":");
        k.match_kind = expect_name();
        expect_punct(";");
        t.keys.push_back(std::move(k));
      }
    }
    if (at_ident("actions") || at_ident("action")) {
      advance();
      expect_punct("=");
      expect_punct("{");
      while (!accept_punct("}")) {
        ActionRef a;
        a.span = peek().span;
        a.name = expect_name();
        if (accept_punct("(")) {
          if (!at_punct(")")) {
            for (;;) {
              a.bound_args.push_back(parse_expr());
              if (!accept_punct(",")) break;
            }
          }
          expect_punct(")");
        }
        expect_punct(";");
        t.actions.push_back(std::move(a));
      }
    }
    expect_punct("}");
    return std::make_shared<const Decl>(Decl{std::move(t), span});
  }

  DeclPtr parse_function() {
    Span span = peek().span;
    FunctionDecl f;
    if (accept_punct("@")) {
      expect_ident("pc");
      expect_punct("(");
      f.pc_annotation = expect(TokKind::Ident).text;
      expect_punct(")");
    }
    if (at_ident("action")) {
      advance();
      f.is_action = true;
      f.ret = unit_type();
    } else {
      expect_ident("function");
      f.ret = parse_type();
    }
    f.name = expect_name();
    expect_punct("(");
    bool in_control_plane = false;
    if (!at_punct(")")) {
      if (accept_punct(";")) in_control_plane = true;
      if (!at_punct(")")) {
        for (;;) {
          f.params.push_back(parse_param(in_control_plane));
          if (accept_punct(",")) continue;
          if (!in_control_plane && accept_punct(";")) {
            in_control_plane = true;
            if (at_punct(")")) break;
            continue;
          }
          break;
        }
      }
    }
    expect_punct(")");
    f.body = parse_block();
    return std::make_shared<const Decl>(Decl{std::move(f), span});
  }

  // --- statements -----------------------------------------------------------

  StmtPtr parse_block() {
    Span span = peek().span;
    expect_punct("{");
    Block b;
    while (!accept_punct("}")) b.stmts.push_back(parse_stmt());
    return std::make_shared<const Stmt>(Stmt{std::move(b), span});
  }

  StmtPtr parse_stmt() {
    Span span = peek().span;
    if (at_punct("{")) return parse_block();
    if (at_ident("if")) {
      advance();
      expect_punct("(");
      If s;
      s.cond = parse_expr();
      expect_punct(")");
      s.then_branch = parse_stmt();
      if (at_ident("else")) {
        advance();
        s.else_branch = parse_stmt();
      } else {
        s.else_branch = std::make_shared<const Stmt>(Stmt{Block{}, span});
      }
      return std::make_shared<const Stmt>(Stmt{std::move(s), span});
    }
    if (at_ident("exit")) {
      advance();
      expect_punct(";");
      return std::make_shared<const Stmt>(Stmt{Exit{}, span});
    }
    if (at_ident("return")) {
      advance();
      Return r;
      if (!at_punct(";")) r.value = parse_expr();
      expect_punct(";");
      return std::make_shared<const Stmt>(Stmt{std::move(r), span});
    }
    if (starts_var_decl())
      return std::make_shared<const Stmt>(Stmt{DeclStmt{parse_var_decl()}, span});
    if (at_ident("typedef") || at_ident("match_kind"))
      return std::make_shared<const Stmt>(Stmt{DeclStmt{parse_type_level_decl()}, span});

    ExprPtr e = parse_expr();
    if (accept_punct("=") || accept_punct(":=")) {
      Assign a;
      a.target = e;
      a.value = parse_expr();
      expect_punct(";");
      return std::make_shared<const Stmt>(Stmt{std::move(a), span});
    }
    expect_punct(";");
    if (!std::holds_alternative<Call>(e->node))
      err(span, "expression statement must be a call");
    return std::make_shared<const Stmt>(Stmt{CallStmt{e}, span});
  }

  // A statement starts a variable declaration if it begins with a type. We
  // disambiguate `IDENT name` (decl) from `IDENT.f = ...` (assignment) by
  // looking one token ahead.
  bool starts_var_decl() const {
    if (at_punct("<")) return true;
    if (at_ident("bool") || at_ident("int") || at_ident("unit") || at_ident("bit"))
      return true;
    if (at_ident("header") && peek(1).kind == TokKind::Punct && peek(1).text == "{")
      return true;
    if (peek().kind == TokKind::Ident && !is_keyword(peek().text)) {
      const Token& next = peek(1);
      if (next.kind == TokKind::Ident && !is_keyword(next.text)) return true;
      if (next.kind == TokKind::Punct && next.text == "[") {
        // `T[3] x` vs `a[i] = ...`: a type-position bracket holds a bare
        // integer followed by `]` and an identifier.
        return peek(2).kind == TokKind::Int && peek(3).kind == TokKind::Punct &&
               peek(3).text == "]" && peek(4).kind == TokKind::Ident &&
               !is_keyword(peek(4).text);
      }
    }
    return false;
  }

  // --- expressions ----------------------------------------------------------

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (at_punct("||")) {
      Span span = advance().span;
      e = binary(BinOp::Or, e, parse_and(), span);
    }
    return e;
  }

  ExprPtr parse_and() {
    ExprPtr e = parse_equality();
    while (at_punct("&&")) {
      Span span = advance().span;
      e = binary(BinOp::And, e, parse_equality(), span);
    }
    return e;
  }

  ExprPtr parse_equality() {
    ExprPtr e = parse_relational();
    for (;;) {
      if (at_punct("==")) {
        Span span = advance().span;
        e = binary(BinOp::Eq, e, parse_relational(), span);
      } else if (at_punct("!=")) {
        Span span = advance().span;
        e = binary(BinOp::Ne, e, parse_relational(), span);
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_relational() {
    ExprPtr e = parse_bitor();
    for (;;) {
      BinOp op;
      if (at_punct("<")) op = BinOp::Lt;
      else if (at_punct("<=")) op = BinOp::Le;
      else if (at_punct(">")) op = BinOp::Gt;
      else if (at_punct(">=")) op = BinOp::Ge;
      else return e;
      Span span = advance().span;
      e = binary(op, e, parse_bitor(), span);
    }
  }

  ExprPtr parse_bitor() {
    ExprPtr e = parse_bitxor();
    while (at_punct("|")) {
      Span span = advance().span;
      e = binary(BinOp::BitOr, e, parse_bitxor(), span);
    }
    return e;
  }

  ExprPtr parse_bitxor() {
    ExprPtr e = parse_bitand();
    while (at_punct("^")) {
      Span span = advance().span;
      e = binary(BinOp::BitXor, e, parse_bitand(), span);
    }
    return e;
  }

  ExprPtr parse_bitand() {
    ExprPtr e = parse_additive();
    while (at_punct("&")) {
      Span span = advance().span;
      e = binary(BinOp::BitAnd, e, parse_additive(), span);
    }
    return e;
  }

  ExprPtr parse_additive() {
    ExprPtr e = parse_multiplicative();
    for (;;) {
      if (at_punct("+")) {
        Span span = advance().span;
        e = binary(BinOp::Add, e, parse_multiplicative(), span);
      } else if (at_punct("-")) {
        Span span = advance().span;
        e = binary(BinOp::Sub, e, parse_multiplicative(), span);
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_multiplicative() {
    ExprPtr e = parse_postfix();
    while (at_punct("*")) {
      Span span = advance().span;
      e = binary(BinOp::Mul, e, parse_postfix(), span);
    }
    return e;
  }

  ExprPtr binary(BinOp op, ExprPtr l, ExprPtr r, Span span) {
    return std::make_shared<const Expr>(Expr{Binary{op, std::move(l), std::move(r)}, span});
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    for (;;) {
      Span span = peek().span;
      if (accept_punct(".")) {
        std::string f = expect(TokKind::Ident).text;
        e = std::make_shared<const Expr>(Expr{Member{e, std::move(f)}, span});
      } else if (accept_punct("[")) {
        ExprPtr idx = parse_expr();
        expect_punct("]");
        e = std::make_shared<const Expr>(Expr{Index{e, idx}, span});
      } else if (accept_punct("(")) {
        Call c;
        c.callee = e;
        if (!at_punct(")")) {
          for (;;) {
            c.args.push_back(parse_expr());
            if (!accept_punct(",")) break;
          }
        }
        expect_punct(")");
        e = std::make_shared<const Expr>(Expr{std::move(c), span});
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_primary() {
    Span span = peek().span;
    if (at_ident("true") || at_ident("false")) {
      bool v = advance().text == "true";
      return std::make_shared<const Expr>(Expr{BoolLit{v}, span});
    }
    if (peek().kind == TokKind::Int) {
      const Token& t = advance();
      if (accept_punct(":")) {
        const Token& w = expect(TokKind::Int);
        uint64_t width = parse_uint(w);
        if (width < 1 || width > kMaxBitWidth)
          err(w.span, "bit width must be between 1 and " + std::to_string(kMaxBitWidth));
        unsigned __int128 value = 0;
        for (char c : t.text) {
          value = value * 10 + static_cast<unsigned>(c - '0');
          if (width < 128 && value >= (static_cast<unsigned __int128>(1) << width))
            err(t.span, "literal does not fit in bit<" + w.text + ">");
        }
        return std::make_shared<const Expr>(
            Expr{BitLit{value, static_cast<uint32_t>(width)}, span});
      }
      uint64_t v = parse_uint(t);
      if (v > static_cast<uint64_t>(INT64_MAX)) err(t.span, "int literal out of range");
      return std::make_shared<const Expr>(Expr{IntLit{static_cast<int64_t>(v)}, span});
    }
    if (accept_punct("(")) {
      ExprPtr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (accept_punct("{")) {
      RecordLit r;
      while (!accept_punct("}")) {
        std::string f = expect_name();
        expect_punct("=");
        r.fields.emplace_back(std::move(f), parse_expr());
        accept_punct(",");
      }
      return std::make_shared<const Expr>(Expr{std::move(r), span});
    }
    if (peek().kind == TokKind::Ident && !is_keyword(peek().text))
      return std::make_shared<const Expr>(Expr{VarRef{advance().text}, span});
    err(span, "expected an expression");
  }

  std::vector<Token> toks_;
  const Lattice& lattice_;
  size_t pos_ = 0;
};

} // namespace

Program parse_program(const std::string& source, const Lattice& lattice) {
  return Parser(lex(source), lattice).parse();
}

} // namespace p4ifc
