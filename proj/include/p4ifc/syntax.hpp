// p4ifc/syntax.hpp - lexer, parser, typedef resolution, pretty printer
#pragma once

#include <map>
#include <set>
#include <string>

#include "p4ifc/ast.hpp"
#include "p4ifc/diag.hpp"

namespace p4ifc {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class TokKind {
  Ident, Int, Punct, Eof,
};

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;
  Span span;
};

std::vector<Token> lex(const std::string& source);

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

/// Parses a source file against a lattice. Every `<T, label>` annotation must
/// name a lattice element; unannotated types default to bottom. Throws
/// CompileError with the offending span.
Program parse_program(const std::string& source, const Lattice& lattice);

// ---------------------------------------------------------------------------
// Typedef resolution  (Delta |- tau ~> tau')
// ---------------------------------------------------------------------------

struct TypeDefs {
  const Lattice* lattice = nullptr;
  std::map<std::string, TypePtr> types;
  std::set<std::string> match_kind_members;
};

/// Unfolds typedef names recursively into record/header fields and stack
/// elements; labels are preserved. Throws CompileError on unknown names and
/// cyclic typedef chains.
TypePtr resolve_type(const TypeDefs& defs, const TypePtr& type);

/// Structural equality after resolution; record/header types are equal iff
/// field names, order, shapes, and labels all match. Error shapes compare
/// equal to anything.
bool type_equal(const TypePtr& a, const TypePtr& b);

/// True for bool/int/bit shapes, the only ones whose outer label may be
/// raised by in-direction subtyping.
bool is_scalar(const TypePtr& t);

/// <T, chi> over an aggregate shape pushes chi onto the scalar leaf labels
/// (joined with what is already there); the aggregate itself keeps bottom.
TypePtr apply_label(const Lattice& lattice, const TypePtr& t, SecurityLabel chi);

// ---------------------------------------------------------------------------
// Pretty printer
// ---------------------------------------------------------------------------

std::string print_type(const TypePtr& t, const Lattice& lattice);
std::string print_expr(const ExprPtr& e, const Lattice& lattice);
std::string print_program(const Program& p, const Lattice& lattice);

std::string uint128_to_string(unsigned __int128 v);

} // namespace p4ifc
