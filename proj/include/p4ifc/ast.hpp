// p4ifc/ast.hpp - AST for the annotated control-block fragment
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "p4ifc/lattice.hpp"

namespace p4ifc {

struct Span {
  int line = 0;  // 1-based
  int col = 0;   // 1-based

  friend bool operator==(const Span&, const Span&) = default;
};

// ---------------------------------------------------------------------------
// Security types
// ---------------------------------------------------------------------------

enum class Dir { In, InOut };

struct SecurityType;
using TypePtr = std::shared_ptr<const SecurityType>;

struct Field {
  std::string name;
  TypePtr type;
};

struct Param {
  Dir dir = Dir::In;
  std::string name;
  TypePtr type;
  bool control_plane = false;  // written after ';' in the parameter list
  Span span;
};

/// Shape of a security type, mirroring the base/general type grammar. The
/// outer label of aggregate, table, and function shapes is always bottom;
/// labels live on fields, elements, and the arrow.
struct BaseType {
  enum Kind {
    Bool,
    Int,
    Bit,       // width
    Unit,
    Record,    // fields
    Header,    // fields
    Stack,     // elem type, size
    MatchKind,
    Table,     // pc_tbl
    Function,  // params, pc_fn, ret
    Name,      // unresolved typedef reference
    Error,     // checker-internal poison; unifies with anything
  };

  Kind kind = Error;
  uint32_t width = 0;                 // Bit
  std::vector<Field> fields;          // Record, Header
  TypePtr elem;                       // Stack
  uint32_t size = 0;                  // Stack
  SecurityLabel pc;                   // Table: pc_tbl, Function: pc_fn
  std::vector<Param> params;          // Function
  TypePtr ret;                        // Function
  std::string name;                   // Name
};

struct SecurityType {
  BaseType base;
  SecurityLabel label;  // outer label; bottom for non-scalar shapes
};

TypePtr make_type(BaseType base, SecurityLabel label);
TypePtr bool_type(SecurityLabel l);
TypePtr int_type(SecurityLabel l);
TypePtr bit_type(uint32_t width, SecurityLabel l);
TypePtr unit_type();
TypePtr error_type();

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinOp {
  Add, Sub, Mul,
  Eq, Ne, Lt, Le, Gt, Ge,
  And, Or,
  BitAnd, BitOr, BitXor,
};

const char* binop_name(BinOp op);

struct BoolLit { bool value = false; };
struct IntLit { int64_t value = 0; };
struct BitLit { unsigned __int128 value = 0; uint32_t width = 0; };
struct VarRef { std::string name; };
struct Index { ExprPtr array; ExprPtr index; };
struct Binary { BinOp op; ExprPtr lhs; ExprPtr rhs; };
struct RecordLit { std::vector<std::pair<std::string, ExprPtr>> fields; };
struct Member { ExprPtr base; std::string field; };
struct Call { ExprPtr callee; std::vector<ExprPtr> args; };

struct Expr {
  std::variant<BoolLit, IntLit, BitLit, VarRef, Index, Binary, RecordLit, Member, Call> node;
  Span span;
};

// ---------------------------------------------------------------------------
// Statements and declarations
// ---------------------------------------------------------------------------

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;
struct Decl;
using DeclPtr = std::shared_ptr<const Decl>;

struct CallStmt { ExprPtr call; };            // function call or table apply
struct Assign { ExprPtr target; ExprPtr value; };
struct If { ExprPtr cond; StmtPtr then_branch; StmtPtr else_branch; };
struct Block { std::vector<StmtPtr> stmts; };
struct Exit {};
struct Return { std::optional<ExprPtr> value; };
struct DeclStmt { DeclPtr decl; };

struct Stmt {
  std::variant<CallStmt, Assign, If, Block, Exit, Return, DeclStmt> node;
  Span span;
};

struct VarDecl {
  TypePtr type;
  std::string name;
  std::optional<ExprPtr> init;
};

struct TypedefDecl {
  TypePtr type;
  std::string name;
};

struct MatchKindDecl {
  std::vector<std::string> members;
};

struct TableKey {
  ExprPtr expr;
  std::string match_kind;
  Span span;
};

struct ActionRef {
  std::string name;
  std::vector<ExprPtr> bound_args;  // declaration-time arguments
  Span span;
};

struct TableDecl {
  std::string name;
  std::vector<TableKey> keys;
  std::vector<ActionRef> actions;
};

struct FunctionDecl {
  std::string name;
  std::vector<Param> params;  // directional first, then control-plane
  TypePtr ret;                // unit for actions
  StmtPtr body;               // always a Block
  std::optional<std::string> pc_annotation;  // @pc(label)
  bool is_action = false;
};

struct Decl {
  std::variant<VarDecl, TypedefDecl, MatchKindDecl, TableDecl, FunctionDecl> node;
  Span span;
};

struct Program {
  std::vector<DeclPtr> top_decls;  // typedef / match_kind (incl. header/struct sugar)
  std::string control_name;
  std::vector<Param> control_params;
  std::vector<DeclPtr> decls;      // control-body declarations
  StmtPtr apply;                   // the apply block
  Span control_span;
};

} // namespace p4ifc
