// p4ifc/value.hpp - runtime values, store, environment, signals
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "p4ifc/syntax.hpp"

namespace p4ifc {

using Loc = uint32_t;

/// Variable-to-location map. Ordered so dumps and domain comparisons are
/// deterministic.
using Env = std::map<std::string, Loc>;

struct Value;

struct BoolV { bool v = false; };
struct IntV { int64_t v = 0; };
struct BitsV {
  unsigned __int128 v = 0;  // always reduced mod 2^width
  uint32_t width = 0;
};
struct UnitV {};
struct RecordV { std::vector<std::pair<std::string, Value>> fields; };
struct HeaderV {
  bool valid = true;  // headers in this system are always valid
  std::vector<std::pair<std::string, Value>> fields;
};
struct StackV {
  TypePtr elem_type;
  std::vector<Value> elems;
};
struct MatchKindV { std::string member; };

/// clos(eps, params, ret, body)
struct ClosV {
  Env captured;
  std::vector<Param> params;  // resolved types
  TypePtr ret;
  StmtPtr body;
};

/// table l (eps, keys, actions); the declaration holds the key and action
/// reference syntax.
struct TableV {
  Loc self = 0;
  std::string name;
  Env captured;
  std::shared_ptr<const Decl> decl;  // holds a TableDecl
};

struct Value {
  std::variant<BoolV, IntV, BitsV, UnitV, RecordV, HeaderV, StackV, MatchKindV, ClosV, TableV> v;

  bool is_closure() const {
    return std::holds_alternative<ClosV>(v) || std::holds_alternative<TableV>(v);
  }
};

bool value_equal(const Value& a, const Value& b);

/// Store: location -> value, plus the security type recorded at allocation
/// (the store typing Xi). Locations are dense indices handed out by a
/// counter and never reused.
class Store {
 public:
  Loc alloc(Value v, TypePtr type) {
    values_.push_back(std::move(v));
    types_.push_back(std::move(type));
    return static_cast<Loc>(values_.size() - 1);
  }

  size_t size() const { return values_.size(); }
  const Value& at(Loc l) const { return values_.at(l); }
  Value& at(Loc l) { return values_.at(l); }
  const TypePtr& type_at(Loc l) const { return types_.at(l); }

 private:
  std::vector<Value> values_;
  std::vector<TypePtr> types_;
};

struct Signal {
  enum Kind { Cont, Ret, Exit } kind = Cont;
  Value value;  // for Ret

  static Signal cont() { return {Cont, {}}; }
  static Signal ret(Value v) { return {Ret, std::move(v)}; }
  static Signal exit() { return {Exit, {}}; }

  const char* name() const {
    switch (kind) {
      case Cont: return "cont";
      case Ret: return "return";
      case Exit: return "exit";
    }
    return "?";
  }
};

/// Canonical zero value of a resolved type: false, 0, zero bits, recursively
/// zeroed aggregates with valid headers.
Value init_value(const TypeDefs& defs, const TypePtr& type);

/// The value produced by an out-of-bounds read. Deterministic; defined as
/// init_value.
Value havoc_value(const TypeDefs& defs, const TypePtr& type);

/// Structural value typing at a resolved security type (store-typing
/// preservation checks).
bool value_types(const TypeDefs& defs, const Value& v, const TypePtr& type);

std::string print_value(const Value& v);

/// Parses a value literal against an expected resolved type. Accepts the
/// same forms print_value emits: true/false, decimal ints, N:w bits,
/// {f = v, ...} aggregates, [v, ...] stacks. Throws CompileError.
Value parse_value(const TypeDefs& defs, const TypePtr& type, const std::string& text);

} // namespace p4ifc
