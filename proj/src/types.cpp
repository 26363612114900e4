// p4ifc/types.cpp - security type helpers and typedef resolution
#include <set>

#include "p4ifc/syntax.hpp"

namespace p4ifc {

TypePtr make_type(BaseType base, SecurityLabel label) {
  return std::make_shared<const SecurityType>(SecurityType{std::move(base), label});
}

TypePtr bool_type(SecurityLabel l) {
  BaseType b;
  b.kind = BaseType::Bool;
  return make_type(std::move(b), l);
}

TypePtr int_type(SecurityLabel l) {
  BaseType b;
  b.kind = BaseType::Int;
  return make_type(std::move(b), l);
}

TypePtr bit_type(uint32_t width, SecurityLabel l) {
  BaseType b;
  b.kind = BaseType::Bit;
  b.width = width;
  return make_type(std::move(b), l);
}

TypePtr unit_type() {
  BaseType b;
  b.kind = BaseType::Unit;
  return make_type(std::move(b), SecurityLabel{0});
}

TypePtr error_type() {
  BaseType b;
  b.kind = BaseType::Error;
  return make_type(std::move(b), SecurityLabel{0});
}

bool is_scalar(const TypePtr& t) {
  switch (t->base.kind) {
    case BaseType::Bool:
    case BaseType::Int:
    case BaseType::Bit:
      return true;
    default:
      return false;
  }
}

namespace {

TypePtr resolve_rec(const TypeDefs& defs, const TypePtr& type, std::set<std::string>& seen) {
  const BaseType& b = type->base;
  switch (b.kind) {
    case BaseType::Name: {
      auto it = defs.types.find(b.name);
      if (it == defs.types.end())
        throw CompileError("UnknownTypeName", {}, "unknown type name '" + b.name + "'");
      if (!seen.insert(b.name).second)
        throw CompileError("CyclicTypedef", {}, "typedef cycle through '" + b.name + "'");
      TypePtr inner = resolve_rec(defs, it->second, seen);
      seen.erase(b.name);
      // An annotation on the alias itself is pushed through the unfolding.
      if (defs.lattice && type->label != defs.lattice->bottom())
        inner = apply_label(*defs.lattice, inner, type->label);
      return inner;
    }
    case BaseType::Record:
    case BaseType::Header: {
      BaseType copy = b;
      for (auto& f : copy.fields) f.type = resolve_rec(defs, f.type, seen);
      return make_type(std::move(copy), type->label);
    }
    case BaseType::Stack: {
      BaseType copy = b;
      copy.elem = resolve_rec(defs, b.elem, seen);
      return make_type(std::move(copy), type->label);
    }
    case BaseType::Function: {
      BaseType copy = b;
      for (auto& p : copy.params) p.type = resolve_rec(defs, p.type, seen);
      copy.ret = resolve_rec(defs, b.ret, seen);
      return make_type(std::move(copy), type->label);
    }
    default:
      return type;
  }
}

} // namespace

TypePtr resolve_type(const TypeDefs& defs, const TypePtr& type) {
  std::set<std::string> seen;
  return resolve_rec(defs, type, seen);
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a->base.kind == BaseType::Error || b->base.kind == BaseType::Error) return true;
  if (a->base.kind != b->base.kind) return false;
  if (a->label != b->label) return false;
  const BaseType& x = a->base;
  const BaseType& y = b->base;
  switch (x.kind) {
    case BaseType::Bool:
    case BaseType::Int:
    case BaseType::Unit:
    case BaseType::MatchKind:
      return true;
    case BaseType::Bit:
      return x.width == y.width;
    case BaseType::Record:
    case BaseType::Header: {
      if (x.fields.size() != y.fields.size()) return false;
      for (size_t i = 0; i < x.fields.size(); ++i) {
        if (x.fields[i].name != y.fields[i].name) return false;
        if (!type_equal(x.fields[i].type, y.fields[i].type)) return false;
      }
      return true;
    }
    case BaseType::Stack:
      return x.size == y.size && type_equal(x.elem, y.elem);
    case BaseType::Table:
      return x.pc == y.pc;
    case BaseType::Function: {
      if (x.params.size() != y.params.size()) return false;
      if (x.pc != y.pc) return false;
      for (size_t i = 0; i < x.params.size(); ++i) {
        const Param& p = x.params[i];
        const Param& q = y.params[i];
        if (p.dir != q.dir || p.control_plane != q.control_plane) return false;
        if (!type_equal(p.type, q.type)) return false;
      }
      return type_equal(x.ret, y.ret);
    }
    case BaseType::Name:
      return x.name == y.name && a->label == b->label;
    case BaseType::Error:
      return true;
  }
  return false;
}

TypePtr apply_label(const Lattice& lattice, const TypePtr& t, SecurityLabel chi) {
  if (chi == lattice.bottom()) return t;
  const BaseType& b = t->base;
  switch (b.kind) {
    case BaseType::Bool:
    case BaseType::Int:
    case BaseType::Bit:
      return make_type(BaseType(b), lattice.join(t->label, chi));
    case BaseType::Record:
    case BaseType::Header: {
      BaseType copy = b;
      for (auto& f : copy.fields) f.type = apply_label(lattice, f.type, chi);
      return make_type(std::move(copy), t->label);
    }
    case BaseType::Stack: {
      BaseType copy = b;
      copy.elem = apply_label(lattice, b.elem, chi);
      return make_type(std::move(copy), t->label);
    }
    default:
      // unit, match_kind, table, function shapes carry no data labels
      return t;
  }
}

const char* binop_name(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
    case BinOp::BitAnd: return "&";
    case BinOp::BitOr: return "|";
    case BinOp::BitXor: return "^";
  }
  return "?";
}

std::string uint128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return out;
}

} // namespace p4ifc
