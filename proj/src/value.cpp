// p4ifc/value.cpp
#include "p4ifc/value.hpp"

#include <cctype>
#include <sstream>

namespace p4ifc {

bool value_equal(const Value& a, const Value& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, BoolV>) {
          return x.v == y.v;
        } else if constexpr (std::is_same_v<T, IntV>) {
          return x.v == y.v;
        } else if constexpr (std::is_same_v<T, BitsV>) {
          return x.width == y.width && x.v == y.v;
        } else if constexpr (std::is_same_v<T, UnitV>) {
          return true;
        } else if constexpr (std::is_same_v<T, RecordV>) {
          if (x.fields.size() != y.fields.size()) return false;
          for (size_t i = 0; i < x.fields.size(); ++i) {
            if (x.fields[i].first != y.fields[i].first) return false;
            if (!value_equal(x.fields[i].second, y.fields[i].second)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, HeaderV>) {
          if (x.valid != y.valid || x.fields.size() != y.fields.size()) return false;
          for (size_t i = 0; i < x.fields.size(); ++i) {
            if (x.fields[i].first != y.fields[i].first) return false;
            if (!value_equal(x.fields[i].second, y.fields[i].second)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, StackV>) {
          if (x.elems.size() != y.elems.size()) return false;
          for (size_t i = 0; i < x.elems.size(); ++i)
            if (!value_equal(x.elems[i], y.elems[i])) return false;
          return true;
        } else if constexpr (std::is_same_v<T, MatchKindV>) {
          return x.member == y.member;
        } else if constexpr (std::is_same_v<T, ClosV>) {
          return x.captured == y.captured && x.body == y.body &&
                 x.params.size() == y.params.size();
        } else if constexpr (std::is_same_v<T, TableV>) {
          return x.self == y.self && x.name == y.name && x.captured == y.captured &&
                 x.decl == y.decl;
        }
      },
      a.v);
}

Value init_value(const TypeDefs& defs, const TypePtr& type) {
  TypePtr t = resolve_type(defs, type);
  const BaseType& b = t->base;
  switch (b.kind) {
    case BaseType::Bool:
      return {BoolV{false}};
    case BaseType::Int:
      return {IntV{0}};
    case BaseType::Bit:
      return {BitsV{0, b.width}};
    case BaseType::Unit:
      return {UnitV{}};
    case BaseType::Record: {
      RecordV r;
      for (auto& f : b.fields) r.fields.emplace_back(f.name, init_value(defs, f.type));
      return {std::move(r)};
    }
    case BaseType::Header: {
      HeaderV h;
      for (auto& f : b.fields) h.fields.emplace_back(f.name, init_value(defs, f.type));
      return {std::move(h)};
    }
    case BaseType::Stack: {
      StackV s;
      s.elem_type = resolve_type(defs, b.elem);
      for (uint32_t i = 0; i < b.size; ++i) s.elems.push_back(init_value(defs, b.elem));
      return {std::move(s)};
    }
    default:
      throw CompileError("UnknownTypeName", {}, "cannot initialize a non-data type");
  }
}

Value havoc_value(const TypeDefs& defs, const TypePtr& type) {
  return init_value(defs, type);
}

bool value_types(const TypeDefs& defs, const Value& v, const TypePtr& type) {
  const BaseType& b = type->base;
  switch (b.kind) {
    case BaseType::Bool:
      return std::holds_alternative<BoolV>(v.v);
    case BaseType::Int:
      return std::holds_alternative<IntV>(v.v);
    case BaseType::Bit: {
      const auto* bits = std::get_if<BitsV>(&v.v);
      if (!bits || bits->width != b.width) return false;
      if (b.width >= 128) return true;
      return bits->v < (static_cast<unsigned __int128>(1) << b.width);
    }
    case BaseType::Unit:
      return std::holds_alternative<UnitV>(v.v);
    case BaseType::Record: {
      const auto* r = std::get_if<RecordV>(&v.v);
      if (!r || r->fields.size() != b.fields.size()) return false;
      for (size_t i = 0; i < b.fields.size(); ++i) {
        if (r->fields[i].first != b.fields[i].name) return false;
        if (!value_types(defs, r->fields[i].second, b.fields[i].type)) return false;
      }
      return true;
    }
    case BaseType::Header: {
      const auto* h = std::get_if<HeaderV>(&v.v);
      if (!h || h->fields.size() != b.fields.size()) return false;
      for (size_t i = 0; i < b.fields.size(); ++i) {
        if (h->fields[i].first != b.fields[i].name) return false;
        if (!value_types(defs, h->fields[i].second, b.fields[i].type)) return false;
      }
      return true;
    }
    case BaseType::Stack: {
      const auto* s = std::get_if<StackV>(&v.v);
      if (!s || s->elems.size() != b.size) return false;
      for (auto& e : s->elems)
        if (!value_types(defs, e, b.elem)) return false;
      return true;
    }
    case BaseType::MatchKind: {
      const auto* m = std::get_if<MatchKindV>(&v.v);
      return m && defs.match_kind_members.count(m->member) != 0;
    }
    case BaseType::Table:
      return std::holds_alternative<TableV>(v.v);
    case BaseType::Function: {
      const auto* c = std::get_if<ClosV>(&v.v);
      if (!c || c->params.size() != b.params.size()) return false;
      for (size_t i = 0; i < b.params.size(); ++i)
        if (!type_equal(c->params[i].type, b.params[i].type)) return false;
      return type_equal(c->ret, b.ret);
    }
    case BaseType::Name:
      return value_types(defs, v, resolve_type(defs, type));
    case BaseType::Error:
      return true;
  }
  return false;
}

std::string print_value(const Value& v) {
  std::ostringstream os;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoolV>) {
          os << (x.v ? "true" : "false");
        } else if constexpr (std::is_same_v<T, IntV>) {
          os << x.v;
        } else if constexpr (std::is_same_v<T, BitsV>) {
          os << uint128_to_string(x.v) << ":" << x.width;
        } else if constexpr (std::is_same_v<T, UnitV>) {
          os << "unit";
        } else if constexpr (std::is_same_v<T, RecordV>) {
          os << "{";
          for (size_t i = 0; i < x.fields.size(); ++i) {
            if (i) os << ", ";
            os << x.fields[i].first << " = " << print_value(x.fields[i].second);
          }
          os << "}";
        } else if constexpr (std::is_same_v<T, HeaderV>) {
          os << "{";
          for (size_t i = 0; i < x.fields.size(); ++i) {
            if (i) os << ", ";
            os << x.fields[i].first << " = " << print_value(x.fields[i].second);
          }
          os << "}";
        } else if constexpr (std::is_same_v<T, StackV>) {
          os << "[";
          for (size_t i = 0; i < x.elems.size(); ++i) {
            if (i) os << ", ";
            os << print_value(x.elems[i]);
          }
          os << "]";
        } else if constexpr (std::is_same_v<T, MatchKindV>) {
          os << x.member;
        } else if constexpr (std::is_same_v<T, ClosV>) {
          os << "<function closure>";
        } else if constexpr (std::is_same_v<T, TableV>) {
          os << "<table closure>";
        }
      },
      v.v);
  return os.str();
}

namespace {

class ValueParser {
 public:
  ValueParser(const TypeDefs& defs, std::string_view text) : defs_(defs), text_(text) {}

  Value parse(const TypePtr& type) {
    Value v = parse_inner(resolve_type(defs_, type));
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters after value");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw CompileError("ParseError", {}, "value '" + std::string(text_) + "': " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string word() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a value");
    return std::string(text_.substr(start, pos_ - start));
  }

  unsigned __int128 number(bool* negative = nullptr) {
    skip_ws();
    if (negative) {
      *negative = pos_ < text_.size() && text_[pos_] == '-';
      if (*negative) ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a number");
    unsigned __int128 v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      v = v * 10 + static_cast<unsigned>(text_[pos_++] - '0');
    return v;
  }

  Value parse_inner(const TypePtr& type) {
    const BaseType& b = type->base;
    skip_ws();
    switch (b.kind) {
      case BaseType::Bool: {
        std::string w = word();
        if (w == "true") return {BoolV{true}};
        if (w == "false") return {BoolV{false}};
        fail("expected true or false");
      }
      case BaseType::Int: {
        bool neg = false;
        unsigned __int128 v = number(&neg);
        if (v > static_cast<unsigned __int128>(INT64_MAX) + (neg ? 1 : 0))
          fail("int out of range");
        int64_t out = neg ? -static_cast<int64_t>(v) : static_cast<int64_t>(v);
        return {IntV{out}};
      }
      case BaseType::Bit: {
        unsigned __int128 v = number();
        uint32_t width = b.width;
        if (accept(':')) {
          unsigned __int128 w = number();
          if (w != width) fail("bit width does not match the declared type");
        }
        if (width < 128 && v >= (static_cast<unsigned __int128>(1) << width))
          fail("value does not fit in the declared width");
        return {BitsV{v, width}};
      }
      case BaseType::Record:
      case BaseType::Header: {
        expect('{');
        std::vector<std::pair<std::string, Value>> fields;
        for (auto& f : b.fields) {
          std::string name = word();
          if (name != f.name) fail("expected field '" + f.name + "'");
          expect('=');
          fields.emplace_back(f.name, parse_inner(resolve_type(defs_, f.type)));
          accept(',');
        }
        expect('}');
        if (b.kind == BaseType::Record) return {RecordV{std::move(fields)}};
        return {HeaderV{true, std::move(fields)}};
      }
      case BaseType::Stack: {
        expect('[');
        StackV s;
        s.elem_type = resolve_type(defs_, b.elem);
        for (uint32_t i = 0; i < b.size; ++i) {
          s.elems.push_back(parse_inner(s.elem_type));
          accept(',');
        }
        expect(']');
        return {std::move(s)};
      }
      default:
        fail("cannot parse a value of this type");
    }
  }

  const TypeDefs& defs_;
  std::string_view text_;
  size_t pos_ = 0;
};

} // namespace

Value parse_value(const TypeDefs& defs, const TypePtr& type, const std::string& text) {
  return ValueParser(defs, text).parse(type);
}

} // namespace p4ifc
