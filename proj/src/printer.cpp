// p4ifc/printer.cpp - canonical source form, used by the round-trip tests
#include <sstream>

#include "p4ifc/syntax.hpp"

namespace p4ifc {

namespace {

class Printer {
 public:
  explicit Printer(const Lattice& lattice) : lattice_(lattice) {}

  std::string type(const TypePtr& t) {
    const BaseType& b = t->base;
    bool labeled = is_scalar(t) && t->label != lattice_.bottom();
    std::string inner;
    switch (b.kind) {
      case BaseType::Bool: inner = "bool"; break;
      case BaseType::Int: inner = "int"; break;
      case BaseType::Unit: inner = "unit"; break;
      case BaseType::Bit: inner = "bit<" + std::to_string(b.width) + ">"; break;
      case BaseType::Name:
        inner = b.name;
        labeled = t->label != lattice_.bottom();
        break;
      case BaseType::Record:
      case BaseType::Header: {
        std::ostringstream os;
        if (b.kind == BaseType::Header) os << "header ";
        os << "{ ";
        for (auto& f : b.fields) os << type(f.type) << " " << f.name << "; ";
        os << "}";
        inner = os.str();
        break;
      }
      case BaseType::Stack:
        inner = type(b.elem) + "[" + std::to_string(b.size) + "]";
        break;
      case BaseType::MatchKind: inner = "match_kind"; break;
      case BaseType::Table: inner = "table"; break;
      case BaseType::Function: inner = "function"; break;
      case BaseType::Error: inner = "<error>"; break;
    }
    if (labeled) return "<" + inner + ", " + lattice_.name(t->label) + ">";
    return inner;
  }

  std::string expr(const ExprPtr& e) {
    std::ostringstream os;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, BoolLit>) {
            os << (n.value ? "true" : "false");
          } else if constexpr (std::is_same_v<T, IntLit>) {
            os << n.value;
          } else if constexpr (std::is_same_v<T, BitLit>) {
            os << uint128_to_string(n.value) << ":" << n.width;
          } else if constexpr (std::is_same_v<T, VarRef>) {
            os << n.name;
          } else if constexpr (std::is_same_v<T, Index>) {
            os << expr(n.array) << "[" << expr(n.index) << "]";
          } else if constexpr (std::is_same_v<T, Binary>) {
            os << "(" << expr(n.lhs) << " " << binop_name(n.op) << " " << expr(n.rhs) << ")";
          } else if constexpr (std::is_same_v<T, RecordLit>) {
            os << "{";
            for (size_t i = 0; i < n.fields.size(); ++i) {
              if (i) os << ", ";
              os << n.fields[i].first << " = " << expr(n.fields[i].second);
            }
            os << "}";
          } else if constexpr (std::is_same_v<T, Member>) {
            os << expr(n.base) << "." << n.field;
          } else if constexpr (std::is_same_v<T, Call>) {
            os << expr(n.callee) << "(";
            for (size_t i = 0; i < n.args.size(); ++i) {
              if (i) os << ", ";
              os << expr(n.args[i]);
            }
            os << ")";
          }
        },
        e->node);
    return os.str();
  }

  void stmt(std::ostringstream& os, const StmtPtr& s, int ind) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, CallStmt>) {
            line(os, ind, expr(n.call) + ";");
          } else if constexpr (std::is_same_v<T, Assign>) {
            line(os, ind, expr(n.target) + " = " + expr(n.value) + ";");
          } else if constexpr (std::is_same_v<T, If>) {
            line(os, ind, "if (" + expr(n.cond) + ")");
            stmt(os, n.then_branch, ind);
            line(os, ind, "else");
            stmt(os, n.else_branch, ind);
          } else if constexpr (std::is_same_v<T, Block>) {
            line(os, ind, "{");
            for (auto& inner : n.stmts) stmt(os, inner, ind + 1);
            line(os, ind, "}");
          } else if constexpr (std::is_same_v<T, Exit>) {
            line(os, ind, "exit;");
          } else if constexpr (std::is_same_v<T, Return>) {
            line(os, ind, n.value ? "return " + expr(*n.value) + ";" : "return;");
          } else if constexpr (std::is_same_v<T, DeclStmt>) {
            decl(os, n.decl, ind);
          }
        },
        s->node);
  }

  void decl(std::ostringstream& os, const DeclPtr& d, int ind) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, VarDecl>) {
            std::string s = type(n.type) + " " + n.name;
            if (n.init) s += " = " + expr(*n.init);
            line(os, ind, s + ";");
          } else if constexpr (std::is_same_v<T, TypedefDecl>) {
            line(os, ind, "typedef " + type(n.type) + " " + n.name + ";");
          } else if constexpr (std::is_same_v<T, MatchKindDecl>) {
            std::string s = "match_kind { ";
            for (size_t i = 0; i < n.members.size(); ++i) {
              if (i) s += ", ";
              s += n.members[i];
            }
            line(os, ind, s + " }");
          } else if constexpr (std::is_same_v<T, TableDecl>) {
            line(os, ind, "table " + n.name + " {");
            line(os, ind + 1, "key = {");
            for (auto& k : n.keys)
              line(os, ind + 2, expr(k.expr) + ": " + k.match_kind + ";");
            line(os, ind + 1, "}");
            line(os, ind + 1, "actions = {");
            for (auto& a : n.actions) {
              std::string s = a.name;
              if (!a.bound_args.empty()) {
                s += "(";
                for (size_t i = 0; i < a.bound_args.size(); ++i) {
                  if (i) s += ", ";
                  s += expr(a.bound_args[i]);
                }
                s += ")";
              }
              line(os, ind + 2, s + ";");
            }
            line(os, ind + 1, "}");
            line(os, ind, "}");
          } else if constexpr (std::is_same_v<T, FunctionDecl>) {
            std::string head;
            if (n.pc_annotation) head += "@pc(" + *n.pc_annotation + ") ";
            if (n.is_action) head += "action " + n.name + "(";
            else head += "function " + type(n.ret) + " " + n.name + "(";
            bool cp_started = false;
            for (size_t i = 0; i < n.params.size(); ++i) {
              const Param& p = n.params[i];
              if (p.control_plane && !cp_started) {
                head += i ? "; " : "; ";
                cp_started = true;
              } else if (i) {
                head += ", ";
              }
              if (!p.control_plane)
                head += (p.dir == Dir::InOut ? "inout " : "in ");
              head += type(p.type) + " " + p.name;
            }
            line(os, ind, head + ")");
            stmt(os, n.body, ind);
          }
        },
        d->node);
  }

  std::string program(const Program& p) {
    std::ostringstream os;
    for (auto& d : p.top_decls) decl(os, d, 0);
    std::string head = "control " + p.control_name + "(";
    for (size_t i = 0; i < p.control_params.size(); ++i) {
      const Param& pr = p.control_params[i];
      if (i) head += ", ";
      head += (pr.dir == Dir::InOut ? "inout " : "in ");
      head += type(pr.type) + " " + pr.name;
    }
    line(os, 0, head + ") {");
    for (auto& d : p.decls) decl(os, d, 1);
    line(os, 1, "apply");
    stmt(os, p.apply, 1);
    line(os, 0, "}");
    return os.str();
  }

 private:
  static void line(std::ostringstream& os, int ind, const std::string& text) {
    for (int i = 0; i < ind; ++i) os << "  ";
    os << text << "\n";
  }

  const Lattice& lattice_;
};

} // namespace

std::string print_type(const TypePtr& t, const Lattice& lattice) {
  return Printer(lattice).type(t);
}

std::string print_expr(const ExprPtr& e, const Lattice& lattice) {
  return Printer(lattice).expr(e);
}

std::string print_program(const Program& p, const Lattice& lattice) {
  return Printer(lattice).program(p);
}

} // namespace p4ifc
