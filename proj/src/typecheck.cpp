// p4ifc/typecheck.cpp
#include "p4ifc/typecheck.hpp"

#include <algorithm>

namespace p4ifc {

namespace {

bool is_error(const TypePtr& t) { return t->base.kind == BaseType::Error; }

bool same_shape_scalar(const TypePtr& a, const TypePtr& b) {
  if (a->base.kind != b->base.kind) return false;
  if (a->base.kind == BaseType::Bit) return a->base.width == b->base.width;
  return true;
}

// The binary-op typing oracle: shape of the result, or null if undefined.
TypePtr binop_shape(BinOp op, const TypePtr& a, const TypePtr& b, SecurityLabel out_label) {
  auto kind = a->base.kind;
  if (kind != b->base.kind) return nullptr;
  bool same_bits = kind == BaseType::Bit && a->base.width == b->base.width;
  switch (op) {
    case BinOp::Add:
    case BinOp::Sub:
    case BinOp::Mul:
      if (kind == BaseType::Int) return int_type(out_label);
      if (same_bits) return bit_type(a->base.width, out_label);
      return nullptr;
    case BinOp::Eq:
    case BinOp::Ne:
      if (kind == BaseType::Bool || kind == BaseType::Int || same_bits)
        return bool_type(out_label);
      return nullptr;
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
      if (kind == BaseType::Int || same_bits) return bool_type(out_label);
      return nullptr;
    case BinOp::And:
    case BinOp::Or:
      if (kind == BaseType::Bool) return bool_type(out_label);
      return nullptr;
    case BinOp::BitAnd:
    case BinOp::BitOr:
    case BinOp::BitXor:
      if (same_bits) return bit_type(a->base.width, out_label);
      return nullptr;
  }
  return nullptr;
}

// `tbl.apply()` and `tbl()` both denote a table application.
const ExprPtr* table_apply_target(const ExprPtr& call_expr) {
  const auto* call = std::get_if<Call>(&call_expr->node);
  if (!call || !call->args.empty()) return nullptr;
  if (const auto* mem = std::get_if<Member>(&call->callee->node); mem && mem->field == "apply")
    return &mem->base;
  return &call->callee;
}

} // namespace

Checker::Checker(const Lattice& lattice, CheckOptions options)
    : lattice_(lattice), options_(options) {}

std::vector<Diagnostic> Checker::take_diagnostics() {
  auto out = std::move(diags_);
  diags_.clear();
  return out;
}

void Checker::diag(Span span, std::string rule, std::string msg) {
  if (silent_) return;
  diags_.push_back({span, std::move(rule), std::move(msg), std::nullopt, std::nullopt});
}

void Checker::flow(Span span, std::string rule, std::string msg, SecurityLabel found,
                   SecurityLabel required) {
  if (silent_) return;
  diags_.push_back({span, std::move(rule), std::move(msg), lattice_.name(found),
                    lattice_.name(required)});
}

TypePtr Checker::resolve_or_diag(const TypeDefs& defs, const TypePtr& t, Span span) {
  try {
    return resolve_type(defs, t);
  } catch (const CompileError& e) {
    diag(span, e.kind, e.what());
    return error_type();
  }
}

void Checker::require_data_type(const TypePtr& t, Span span) {
  switch (t->base.kind) {
    case BaseType::Table:
    case BaseType::Function:
    case BaseType::MatchKind:
      diag(span, "TypeMismatch", "expected a data type");
      return;
    case BaseType::Record:
    case BaseType::Header:
      for (auto& f : t->base.fields) require_data_type(f.type, span);
      return;
    case BaseType::Stack:
      require_data_type(t->base.elem, span);
      return;
    default:
      return;
  }
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

Checker::ExprResult Checker::synth(const TypeEnv& env, const TypeDefs& defs, SecurityLabel pc,
                                   const ExprPtr& e) {
  ExprResult result{error_type(), Dir::In};
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, BoolLit>) {
          result = {bool_type(lattice_.bottom()), Dir::In};
        } else if constexpr (std::is_same_v<T, IntLit>) {
          result = {int_type(lattice_.bottom()), Dir::In};
        } else if constexpr (std::is_same_v<T, BitLit>) {
          result = {bit_type(n.width, lattice_.bottom()), Dir::In};
        } else if constexpr (std::is_same_v<T, VarRef>) {
          auto it = env.vars.find(n.name);
          if (it == env.vars.end()) {
            diag(e->span, "UnknownVariable", "unknown variable '" + n.name + "'");
            return;
          }
          result = {it->second, Dir::InOut};
        } else if constexpr (std::is_same_v<T, Index>) {
          ExprResult arr = synth(env, defs, pc, n.array);
          ExprResult idx = synth(env, defs, pc, n.index);
          if (is_error(arr.type) || is_error(idx.type)) return;
          if (arr.type->base.kind != BaseType::Stack) {
            diag(e->span, "TypeMismatch", "indexed expression is not a stack");
            return;
          }
          if (idx.type->base.kind != BaseType::Bit || idx.type->base.width != 32) {
            diag(e->span, "TypeMismatch", "stack index must have type bit<32>");
            return;
          }
          SecurityLabel chi1 = arr.type->base.elem->label;
          SecurityLabel chi2 = idx.type->label;
          // Aggregate elements carry bottom outside; bound the index by the
          // element's outer label.
          if (!lattice_.leq(chi2, chi1))
            flow(e->span, "T-Index", "index label must flow below the element label",
                 chi2, chi1);
          result = {arr.type->base.elem, arr.dir};
        } else if constexpr (std::is_same_v<T, Binary>) {
          ExprResult l = synth(env, defs, pc, n.lhs);
          ExprResult r = synth(env, defs, pc, n.rhs);
          if (is_error(l.type) || is_error(r.type)) return;
          SecurityLabel out = lattice_.join(l.type->label, r.type->label);
          TypePtr shape = binop_shape(n.op, l.type, r.type, out);
          if (!shape) {
            diag(e->span, "TypeMismatch",
                 std::string("operator '") + binop_name(n.op) + "' is not defined on these operand types");
            return;
          }
          result = {shape, Dir::In};
        } else if constexpr (std::is_same_v<T, RecordLit>) {
          BaseType b;
          b.kind = BaseType::Record;
          for (auto& [name, fe] : n.fields) {
            ExprResult fr = synth(env, defs, pc, fe);
            require_data_type(fr.type, fe->span);
            b.fields.push_back({name, fr.type});
          }
          result = {make_type(std::move(b), lattice_.bottom()), Dir::In};
        } else if constexpr (std::is_same_v<T, Member>) {
          ExprResult base = synth(env, defs, pc, n.base);
          if (is_error(base.type)) return;
          const BaseType& bt = base.type->base;
          if (bt.kind != BaseType::Record && bt.kind != BaseType::Header) {
            diag(e->span, "TypeMismatch", "field projection on a non-record value");
            return;
          }
          for (auto& f : bt.fields) {
            if (f.name == n.field) {
              result = {f.type, base.dir};
              return;
            }
          }
          diag(e->span, "UnknownField",
               "no field '" + n.field + "' in the projected type");
        } else if constexpr (std::is_same_v<T, Call>) {
          ExprResult callee = synth(env, defs, pc, n.callee);
          if (is_error(callee.type)) return;
          if (callee.type->base.kind != BaseType::Function) {
            diag(e->span, "NotAFunction", "called expression is not a function");
            return;
          }
          const BaseType& fn = callee.type->base;
          if (fn.params.size() != n.args.size()) {
            diag(e->span, "ArityMismatch",
                 "expected " + std::to_string(fn.params.size()) + " arguments, got " +
                     std::to_string(n.args.size()));
            return;
          }
          for (size_t i = 0; i < n.args.size(); ++i) {
            const Param& p = fn.params[i];
            if (p.dir == Dir::InOut && !p.control_plane) {
              ExprResult arg = synth(env, defs, pc, n.args[i]);
              if (is_error(arg.type)) continue;
              if (arg.dir != Dir::InOut) {
                diag(n.args[i]->span, "NotAnLValue",
                     "inout argument must be a writable expression");
                continue;
              }
              if (!type_equal(arg.type, p.type)) {
                if (same_shape_scalar(arg.type, p.type))
                  flow(n.args[i]->span, "T-Call",
                       "inout argument label must equal the parameter label "
                       "(only read-only expressions may be relabeled)",
                       arg.type->label, p.type->label);
                else
                  diag(n.args[i]->span, "TypeMismatch",
                       "inout argument type does not match the parameter");
              }
            } else {
              check_against(env, defs, pc, n.args[i], p.type, "T-Call");
            }
          }
          if (!lattice_.leq(pc, fn.pc)) {
            if (pc_bound_sink_) pc_bound_sink_->push_back(fn.pc);
            flow(e->span, "T-Call", "function must not be called above its pc label",
                 pc, fn.pc);
          } else if (pc_bound_sink_) {
            pc_bound_sink_->push_back(fn.pc);
          }
          result = {fn.ret, Dir::In};
        }
      },
      e->node);
  return result;
}

bool Checker::check_against(const TypeEnv& env, const TypeDefs& defs, SecurityLabel pc,
                            const ExprPtr& e, const TypePtr& expected,
                            const std::string& rule) {
  if (is_error(expected)) return true;
  // A record literal may raise the labels of its in-direction fields, so it
  // is checked field-by-field against the expected record shape.
  if (const auto* lit = std::get_if<RecordLit>(&e->node);
      lit && expected->base.kind == BaseType::Record) {
    const auto& want = expected->base.fields;
    if (want.size() != lit->fields.size()) {
      diag(e->span, rule, "record literal has the wrong number of fields");
      return false;
    }
    bool ok = true;
    for (size_t i = 0; i < want.size(); ++i) {
      if (lit->fields[i].first != want[i].name) {
        diag(lit->fields[i].second->span, rule,
             "expected field '" + want[i].name + "', got '" + lit->fields[i].first + "'");
        ok = false;
        continue;
      }
      ok &= check_against(env, defs, pc, lit->fields[i].second, want[i].type, rule);
    }
    return ok;
  }

  ExprResult got = synth(env, defs, pc, e);
  if (is_error(got.type)) return true;
  if (type_equal(got.type, expected)) return true;
  if (same_shape_scalar(got.type, expected)) {
    if (lattice_.leq(got.type->label, expected->label)) return true;
    flow(e->span, rule, "value label must flow below the target label",
         got.type->label, expected->label);
    return false;
  }
  diag(e->span, rule == "T-VarInit" ? "InitializerTypeMismatch" : "TypeMismatch",
       "expression type does not match the expected type");
  return false;
}

Checker::ExprResult Checker::type_expression(const TypeEnv& env, const TypeDefs& defs,
                                             SecurityLabel pc, const ExprPtr& e) {
  return synth(env, defs, pc, e);
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

TypeEnv Checker::stmt(const TypeEnv& env, TypeDefs& defs, SecurityLabel pc, const StmtPtr& s) {
  if (options_.collect_contexts && !silent_) contexts_.push_back({s, env, defs});
  TypeEnv out = env;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, CallStmt>) {
          if (const ExprPtr* target = table_apply_target(n.call)) {
            ExprResult t = synth(env, defs, pc, *target);
            if (t.type->base.kind == BaseType::Table) {
              SecurityLabel pc_tbl = t.type->base.pc;
              if (!lattice_.leq(pc, pc_tbl)) {
                if (pc_bound_sink_) pc_bound_sink_->push_back(pc_tbl);
                flow(s->span, "T-TblCall",
                     "table must not be applied above its pc label", pc, pc_tbl);
              } else if (pc_bound_sink_) {
                pc_bound_sink_->push_back(pc_tbl);
              }
              return;
            }
            if (is_error(t.type)) return;
            // Not a table: fall through to an ordinary call statement below,
            // unless the apply form was used explicitly.
            if (std::get_if<Member>(&std::get<Call>(n.call->node).callee->node)) {
              diag(s->span, "TypeMismatch", "'.apply()' on a non-table value");
              return;
            }
          }
          synth(env, defs, pc, n.call);
        } else if constexpr (std::is_same_v<T, Assign>) {
          ExprResult lhs = synth(env, defs, pc, n.target);
          if (is_error(lhs.type)) {
            synth(env, defs, pc, n.value);
            return;
          }
          if (lhs.dir != Dir::InOut) {
            diag(s->span, "NotAssignable", "assignment target is read-only");
            return;
          }
          SecurityLabel chi1 = lhs.type->label;
          if (pc_bound_sink_) pc_bound_sink_->push_back(chi1);
          if (!lattice_.leq(pc, chi1))
            flow(s->span, "T-Assign",
                 "assignment under a pc above the target label", pc, chi1);
          check_against(env, defs, pc, n.value, lhs.type, "T-Assign");
        } else if constexpr (std::is_same_v<T, If>) {
          ExprResult cond = synth(env, defs, pc, n.cond);
          SecurityLabel chi1 = lattice_.bottom();
          if (!is_error(cond.type)) {
            if (cond.type->base.kind != BaseType::Bool)
              diag(n.cond->span, "TypeMismatch", "conditional guard must be bool");
            else
              chi1 = cond.type->label;
          }
          SecurityLabel branch_pc = lattice_.join(chi1, pc);
          TypeDefs then_defs = defs;
          stmt(env, then_defs, branch_pc, n.then_branch);
          TypeDefs else_defs = defs;
          stmt(env, else_defs, branch_pc, n.else_branch);
          // T-Cond restores Gamma.
        } else if constexpr (std::is_same_v<T, Block>) {
          TypeDefs local = defs;
          for (auto& inner : n.stmts) out = stmt(out, local, pc, inner);
        } else if constexpr (std::is_same_v<T, Exit>) {
          if (pc_bound_sink_) pc_bound_sink_->push_back(lattice_.bottom());
          if (pc != lattice_.bottom())
            flow(s->span, "T-Exit", "exit is well-typed only at the bottom pc", pc,
                 lattice_.bottom());
        } else if constexpr (std::is_same_v<T, Return>) {
          if (pc_bound_sink_) pc_bound_sink_->push_back(lattice_.bottom());
          if (pc != lattice_.bottom())
            flow(s->span, "T-Return", "return is well-typed only at the bottom pc", pc,
                 lattice_.bottom());
          auto it = env.vars.find("return");
          if (it == env.vars.end()) {
            diag(s->span, "ReturnOutsideFunction", "return outside a function body");
            return;
          }
          const TypePtr& ret = it->second;
          if (n.value) {
            if (!check_against(env, defs, pc, *n.value, ret, "T-Return"))
              return;
          } else if (ret->base.kind != BaseType::Unit) {
            diag(s->span, "ReturnTypeMismatch", "missing return value");
          }
        } else if constexpr (std::is_same_v<T, DeclStmt>) {
          auto [env2, defs2] = decl(env, defs, pc, n.decl);
          out = std::move(env2);
          defs = std::move(defs2);
        }
      },
      s->node);
  return out;
}

TypeEnv Checker::type_statement(const TypeEnv& env, TypeDefs defs, SecurityLabel pc,
                                const StmtPtr& s) {
  return stmt(env, defs, pc, s);
}

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

SecurityLabel Checker::infer_fn_pc(const TypeEnv& env, const TypeDefs& defs,
                                   const StmtPtr& body) {
  std::vector<SecurityLabel> bounds;
  auto* saved_sink = pc_bound_sink_;
  bool saved_silent = silent_;
  pc_bound_sink_ = &bounds;
  silent_ = true;
  TypeDefs local = defs;
  stmt(env, local, lattice_.bottom(), body);
  pc_bound_sink_ = saved_sink;
  silent_ = saved_silent;

  SecurityLabel pc_fn = lattice_.top();
  for (SecurityLabel b : bounds) pc_fn = lattice_.meet(pc_fn, b);
  return pc_fn;
}

std::pair<TypeEnv, TypeDefs> Checker::decl(const TypeEnv& env, TypeDefs defs,
                                           SecurityLabel pc, const DeclPtr& d) {
  TypeEnv out_env = env;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarDecl>) {
          TypePtr resolved = resolve_or_diag(defs, n.type, d->span);
          require_data_type(resolved, d->span);
          if (env.vars.count(n.name))
            diag(d->span, "DuplicateName", "redeclaration of '" + n.name + "'");
          if (n.init) check_against(env, defs, pc, *n.init, resolved, "T-VarInit");
          out_env.vars[n.name] = resolved;
        } else if constexpr (std::is_same_v<T, TypedefDecl>) {
          if (defs.types.count(n.name))
            diag(d->span, "DuplicateName", "redeclaration of type '" + n.name + "'");
          defs.types[n.name] = n.type;
          // Validate that the definition resolves (catches cycles early).
          resolve_or_diag(defs, n.type, d->span);
        } else if constexpr (std::is_same_v<T, MatchKindDecl>) {
          for (auto& m : n.members) defs.match_kind_members.insert(m);
        } else if constexpr (std::is_same_v<T, TableDecl>) {
          TableSig sig;
          // Keys synthesize silently first to learn their labels; the real
          // check happens below at pc_tbl, once it is known.
          std::vector<SecurityLabel> key_labels;
          bool saved_silent = silent_;
          silent_ = true;
          for (auto& k : n.keys) {
            ExprResult kt = synth(env, defs, lattice_.bottom(), k.expr);
            key_labels.push_back(kt.type->label);
            sig.keys.push_back({kt.type, k.match_kind});
          }
          silent_ = saved_silent;
          for (auto& k : n.keys) {
            if (!defs.match_kind_members.count(k.match_kind))
              diag(k.span, "UnknownMatchKind",
                   "'" + k.match_kind + "' is not a declared match_kind");
          }
          // Actions and the pc chain.
          SecurityLabel pc_a = lattice_.top();
          std::vector<const BaseType*> action_types;
          for (auto& a : n.actions) {
            auto it = env.vars.find(a.name);
            if (it == env.vars.end() || it->second->base.kind != BaseType::Function) {
              diag(a.span, "NotAnAction", "'" + a.name + "' is not a declared action");
              action_types.push_back(nullptr);
              continue;
            }
            const BaseType& fn = it->second->base;
            if (fn.ret->base.kind != BaseType::Unit) {
              diag(a.span, "NotAnAction", "'" + a.name + "' does not return unit");
              action_types.push_back(nullptr);
              continue;
            }
            action_types.push_back(&fn);
            pc_a = lattice_.meet(pc_a, fn.pc);
          }
          // pc_tbl is the largest label satisfying the declaration chain:
          // the meet of the actions' pc labels.
          SecurityLabel pc_tbl = pc_a;
          for (size_t j = 0; j < n.actions.size(); ++j) {
            const BaseType* fn = action_types[j];
            if (!fn) continue;
            size_t directional = 0;
            while (directional < fn->params.size() && !fn->params[directional].control_plane)
              ++directional;
            TableActionSig asig;
            asig.name = n.actions[j].name;
            asig.bound_args = n.actions[j].bound_args.size();
            for (size_t i = directional; i < fn->params.size(); ++i)
              asig.control_plane_params.push_back(fn->params[i].type);
            sig.actions.push_back(std::move(asig));
            if (n.actions[j].bound_args.size() != directional) {
              diag(n.actions[j].span, "ArityMismatch",
                   "action '" + n.actions[j].name + "' takes " +
                       std::to_string(directional) + " bound arguments");
              continue;
            }
            for (size_t i = 0; i < directional; ++i) {
              const Param& p = fn->params[i];
              const ExprPtr& arg = n.actions[j].bound_args[i];
              if (p.dir == Dir::InOut) {
                ExprResult ar = synth(env, defs, pc_tbl, arg);
                if (is_error(ar.type)) continue;
                if (ar.dir != Dir::InOut)
                  diag(arg->span, "NotAnLValue",
                       "inout bound argument must be a writable expression");
                else if (!type_equal(ar.type, p.type))
                  diag(arg->span, "TypeMismatch",
                       "inout bound argument type does not match the parameter");
              } else {
                check_against(env, defs, pc_tbl, arg, p.type, "T-TblDecl");
              }
            }
          }
          if (!options_.skip_table_label_checks) {
            bool key_check_failed = false;
            for (size_t k = 0; k < n.keys.size(); ++k) {
              if (!lattice_.leq(key_labels[k], pc_tbl)) {
                flow(n.keys[k].span, "T-TblDecl",
                     "key label must flow below every action's pc label",
                     key_labels[k], pc_tbl);
                key_check_failed = true;
              }
            }
            // The declaration is already rejected; bind the table
            // optimistically so applications do not cascade.
            if (key_check_failed) pc_tbl = lattice_.top();
          }
          // Re-check key expressions at pc_tbl, as the rule states them.
          for (auto& k : n.keys) synth(env, defs, pc_tbl, k.expr);
          if (env.vars.count(n.name))
            diag(d->span, "DuplicateName", "redeclaration of '" + n.name + "'");
          BaseType tbl;
          tbl.kind = BaseType::Table;
          tbl.pc = pc_tbl;
          out_env.vars[n.name] = make_type(std::move(tbl), lattice_.bottom());
          if (!silent_) sigs_.tables[n.name] = std::move(sig);
        } else if constexpr (std::is_same_v<T, FunctionDecl>) {
          // Resolve parameter and return types.
          std::vector<Param> params = n.params;
          for (auto& p : params) {
            p.type = resolve_or_diag(defs, p.type, p.span);
            require_data_type(p.type, p.span);
          }
          TypePtr ret = resolve_or_diag(defs, n.ret, d->span);
          require_data_type(ret, d->span);

          TypeEnv body_env = env;
          body_env.vars.erase(n.name);  // no recursion
          for (auto& p : params) body_env.vars[p.name] = p.type;
          body_env.vars["return"] = ret;

          SecurityLabel pc_fn;
          if (n.pc_annotation) {
            if (!lattice_.has_label(*n.pc_annotation)) {
              diag(d->span, "UnknownLabel",
                   "label '" + *n.pc_annotation + "' is not a lattice element");
              pc_fn = lattice_.bottom();
            } else {
              pc_fn = lattice_.label(*n.pc_annotation);
            }
          } else {
            pc_fn = infer_fn_pc(body_env, defs, n.body);
          }
          TypeDefs body_defs = defs;
          stmt(body_env, body_defs, pc_fn, n.body);

          if (env.vars.count(n.name))
            diag(d->span, "DuplicateName", "redeclaration of '" + n.name + "'");
          BaseType fn;
          fn.kind = BaseType::Function;
          fn.params = std::move(params);
          fn.ret = ret;
          fn.pc = pc_fn;
          out_env.vars[n.name] = make_type(std::move(fn), lattice_.bottom());
        }
      },
      d->node);
  return {std::move(out_env), std::move(defs)};
}

std::pair<TypeEnv, TypeDefs> Checker::type_declaration(const TypeEnv& env, const TypeDefs& defs,
                                                       SecurityLabel pc, const DeclPtr& d) {
  return decl(env, defs, pc, d);
}

// ---------------------------------------------------------------------------
// Whole programs
// ---------------------------------------------------------------------------

CheckResult check_program_full(const Program& p, const Lattice& lattice, SecurityLabel pc,
                               const CheckOptions& options) {
  Checker checker(lattice, options);
  TypeEnv env;
  TypeDefs defs;
  defs.lattice = &lattice;

  for (auto& d : p.top_decls) std::tie(env, defs) = checker.decl(env, defs, pc, d);

  for (auto& param : p.control_params) {
    TypePtr resolved = checker.resolve_or_diag(defs, param.type, param.span);
    checker.require_data_type(resolved, param.span);
    if (env.vars.count(param.name))
      checker.diag(param.span, "DuplicateName",
                   "duplicate control parameter '" + param.name + "'");
    env.vars[param.name] = resolved;
  }

  for (auto& d : p.decls) std::tie(env, defs) = checker.decl(env, defs, pc, d);
  TypeEnv final_env = checker.stmt(env, defs, pc, p.apply);

  CheckResult result;
  result.final_env = std::move(final_env);
  result.verdict.diagnostics = checker.take_diagnostics();
  std::stable_sort(result.verdict.diagnostics.begin(), result.verdict.diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.span.line, a.span.col) <
                            std::tie(b.span.line, b.span.col);
                   });
  result.verdict.accepted = result.verdict.diagnostics.empty();
  result.sigs = checker.signatures();
  result.top_env = std::move(env);
  result.top_defs = std::move(defs);
  result.contexts = std::move(checker.contexts());
  return result;
}

Verdict check_program(const Program& p, const Lattice& lattice, SecurityLabel pc) {
  return check_program_full(p, lattice, pc).verdict;
}

} // namespace p4ifc
