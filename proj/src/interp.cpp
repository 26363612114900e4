// p4ifc/interp.cpp
#include "p4ifc/interp.hpp"

#include <cctype>
#include <sstream>

namespace p4ifc {

namespace {

unsigned __int128 mask_width(unsigned __int128 v, uint32_t width) {
  if (width >= 128) return v;
  return v & ((static_cast<unsigned __int128>(1) << width) - 1);
}

// The deterministic binary-operation semantics. Int is 64-bit signed with
// wraparound; bit<n> arithmetic is mod 2^n.
Value apply_binop(BinOp op, const Value& a, const Value& b) {
  auto bad = []() -> Value {
    throw RuntimeError("WidthMismatch", "binary operation on incompatible values");
  };
  if (const auto* x = std::get_if<IntV>(&a.v)) {
    const auto* y = std::get_if<IntV>(&b.v);
    if (!y) return bad();
    auto ux = static_cast<uint64_t>(x->v);
    auto uy = static_cast<uint64_t>(y->v);
    switch (op) {
      case BinOp::Add: return {IntV{static_cast<int64_t>(ux + uy)}};
      case BinOp::Sub: return {IntV{static_cast<int64_t>(ux - uy)}};
      case BinOp::Mul: return {IntV{static_cast<int64_t>(ux * uy)}};
      case BinOp::Eq: return {BoolV{x->v == y->v}};
      case BinOp::Ne: return {BoolV{x->v != y->v}};
      case BinOp::Lt: return {BoolV{x->v < y->v}};
      case BinOp::Le: return {BoolV{x->v <= y->v}};
      case BinOp::Gt: return {BoolV{x->v > y->v}};
      case BinOp::Ge: return {BoolV{x->v >= y->v}};
      default: return bad();
    }
  }
  if (const auto* x = std::get_if<BitsV>(&a.v)) {
    const auto* y = std::get_if<BitsV>(&b.v);
    if (!y || x->width != y->width) return bad();
    uint32_t w = x->width;
    switch (op) {
      case BinOp::Add: return {BitsV{mask_width(x->v + y->v, w), w}};
      case BinOp::Sub: return {BitsV{mask_width(x->v - y->v, w), w}};
      case BinOp::Mul: return {BitsV{mask_width(x->v * y->v, w), w}};
      case BinOp::Eq: return {BoolV{x->v == y->v}};
      case BinOp::Ne: return {BoolV{x->v != y->v}};
      case BinOp::Lt: return {BoolV{x->v < y->v}};
      case BinOp::Le: return {BoolV{x->v <= y->v}};
      case BinOp::Gt: return {BoolV{x->v > y->v}};
      case BinOp::Ge: return {BoolV{x->v >= y->v}};
      case BinOp::BitAnd: return {BitsV{x->v & y->v, w}};
      case BinOp::BitOr: return {BitsV{x->v | y->v, w}};
      case BinOp::BitXor: return {BitsV{x->v ^ y->v, w}};
      default: return bad();
    }
  }
  if (const auto* x = std::get_if<BoolV>(&a.v)) {
    const auto* y = std::get_if<BoolV>(&b.v);
    if (!y) return bad();
    switch (op) {
      case BinOp::Eq: return {BoolV{x->v == y->v}};
      case BinOp::Ne: return {BoolV{x->v != y->v}};
      case BinOp::And: return {BoolV{x->v && y->v}};
      case BinOp::Or: return {BoolV{x->v || y->v}};
      default: return bad();
    }
  }
  return bad();
}

const ExprPtr* table_apply_target(const ExprPtr& call_expr) {
  const auto* call = std::get_if<Call>(&call_expr->node);
  if (!call || !call->args.empty()) return nullptr;
  if (const auto* mem = std::get_if<Member>(&call->callee->node); mem && mem->field == "apply")
    return &mem->base;
  return nullptr;
}

Value* navigate(Value& v, const LValue::Access& acc) {
  if (acc.kind == LValue::Access::Field) {
    if (auto* r = std::get_if<RecordV>(&v.v)) {
      for (auto& [name, fv] : r->fields)
        if (name == acc.field) return &fv;
    } else if (auto* h = std::get_if<HeaderV>(&v.v)) {
      for (auto& [name, fv] : h->fields)
        if (name == acc.field) return &fv;
    }
    throw RuntimeError("UnboundVariable", "no field '" + acc.field + "' in value");
  }
  auto* s = std::get_if<StackV>(&v.v);
  if (!s) throw RuntimeError("WidthMismatch", "indexing a non-stack value");
  if (acc.index >= s->elems.size()) return nullptr;  // out of bounds
  return &s->elems[acc.index];
}

} // namespace

struct Evaluator::DepthGuard {
  explicit DepthGuard(Evaluator& ev) : ev_(ev) {
    if (++ev_.depth_ > kDepthLimit)
      throw RuntimeError("DepthLimit", "evaluation depth limit exceeded");
  }
  ~DepthGuard() { --ev_.depth_; }
  Evaluator& ev_;
};

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

Value Evaluator::eval_expression(const TypeDefs& defs, Store& store, const Env& env,
                                 const ExprPtr& e) {
  DepthGuard guard(*this);
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, BoolLit>) {
          return {BoolV{n.value}};
        } else if constexpr (std::is_same_v<T, IntLit>) {
          return {IntV{n.value}};
        } else if constexpr (std::is_same_v<T, BitLit>) {
          return {BitsV{n.value, n.width}};
        } else if constexpr (std::is_same_v<T, VarRef>) {
          auto it = env.find(n.name);
          if (it == env.end())
            throw RuntimeError("UnboundVariable", "unbound variable '" + n.name + "'");
          return store.at(it->second);
        } else if constexpr (std::is_same_v<T, Index>) {
          Value arr = eval_expression(defs, store, env, n.array);
          Value idx = eval_expression(defs, store, env, n.index);
          const auto* s = std::get_if<StackV>(&arr.v);
          if (!s) throw RuntimeError("WidthMismatch", "indexing a non-stack value");
          const auto* i = std::get_if<BitsV>(&idx.v);
          if (!i) throw RuntimeError("WidthMismatch", "stack index is not a bit value");
          if (i->v < s->elems.size()) return s->elems[static_cast<size_t>(i->v)];
          return havoc_value(defs, s->elem_type);
        } else if constexpr (std::is_same_v<T, Binary>) {
          Value l = eval_expression(defs, store, env, n.lhs);
          Value r = eval_expression(defs, store, env, n.rhs);
          return apply_binop(n.op, l, r);
        } else if constexpr (std::is_same_v<T, RecordLit>) {
          RecordV r;
          for (auto& [name, fe] : n.fields)
            r.fields.emplace_back(name, eval_expression(defs, store, env, fe));
          return {std::move(r)};
        } else if constexpr (std::is_same_v<T, Member>) {
          Value base = eval_expression(defs, store, env, n.base);
          LValue::Access acc{LValue::Access::Field, n.field, 0};
          Value* f = navigate(base, acc);
          if (!f) throw RuntimeError("UnboundVariable", "no field '" + n.field + "'");
          return *f;
        } else if constexpr (std::is_same_v<T, Call>) {
          return eval_call(defs, store, env, n, e->span);
        }
      },
      e->node);
}

Value Evaluator::eval_call(const TypeDefs& defs, Store& store, const Env& env,
                           const Call& call, Span span) {
  Value callee = eval_expression(defs, store, env, call.callee);
  const auto* clos = std::get_if<ClosV>(&callee.v);
  if (!clos) throw RuntimeError("NotAClosure", "called value is not a function");
  if (clos->params.size() != call.args.size())
    throw RuntimeError("NotAClosure", "argument count mismatch");
  std::vector<CopyBinding> bindings;
  for (size_t i = 0; i < clos->params.size(); ++i) {
    const Param& p = clos->params[i];
    CopyBinding b;
    b.mode = (p.dir == Dir::InOut && !p.control_plane) ? CopyMode::InOut : CopyMode::In;
    b.name = p.name;
    b.type = p.type;
    b.arg = call.args[i];
    bindings.push_back(std::move(b));
  }
  (void)span;
  return invoke_closure(defs, store, env, *clos, bindings);
}

Value Evaluator::invoke_closure(const TypeDefs& defs, Store& store, const Env& caller_env,
                                const ClosV& clos, const std::vector<CopyBinding>& bindings) {
  auto [fragment, write_backs] = copy_in_out(defs, store, caller_env, bindings);

  Env body_env = clos.captured;
  for (auto& [name, loc] : fragment) body_env[name] = loc;

  TypeDefs body_defs = defs;
  Signal sig = eval_statement(body_defs, store, body_env, clos.body);
  if (sig.kind == Signal::Exit) throw ExitUnwind{};

  for (auto& wb : write_backs)
    write_lvalue(store, caller_env, wb.lval, store.at(wb.loc));

  if (sig.kind == Signal::Ret) return sig.value;
  return {UnitV{}};
}

// ---------------------------------------------------------------------------
// L-values
// ---------------------------------------------------------------------------

LValue Evaluator::eval_lvalue(const TypeDefs& defs, Store& store, const Env& env,
                              const ExprPtr& e) {
  DepthGuard guard(*this);
  if (const auto* var = std::get_if<VarRef>(&e->node)) {
    if (!env.count(var->name))
      throw RuntimeError("UnboundVariable", "unbound variable '" + var->name + "'");
    return {var->name, {}};
  }
  if (const auto* mem = std::get_if<Member>(&e->node)) {
    LValue lv = eval_lvalue(defs, store, env, mem->base);
    lv.path.push_back({LValue::Access::Field, mem->field, 0});
    return lv;
  }
  if (const auto* idx = std::get_if<Index>(&e->node)) {
    LValue lv = eval_lvalue(defs, store, env, idx->array);
    Value i = eval_expression(defs, store, env, idx->index);
    const auto* bits = std::get_if<BitsV>(&i.v);
    if (!bits) throw RuntimeError("WidthMismatch", "stack index is not a bit value");
    lv.path.push_back({LValue::Access::Index, "", static_cast<uint64_t>(bits->v)});
    return lv;
  }
  throw RuntimeError("NotAnLValue", "expression is not a write target");
}

Value Evaluator::read_lvalue(const Store& store, const Env& env, const LValue& lv) const {
  auto it = env.find(lv.base);
  if (it == env.end())
    throw RuntimeError("UnboundVariable", "unbound variable '" + lv.base + "'");
  Value v = store.at(it->second);
  Value* cur = &v;
  for (auto& acc : lv.path) {
    Value* next = navigate(*cur, acc);
    if (!next) {
      // Out-of-bounds read through an l-value path.
      const auto* s = std::get_if<StackV>(&cur->v);
      TypeDefs empty;
      return havoc_value(empty, s->elem_type);
    }
    cur = next;
  }
  return *cur;
}

void Evaluator::write_lvalue(Store& store, const Env& env, const LValue& lv, Value v) {
  auto it = env.find(lv.base);
  if (it == env.end())
    throw RuntimeError("UnboundVariable", "unbound variable '" + lv.base + "'");
  Loc loc = it->second;
  // Rebuild the aggregate functionally; only this one location changes.
  Value updated = store.at(loc);
  Value* cur = &updated;
  for (auto& acc : lv.path) {
    Value* next = navigate(*cur, acc);
    if (!next) return;  // write through an out-of-bounds index is a no-op
    cur = next;
  }
  *cur = std::move(v);
  store.at(loc) = std::move(updated);
}

// ---------------------------------------------------------------------------
// Copy-in / copy-out
// ---------------------------------------------------------------------------

std::pair<Env, std::vector<WriteBack>> Evaluator::copy_in_out(
    const TypeDefs& defs, Store& store, const Env& env,
    const std::vector<CopyBinding>& bindings) {
  Env fragment;
  std::vector<WriteBack> write_backs;
  for (auto& b : bindings) {
    switch (b.mode) {
      case CopyMode::In: {
        Value v = b.precomputed ? *b.precomputed : eval_expression(defs, store, env, b.arg);
        fragment[b.name] = store.alloc(std::move(v), b.type);
        break;
      }
      case CopyMode::Out: {
        LValue lv = eval_lvalue(defs, store, env, b.arg);
        Loc loc = store.alloc(init_value(defs, b.type), b.type);
        fragment[b.name] = loc;
        write_backs.push_back({std::move(lv), loc});
        break;
      }
      case CopyMode::InOut: {
        LValue lv = eval_lvalue(defs, store, env, b.arg);
        Value v = read_lvalue(store, env, lv);
        Loc loc = store.alloc(std::move(v), b.type);
        fragment[b.name] = loc;
        write_backs.push_back({std::move(lv), loc});
        break;
      }
    }
  }
  return {std::move(fragment), std::move(write_backs)};
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

Signal Evaluator::eval_statement(TypeDefs& defs, Store& store, Env& env,
                                 const StmtPtr& s) {
  DepthGuard guard(*this);
  Signal sig = Signal::cont();
  try {
    sig = std::visit(
        [&](const auto& n) -> Signal {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, CallStmt>) {
            if (const ExprPtr* target = table_apply_target(n.call))
              return apply_table(defs, store, env, *target);
            const auto& call = std::get<Call>(n.call->node);
            if (call.args.empty()) {
              // `tbl()` form: a nullary call on a table value applies it.
              if (const auto* var = std::get_if<VarRef>(&call.callee->node)) {
                auto it = env.find(var->name);
                if (it != env.end() && std::holds_alternative<TableV>(store.at(it->second).v))
                  return apply_table(defs, store, env, call.callee);
              }
            }
            eval_expression(defs, store, env, n.call);  // value discarded
            return Signal::cont();
          } else if constexpr (std::is_same_v<T, Assign>) {
            LValue lv = eval_lvalue(defs, store, env, n.target);
            Value v = eval_expression(defs, store, env, n.value);
            write_lvalue(store, env, lv, std::move(v));
            return Signal::cont();
          } else if constexpr (std::is_same_v<T, If>) {
            Value guard_v = eval_expression(defs, store, env, n.cond);
            const auto* b = std::get_if<BoolV>(&guard_v.v);
            if (!b) throw RuntimeError("WidthMismatch", "conditional guard is not a bool");
            Env branch_env = env;  // the conditional restores the environment
            TypeDefs branch_defs = defs;
            Signal inner = eval_statement(branch_defs, store, branch_env,
                                          b->v ? n.then_branch : n.else_branch);
            return inner;
          } else if constexpr (std::is_same_v<T, Block>) {
            TypeDefs local = defs;
            for (auto& inner : n.stmts) {
              Signal sig2 = eval_statement(local, store, env, inner);
              if (sig2.kind != Signal::Cont) return sig2;  // short-circuit
            }
            return Signal::cont();
          } else if constexpr (std::is_same_v<T, Exit>) {
            return Signal::exit();
          } else if constexpr (std::is_same_v<T, Return>) {
            if (n.value) return Signal::ret(eval_expression(defs, store, env, *n.value));
            return Signal::ret({UnitV{}});
          } else if constexpr (std::is_same_v<T, DeclStmt>) {
            return eval_declaration(defs, store, env, n.decl);
          }
        },
        s->node);
  } catch (const ExitUnwind&) {
    sig = Signal::exit();
  }
  if (trace) trace(*s, store, env);
  return sig;
}

Signal Evaluator::apply_table(const TypeDefs& defs, Store& store, const Env& env,
                              const ExprPtr& table_expr) {
  Value tv = eval_expression(defs, store, env, table_expr);
  const auto* table = std::get_if<TableV>(&tv.v);
  if (!table) throw RuntimeError("NotAClosure", "applied value is not a table");
  const auto& decl = std::get<TableDecl>(table->decl->node);

  auto sig_it = sigs_.tables.find(table->name);
  if (sig_it == sigs_.tables.end())
    throw RuntimeError("UnboundVariable", "no signature for table '" + table->name + "'");
  const TableSig& sig = sig_it->second;

  // Keys evaluate in the table's captured environment.
  Env closure_env = table->captured;
  std::vector<Value> key_values;
  for (auto& k : decl.keys)
    key_values.push_back(eval_expression(defs, store, closure_env, k.expr));

  auto matched = table_match(cp_, table->name, sig.keys, key_values);
  if (!matched) return Signal::exit();  // match failure

  const ActionRef* ref = nullptr;
  for (auto& a : decl.actions)
    if (a.name == matched->action) ref = &a;
  if (!ref)
    throw RuntimeError("UnboundVariable",
                       "matched action '" + matched->action + "' not in the table");

  auto clos_it = closure_env.find(ref->name);
  if (clos_it == closure_env.end())
    throw RuntimeError("UnboundVariable", "unbound action '" + ref->name + "'");
  Value clos_v = store.at(clos_it->second);
  const auto* clos = std::get_if<ClosV>(&clos_v.v);
  if (!clos) throw RuntimeError("NotAClosure", "'" + ref->name + "' is not an action");

  // Directional parameters take the declaration-time bound arguments;
  // control-plane parameters take the matched entry's values.
  std::vector<CopyBinding> bindings;
  size_t bound_i = 0, cp_i = 0;
  for (const Param& p : clos->params) {
    CopyBinding b;
    b.name = p.name;
    b.type = p.type;
    if (p.control_plane) {
      if (cp_i >= matched->args.size())
        throw RuntimeError("NotAClosure", "missing control-plane argument");
      b.mode = CopyMode::In;
      b.precomputed = matched->args[cp_i++];
    } else {
      if (bound_i >= ref->bound_args.size())
        throw RuntimeError("NotAClosure", "missing bound argument");
      b.mode = p.dir == Dir::InOut ? CopyMode::InOut : CopyMode::In;
      b.arg = ref->bound_args[bound_i++];
    }
    bindings.push_back(std::move(b));
  }

  try {
    // Bound arguments evaluate in the table's captured environment.
    invoke_closure(defs, store, closure_env, *clos, bindings);
  } catch (const ExitUnwind&) {
    return Signal::exit();
  }
  return Signal::cont();
}

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

Signal Evaluator::eval_declaration(TypeDefs& defs, Store& store, Env& env, const DeclPtr& d) {
  DepthGuard guard(*this);
  try {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, VarDecl>) {
            TypePtr resolved = resolve_type(defs, n.type);
            Value v = n.init ? eval_expression(defs, store, env, *n.init)
                             : init_value(defs, resolved);
            env[n.name] = store.alloc(std::move(v), resolved);
          } else if constexpr (std::is_same_v<T, TypedefDecl>) {
            defs.types[n.name] = n.type;
          } else if constexpr (std::is_same_v<T, MatchKindDecl>) {
            for (auto& m : n.members) defs.match_kind_members.insert(m);
          } else if constexpr (std::is_same_v<T, TableDecl>) {
            BaseType shape;
            shape.kind = BaseType::Table;
            shape.pc = lattice_.bottom();
            TypePtr t = make_type(std::move(shape), lattice_.bottom());
            Loc loc = store.alloc({UnitV{}}, t);
            TableV tv;
            tv.self = loc;
            tv.name = n.name;
            tv.captured = env;  // capture the current environment
            tv.decl = d;
            store.at(loc) = {std::move(tv)};
            env[n.name] = loc;
          } else if constexpr (std::is_same_v<T, FunctionDecl>) {
            ClosV clos;
            clos.captured = env;
            for (const Param& p : n.params) {
              Param rp = p;
              rp.type = resolve_type(defs, p.type);
              clos.params.push_back(std::move(rp));
            }
            clos.ret = resolve_type(defs, n.ret);
            clos.body = n.body;
            BaseType shape;
            shape.kind = BaseType::Function;
            shape.params = clos.params;
            shape.ret = clos.ret;
            shape.pc = lattice_.bottom();
            TypePtr t = make_type(std::move(shape), lattice_.bottom());
            env[n.name] = store.alloc({std::move(clos)}, t);
          }
        },
        d->node);
  } catch (const ExitUnwind&) {
    return Signal::exit();
  }
  return Signal::cont();
}

// ---------------------------------------------------------------------------
// Whole-program runs
// ---------------------------------------------------------------------------

Runner::Runner(const Program& program, const ControlPlane& cp, const Signatures& sigs,
               const Lattice& lattice)
    : program_(program), cp_(cp), sigs_(sigs), lattice_(lattice) {}

MachineState Runner::prepare(const StoreSpec& spec, Signal* decl_signal) const {
  if (decl_signal) *decl_signal = Signal::cont();
  Evaluator ev(cp_, sigs_, lattice_);
  MachineState state;
  state.defs.lattice = &lattice_;

  for (auto& d : program_.top_decls)
    ev.eval_declaration(state.defs, state.store, state.env, d);

  for (auto& param : program_.control_params) {
    TypePtr resolved = resolve_type(state.defs, param.type);
    state.env[param.name] = state.store.alloc(init_value(state.defs, resolved), resolved);
  }

  // Store-spec overrides apply to the control parameters.
  for (auto& assign : spec.assigns) {
    LValue lv;
    size_t pos = 0;
    const std::string& path = assign.path;
    auto ident = [&]() {
      size_t start = pos;
      while (pos < path.size() &&
             (std::isalnum(static_cast<unsigned char>(path[pos])) || path[pos] == '_'))
        ++pos;
      return path.substr(start, pos - start);
    };
    lv.base = ident();
    while (pos < path.size()) {
      if (path[pos] == '.') {
        ++pos;
        lv.path.push_back({LValue::Access::Field, ident(), 0});
      } else if (path[pos] == '[') {
        ++pos;
        uint64_t idx = std::stoull(ident());
        ++pos;  // ']'
        lv.path.push_back({LValue::Access::Index, "", idx});
      } else {
        throw CompileError("ParseError", {}, "bad store path '" + path + "'");
      }
    }
    ev.write_lvalue(state.store, state.env, lv, assign.value);
  }

  for (auto& d : program_.decls) {
    Signal sig = ev.eval_declaration(state.defs, state.store, state.env, d);
    if (sig.kind != Signal::Cont) {
      if (decl_signal) *decl_signal = sig;
      break;
    }
  }
  return state;
}

Signal Runner::run_apply(MachineState& state, const StatementTrace& trace) const {
  Evaluator ev(cp_, sigs_, lattice_);
  ev.trace = trace;
  return ev.eval_statement(state.defs, state.store, state.env, program_.apply);
}

RunResult Runner::run(const StoreSpec& spec) const {
  Signal decl_signal = Signal::cont();
  RunResult result{prepare(spec, &decl_signal), Signal::cont()};
  result.sig = decl_signal.kind == Signal::Cont ? run_apply(result.state) : decl_signal;
  return result;
}

std::string Runner::dump(const MachineState& state, const Signal& sig) {
  std::ostringstream os;
  for (auto& [name, loc] : state.env) {
    const Value& v = state.store.at(loc);
    if (v.is_closure()) continue;
    os << name << " = " << print_value(v) << "\n";
  }
  os << sig.name();
  if (sig.kind == Signal::Ret) os << " " << print_value(sig.value);
  os << "\n";
  return os.str();
}

} // namespace p4ifc
