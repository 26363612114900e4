// p4ifc/interp.hpp - big-step evaluator
#pragma once

#include <functional>

#include "p4ifc/runtime.hpp"

namespace p4ifc {

/// Raised on interpreter/typing inconsistencies; never expected while
/// running checker-accepted programs.
class RuntimeError : public std::runtime_error {
 public:
  RuntimeError(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind(std::move(kind)) {}
  std::string kind;
};

/// Normalized write target: a root variable plus field projections and
/// concrete indices.
struct LValue {
  struct Access {
    enum Kind { Field, Index } kind = Field;
    std::string field;
    uint64_t index = 0;
  };
  std::string base;
  std::vector<Access> path;
};

/// Copy modes of the calling convention. The surface grammar only produces
/// in and inout parameters; the out mode exists at this level for the copy
/// machinery itself.
enum class CopyMode { In, Out, InOut };

struct CopyBinding {
  CopyMode mode = CopyMode::In;
  std::string name;
  TypePtr type;                    // resolved
  ExprPtr arg;                     // null when a precomputed value is given
  std::optional<Value> precomputed;  // control-plane supplied arguments
};

struct WriteBack {
  LValue lval;
  Loc loc;
};

/// Called after every statement evaluation; lets tests check the
/// metatheory invariants step by step.
using StatementTrace = std::function<void(const Stmt&, const Store&, const Env&)>;

class Evaluator {
 public:
  Evaluator(const ControlPlane& cp, const Signatures& sigs, const Lattice& lattice)
      : cp_(cp), sigs_(sigs), lattice_(lattice) {}

  Value eval_expression(const TypeDefs& defs, Store& store, const Env& env, const ExprPtr& e);
  LValue eval_lvalue(const TypeDefs& defs, Store& store, const Env& env, const ExprPtr& e);
  Value read_lvalue(const Store& store, const Env& env, const LValue& lv) const;
  /// Writes touch exactly the location of the l-value's base variable;
  /// writes through an out-of-bounds index are a no-op.
  void write_lvalue(Store& store, const Env& env, const LValue& lv, Value v);

  /// Copy-in/out: evaluates bindings left to right, returning the fresh
  /// environment fragment and the write-backs to run after the body.
  std::pair<Env, std::vector<WriteBack>> copy_in_out(const TypeDefs& defs, Store& store,
                                                     const Env& env,
                                                     const std::vector<CopyBinding>& bindings);

  /// Declaration statements extend defs for the rest of the enclosing
  /// block; blocks evaluate against a local copy.
  Signal eval_statement(TypeDefs& defs, Store& store, Env& env, const StmtPtr& s);
  Signal eval_declaration(TypeDefs& defs, Store& store, Env& env, const DeclPtr& d);

  StatementTrace trace;

 private:
  Value eval_call(const TypeDefs& defs, Store& store, const Env& env, const Call& call,
                  Span span);
  Signal apply_table(const TypeDefs& defs, Store& store, const Env& env, const ExprPtr& table);
  Value invoke_closure(const TypeDefs& defs, Store& store, const Env& caller_env,
                       const ClosV& clos, const std::vector<CopyBinding>& bindings);

  struct ExitUnwind {};
  struct DepthGuard;

  const ControlPlane& cp_;
  const Signatures& sigs_;
  const Lattice& lattice_;
  int depth_ = 0;
  static constexpr int kDepthLimit = 100000;
};

/// A prepared program state: store, environment, and the runtime type
/// definitions after evaluating all declarations.
struct MachineState {
  TypeDefs defs;
  Store store;
  Env env;
};

struct RunResult {
  MachineState state;
  Signal sig;
};

/// Drives whole-program runs: evaluates the top-level type declarations,
/// allocates the control parameters (init_value plus store-spec overrides),
/// evaluates the control-body declarations, then the apply block.
class Runner {
 public:
  Runner(const Program& program, const ControlPlane& cp, const Signatures& sigs,
         const Lattice& lattice);

  /// State after declarations, before the apply block. If a declaration's
  /// initializer exits, decl_signal reports it and the apply must not run.
  MachineState prepare(const StoreSpec& spec, Signal* decl_signal = nullptr) const;
  Signal run_apply(MachineState& state, const StatementTrace& trace = nullptr) const;
  RunResult run(const StoreSpec& spec) const;

  /// Deterministically ordered `var = value` lines for the data-typed
  /// top-level variables, followed by the signal name.
  static std::string dump(const MachineState& state, const Signal& sig);

  const Program& program() const { return program_; }

 private:
  const Program& program_;
  const ControlPlane& cp_;
  const Signatures& sigs_;
  const Lattice& lattice_;
};

} // namespace p4ifc
