// p4ifc/typecheck.hpp - the IFC typing judgements
#pragma once

#include <map>
#include <string>
#include <vector>

#include "p4ifc/diag.hpp"
#include "p4ifc/syntax.hpp"

namespace p4ifc {

/// Gamma. Types are stored fully resolved. The distinguished name "return"
/// is bound exactly while a function body is being checked.
struct TypeEnv {
  std::map<std::string, TypePtr> vars;
};

struct TableKeySig {
  TypePtr type;  // resolved
  std::string match_kind;
};

struct TableActionSig {
  std::string name;
  size_t bound_args = 0;
  std::vector<TypePtr> control_plane_params;  // resolved
};

struct TableSig {
  std::vector<TableKeySig> keys;
  std::vector<TableActionSig> actions;
};

/// Table shapes harvested during checking; the control-plane entry loader
/// validates entries against these.
struct Signatures {
  std::map<std::string, TableSig> tables;
};

struct CheckOptions {
  bool collect_contexts = false;
  // Disables the key-label/action chain of T-TblDecl. Only the corpus
  // mutation self-test sets this.
  bool skip_table_label_checks = false;
};

/// Snapshot of (stmt, Gamma, Delta) taken as the checker walked the program;
/// used by the pc downward-closure suite to re-check statements at other pc's.
struct StatementContext {
  StmtPtr stmt;
  TypeEnv gamma;
  TypeDefs defs;
};

struct CheckResult {
  Verdict verdict;
  Signatures sigs;
  TypeEnv top_env;    // Gamma after all control-body declarations
  TypeEnv final_env;  // Gamma after the apply block
  TypeDefs top_defs;  // Delta after all declarations
  std::vector<StatementContext> contexts;
};

/// Checks a whole program at the given pc, collecting every diagnostic
/// rather than stopping at the first.
Verdict check_program(const Program& p, const Lattice& lattice, SecurityLabel pc);
CheckResult check_program_full(const Program& p, const Lattice& lattice, SecurityLabel pc,
                               const CheckOptions& options = {});

/// Per-judgement entry points, exposed for tests.
class Checker {
 public:
  Checker(const Lattice& lattice, CheckOptions options = {});

  struct ExprResult {
    TypePtr type;  // resolved
    Dir dir = Dir::In;
  };

  ExprResult type_expression(const TypeEnv& env, const TypeDefs& defs, SecurityLabel pc,
                             const ExprPtr& e);
  TypeEnv type_statement(const TypeEnv& env, TypeDefs defs, SecurityLabel pc,
                         const StmtPtr& s);
  std::pair<TypeEnv, TypeDefs> type_declaration(const TypeEnv& env, const TypeDefs& defs,
                                                SecurityLabel pc, const DeclPtr& d);

  const std::vector<Diagnostic>& diagnostics() const { return diags_; }
  std::vector<Diagnostic> take_diagnostics();
  const Signatures& signatures() const { return sigs_; }
  std::vector<StatementContext>& contexts() { return contexts_; }

 private:
  friend CheckResult check_program_full(const Program&, const Lattice&, SecurityLabel,
                                        const CheckOptions&);

  void diag(Span span, std::string rule, std::string msg);
  void flow(Span span, std::string rule, std::string msg, SecurityLabel found,
            SecurityLabel required);
  TypePtr resolve_or_diag(const TypeDefs& defs, const TypePtr& t, Span span);

  ExprResult synth(const TypeEnv& env, const TypeDefs& defs, SecurityLabel pc,
                   const ExprPtr& e);
  bool check_against(const TypeEnv& env, const TypeDefs& defs, SecurityLabel pc,
                     const ExprPtr& e, const TypePtr& expected, const std::string& rule);
  TypeEnv stmt(const TypeEnv& env, TypeDefs& defs, SecurityLabel pc, const StmtPtr& s);
  std::pair<TypeEnv, TypeDefs> decl(const TypeEnv& env, TypeDefs defs, SecurityLabel pc,
                                    const DeclPtr& d);

  SecurityLabel infer_fn_pc(const TypeEnv& env, const TypeDefs& defs, const StmtPtr& body);
  void require_data_type(const TypePtr& resolved, Span span);

  const Lattice& lattice_;
  CheckOptions options_;
  std::vector<Diagnostic> diags_;
  Signatures sigs_;
  std::vector<StatementContext> contexts_;

  // When set, every enforced "pc below X" side condition also records X;
  // used to infer pc_fn by running the body check silently.
  std::vector<SecurityLabel>* pc_bound_sink_ = nullptr;
  bool silent_ = false;
};

} // namespace p4ifc
