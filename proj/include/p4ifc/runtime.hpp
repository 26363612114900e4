// p4ifc/runtime.hpp - control plane entries and store-init specs
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p4ifc/typecheck.hpp"
#include "p4ifc/value.hpp"

namespace p4ifc {

struct Pattern {
  enum Kind { Exact, Lpm } kind = Exact;
  unsigned __int128 value = 0;
  uint32_t width = 0;       // width of the matched key
  uint32_t prefix_len = 0;  // Lpm only
};

struct Entry {
  std::vector<Pattern> patterns;
  std::string action;
  std::vector<Value> args;  // control-plane arguments
};

struct TableEntries {
  std::vector<Entry> entries;
  std::optional<Entry> default_entry;  // patterns empty
};

/// The table lookup map installed by the control plane. Immutable for the
/// duration of a run and shared by both executions of an NI trial.
struct ControlPlane {
  std::map<std::string, TableEntries> tables;
};

/// Parses an entries file against the checked program's table signatures.
/// Lines:  table: pat [, pat...] -> action(arg [, arg...])
///         default table -> action(args)
/// pat is value:width (exact) or value/prefixlen (lpm; dotted quads allowed
/// for 32-bit keys).
ControlPlane load_entries(const std::string& source, const Signatures& sigs,
                          const TypeDefs& defs);

std::string serialize_entries(const ControlPlane& cp);

struct MatchedAction {
  std::string action;
  std::vector<Value> args;
};

/// Selects an entry for the given key values: exact patterns compare
/// bit-for-bit, lpm selects the longest matching declared prefix; all keys
/// of an entry must match; ties break by longest total lpm prefix length,
/// then entry order. Falls back to the default action; nullopt is a match
/// failure.
std::optional<MatchedAction> table_match(const ControlPlane& cp, const std::string& table,
                                         const std::vector<TableKeySig>& keys,
                                         const std::vector<Value>& key_values);

// ---------------------------------------------------------------------------
// Store-init specs
// ---------------------------------------------------------------------------

/// One `path = value` assignment; the path is a top-level variable followed
/// by field projections and concrete indices.
struct StoreAssign {
  std::string path;
  Value value;
};

struct StoreSpec {
  std::vector<StoreAssign> assigns;
};

/// Parses `path = value` lines against the program's top-level typing
/// environment. Omitted variables keep their init_value.
StoreSpec parse_store_spec(const std::string& source, const TypeEnv& top_env,
                           const TypeDefs& defs);

std::string serialize_store_spec(const StoreSpec& spec);

/// Resolves the type at a dotted path like `hdr.ipv4.ttl` or `s[2]`.
TypePtr type_at_path(const TypeEnv& top_env, const TypeDefs& defs, const std::string& path);

} // namespace p4ifc
