// p4ifc/entries.cpp - control-plane entry files and table matching
#include <algorithm>
#include <cctype>
#include <sstream>

#include "p4ifc/runtime.hpp"

namespace p4ifc {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '{' || c == '[') ++depth;
    if (c == ')' || c == '}' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

[[noreturn]] void fail(int lineno, const std::string& kind, const std::string& msg) {
  throw CompileError(kind, {lineno, 1}, "entries line " + std::to_string(lineno) + ": " + msg);
}

unsigned __int128 parse_magnitude(const std::string& text, int lineno) {
  // Dotted quads denote 32-bit values.
  if (text.find('.') != std::string::npos) {
    unsigned __int128 v = 0;
    int octets = 0;
    std::istringstream is(text);
    std::string part;
    while (std::getline(is, part, '.')) {
      int octet = std::stoi(part);
      if (octet < 0 || octet > 255) fail(lineno, "ParseError", "bad dotted-quad octet");
      v = (v << 8) | static_cast<unsigned>(octet);
      ++octets;
    }
    if (octets != 4) fail(lineno, "ParseError", "dotted-quad must have four octets");
    return v;
  }
  unsigned __int128 v = 0;
  if (text.empty()) fail(lineno, "ParseError", "expected a number");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(lineno, "ParseError", "expected a number, got '" + text + "'");
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

Pattern parse_pattern(const std::string& text, const TableKeySig& key, int lineno) {
  if (key.type->base.kind != BaseType::Bit)
    fail(lineno, "ArgumentTypeMismatch", "entries support bit-typed keys only");
  uint32_t width = key.type->base.width;
  Pattern p;
  p.width = width;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    if (key.match_kind != "lpm")
      fail(lineno, "ParseError", "prefix pattern on a non-lpm key");
    p.kind = Pattern::Lpm;
    p.value = parse_magnitude(trim(text.substr(0, slash)), lineno);
    unsigned long len = std::stoul(trim(text.substr(slash + 1)));
    if (len > width) fail(lineno, "ParseError", "prefix length exceeds the key width");
    p.prefix_len = static_cast<uint32_t>(len);
  } else {
    if (key.match_kind != "exact")
      fail(lineno, "ParseError", "exact pattern on a non-exact key");
    p.kind = Pattern::Exact;
    std::string val = text;
    if (auto colon = text.find(':'); colon != std::string::npos) {
      unsigned long w = std::stoul(trim(text.substr(colon + 1)));
      if (w != width) fail(lineno, "ArgumentTypeMismatch", "pattern width does not match the key");
      val = trim(text.substr(0, colon));
    }
    p.value = parse_magnitude(val, lineno);
  }
  if (width < 128 && p.value >= (static_cast<unsigned __int128>(1) << width))
    fail(lineno, "ArgumentTypeMismatch", "pattern value does not fit in the key width");
  return p;
}

Entry parse_action_part(const std::string& text, const TableSig& sig, const TypeDefs& defs,
                        int lineno) {
  Entry e;
  std::string name = trim(text);
  std::string args_text;
  if (auto paren = name.find('('); paren != std::string::npos) {
    if (name.back() != ')') fail(lineno, "ParseError", "expected ')'");
    args_text = name.substr(paren + 1, name.size() - paren - 2);
    name = trim(name.substr(0, paren));
  }
  const TableActionSig* action = nullptr;
  for (auto& a : sig.actions)
    if (a.name == name) action = &a;
  if (!action)
    fail(lineno, "UnknownAction", "action '" + name + "' is not listed in the table");
  e.action = name;
  std::vector<std::string> args = trim(args_text).empty() ? std::vector<std::string>{}
                                                          : split(args_text, ',');
  if (args.size() != action->control_plane_params.size())
    fail(lineno, "ArgumentTypeMismatch",
         "action '" + name + "' takes " +
             std::to_string(action->control_plane_params.size()) +
             " control-plane arguments");
  for (size_t i = 0; i < args.size(); ++i) {
    try {
      e.args.push_back(parse_value(defs, action->control_plane_params[i], args[i]));
    } catch (const CompileError& err) {
      fail(lineno, "ArgumentTypeMismatch", err.what());
    }
  }
  return e;
}

} // namespace

ControlPlane load_entries(const std::string& source, const Signatures& sigs,
                          const TypeDefs& defs) {
  ControlPlane cp;
  std::istringstream in(source);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    bool is_default = false;
    if (line.rfind("default", 0) == 0 &&
        (line.size() == 7 || std::isspace(static_cast<unsigned char>(line[7])))) {
      is_default = true;
      line = trim(line.substr(7));
    }

    auto arrow = line.find("->");
    if (arrow == std::string::npos) fail(lineno, "ParseError", "expected '->'");
    std::string head = trim(line.substr(0, arrow));
    std::string action_part = trim(line.substr(arrow + 2));

    std::string table_name;
    std::string patterns_text;
    if (is_default) {
      table_name = head;
    } else {
      auto colon = head.find(':');
      if (colon == std::string::npos) fail(lineno, "ParseError", "expected 'table: patterns'");
      table_name = trim(head.substr(0, colon));
      patterns_text = trim(head.substr(colon + 1));
    }

    auto sig_it = sigs.tables.find(table_name);
    if (sig_it == sigs.tables.end())
      fail(lineno, "UnknownTable", "unknown table '" + table_name + "'");
    const TableSig& sig = sig_it->second;

    Entry e = parse_action_part(action_part, sig, defs, lineno);
    if (!is_default) {
      std::vector<std::string> pats = split(patterns_text, ',');
      if (pats.size() != sig.keys.size())
        fail(lineno, "ParseError",
             "expected " + std::to_string(sig.keys.size()) + " patterns");
      for (size_t i = 0; i < pats.size(); ++i)
        e.patterns.push_back(parse_pattern(pats[i], sig.keys[i], lineno));
      cp.tables[table_name].entries.push_back(std::move(e));
    } else {
      cp.tables[table_name].default_entry = std::move(e);
    }
  }
  return cp;
}

std::string serialize_entries(const ControlPlane& cp) {
  std::ostringstream os;
  for (auto& [table, te] : cp.tables) {
    for (auto& e : te.entries) {
      os << table << ": ";
      for (size_t i = 0; i < e.patterns.size(); ++i) {
        if (i) os << ", ";
        const Pattern& p = e.patterns[i];
        if (p.kind == Pattern::Exact)
          os << uint128_to_string(p.value) << ":" << p.width;
        else
          os << uint128_to_string(p.value) << "/" << p.prefix_len;
      }
      os << " -> " << e.action << "(";
      for (size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << ", ";
        os << print_value(e.args[i]);
      }
      os << ")\n";
    }
    if (te.default_entry) {
      os << "default " << table << " -> " << te.default_entry->action << "(";
      for (size_t i = 0; i < te.default_entry->args.size(); ++i) {
        if (i) os << ", ";
        os << print_value(te.default_entry->args[i]);
      }
      os << ")\n";
    }
  }
  return os.str();
}

std::optional<MatchedAction> table_match(const ControlPlane& cp, const std::string& table,
                                         const std::vector<TableKeySig>& keys,
                                         const std::vector<Value>& key_values) {
  if (key_values.size() != keys.size())
    throw CompileError("ArgumentTypeMismatch", {},
                       "key value arity does not match the table's key list");
  auto it = cp.tables.find(table);
  const TableEntries* te = it == cp.tables.end() ? nullptr : &it->second;

  const Entry* best = nullptr;
  uint64_t best_prefix = 0;
  if (te) {
    for (size_t idx = 0; idx < te->entries.size(); ++idx) {
      const Entry& e = te->entries[idx];
      if (e.patterns.size() != key_values.size()) continue;
      bool all = true;
      uint64_t total_prefix = 0;
      for (size_t k = 0; k < e.patterns.size(); ++k) {
        const Pattern& p = e.patterns[k];
        const auto* bits = std::get_if<BitsV>(&key_values[k].v);
        if (!bits || bits->width != p.width) {
          all = false;
          break;
        }
        if (p.kind == Pattern::Exact) {
          if (bits->v != p.value) {
            all = false;
            break;
          }
          total_prefix += p.width;
        } else {
          uint32_t shift = p.width - p.prefix_len;
          unsigned __int128 key_hi = p.prefix_len == 0 ? 0 : (bits->v >> shift);
          unsigned __int128 pat_hi = p.prefix_len == 0 ? 0 : (p.value >> shift);
          if (key_hi != pat_hi) {
            all = false;
            break;
          }
          total_prefix += p.prefix_len;
        }
      }
      if (!all) continue;
      // Entries are scanned in order, so the first entry wins prefix ties.
      if (!best || total_prefix > best_prefix) {
        best = &e;
        best_prefix = total_prefix;
      }
    }
  }
  if (best) return MatchedAction{best->action, best->args};
  if (te && te->default_entry)
    return MatchedAction{te->default_entry->action, te->default_entry->args};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Store specs
// ---------------------------------------------------------------------------

TypePtr type_at_path(const TypeEnv& top_env, const TypeDefs& defs, const std::string& path) {
  size_t pos = 0;
  auto ident = [&]() {
    size_t start = pos;
    while (pos < path.size() && (std::isalnum(static_cast<unsigned char>(path[pos])) ||
                                 path[pos] == '_'))
      ++pos;
    if (start == pos)
      throw CompileError("ParseError", {}, "bad path '" + path + "'");
    return path.substr(start, pos - start);
  };

  std::string base = ident();
  auto it = top_env.vars.find(base);
  if (it == top_env.vars.end())
    throw CompileError("UnknownVariable", {}, "unknown variable '" + base + "'");
  TypePtr t = resolve_type(defs, it->second);
  while (pos < path.size()) {
    if (path[pos] == '.') {
      ++pos;
      std::string field = ident();
      const BaseType& b = t->base;
      if (b.kind != BaseType::Record && b.kind != BaseType::Header)
        throw CompileError("ParseError", {}, "path projects a non-record at '" + field + "'");
      const Field* found = nullptr;
      for (auto& f : b.fields)
        if (f.name == field) found = &f;
      if (!found)
        throw CompileError("ParseError", {}, "no field '" + field + "' in path '" + path + "'");
      t = resolve_type(defs, found->type);
    } else if (path[pos] == '[') {
      ++pos;
      std::string idx = ident();
      if (pos >= path.size() || path[pos] != ']')
        throw CompileError("ParseError", {}, "expected ']' in path '" + path + "'");
      ++pos;
      if (t->base.kind != BaseType::Stack)
        throw CompileError("ParseError", {}, "path indexes a non-stack");
      size_t i = std::stoul(idx);
      if (i >= t->base.size)
        throw CompileError("ParseError", {}, "index out of range in path '" + path + "'");
      t = resolve_type(defs, t->base.elem);
    } else {
      throw CompileError("ParseError", {}, "bad character in path '" + path + "'");
    }
  }
  return t;
}

StoreSpec parse_store_spec(const std::string& source, const TypeEnv& top_env,
                           const TypeDefs& defs) {
  StoreSpec spec;
  std::istringstream in(source);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CompileError("ParseError", {lineno, 1}, "expected 'path = value'");
    std::string path = trim(line.substr(0, eq));
    std::string value_text = trim(line.substr(eq + 1));
    TypePtr t = type_at_path(top_env, defs, path);
    spec.assigns.push_back({path, parse_value(defs, t, value_text)});
  }
  return spec;
}

std::string serialize_store_spec(const StoreSpec& spec) {
  std::ostringstream os;
  for (auto& a : spec.assigns) os << a.path << " = " << print_value(a.value) << "\n";
  return os.str();
}

} // namespace p4ifc
