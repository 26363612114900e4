// p4ifc/diag.hpp - checker verdicts and located diagnostics
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "p4ifc/ast.hpp"

namespace p4ifc {

struct Diagnostic {
  Span span;
  std::string rule;     // violated rule, e.g. "T-Assign", or error kind
  std::string message;
  std::optional<std::string> found_label;
  std::optional<std::string> required_label;
};

struct Verdict {
  bool accepted = true;
  std::vector<Diagnostic> diagnostics;
};

/// Thrown by the lexer, parser, and file loaders. The typechecker never
/// throws; it collects Diagnostics instead.
class CompileError : public std::runtime_error {
 public:
  CompileError(std::string kind, Span span, const std::string& msg)
      : std::runtime_error(msg), kind(std::move(kind)), span(span) {}

  std::string kind;
  Span span;
};

} // namespace p4ifc
