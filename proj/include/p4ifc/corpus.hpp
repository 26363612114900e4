// p4ifc/corpus.hpp - bundled case-study programs with expected verdicts
#pragma once

#include <map>
#include <string>
#include <vector>

namespace p4ifc {

struct ExpectedDiag {
  std::string rule;
  int line = 0;
};

struct CorpusCase {
  std::string name;
  std::string source_file;
  std::string entries_file;
  std::string store_file;
  std::string lattice;   // "two-point" or "diamond"
  std::string check_pc;  // label name
  bool expect_accept = false;
  std::vector<ExpectedDiag> expected_diags;      // rejected cases
  std::vector<std::string> ni_observers;         // accepted cases
};

const std::vector<CorpusCase>& list_cases();
const CorpusCase& lookup_case(const std::string& name);

/// File contents embedded from corpus/ at build time (generated).
const std::map<std::string, std::string>& corpus_embedded_files();
const std::string& corpus_file(const std::string& name);

} // namespace p4ifc
