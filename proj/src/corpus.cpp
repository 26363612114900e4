// p4ifc/corpus.cpp
#include "p4ifc/corpus.hpp"

#include <stdexcept>

namespace p4ifc {

namespace {

CorpusCase make(std::string name, std::string lattice, std::string pc, bool accept,
                std::vector<ExpectedDiag> diags, std::vector<std::string> observers) {
  CorpusCase c;
  c.name = name;
  c.source_file = name + ".p4s";
  c.entries_file = name + ".entries";
  c.store_file = name + ".store";
  c.lattice = std::move(lattice);
  c.check_pc = std::move(pc);
  c.expect_accept = accept;
  c.expected_diags = std::move(diags);
  c.ni_observers = std::move(observers);
  return c;
}

} // namespace

const std::vector<CorpusCase>& list_cases() {
  static const std::vector<CorpusCase> cases = {
      make("topology-fixed", "two-point", "low", true, {}, {"low", "high"}),
      make("topology-buggy", "two-point", "low", false, {{"T-Assign", 38}}, {}),
      make("d2r-fixed", "two-point", "low", true, {}, {"low", "high"}),
      make("d2r-buggy", "two-point", "low", false,
           {{"T-Assign", 37}, {"T-Assign", 39}}, {}),
      make("cache-fixed", "two-point", "low", true, {}, {"low", "high"}),
      make("cache-buggy", "two-point", "low", false, {{"T-TblDecl", 33}}, {}),
      make("app-fixed", "two-point", "low", true, {}, {"low", "high"}),
      make("app-buggy", "two-point", "low", false, {{"T-TblDecl", 24}}, {}),
      make("isolation-alice-fixed", "diamond", "A", true, {},
           {"bot", "A", "B", "top"}),
      make("isolation-alice-buggy", "diamond", "A", false,
           {{"T-Assign", 31}, {"T-TblDecl", 35}}, {}),
      make("isolation-bob", "diamond", "B", true, {}, {"bot", "A", "B", "top"}),
  };
  return cases;
}

const CorpusCase& lookup_case(const std::string& name) {
  for (auto& c : list_cases())
    if (c.name == name) return c;
  throw std::out_of_range("no corpus case named '" + name + "'");
}

const std::string& corpus_file(const std::string& name) {
  const auto& files = corpus_embedded_files();
  auto it = files.find(name);
  if (it == files.end()) throw std::out_of_range("no corpus file named '" + name + "'");
  return it->second;
}

} // namespace p4ifc
