#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "p4ifc/corpus.hpp"
#include "p4ifc/typecheck.hpp"

using namespace p4ifc;

namespace {

const Lattice& lattice_of(const CorpusCase& c) {
  return c.lattice == "diamond" ? Lattice::diamond() : Lattice::two_point();
}

} // namespace

TEST_CASE("the case list covers the expected programs") {
  std::vector<std::string> names;
  for (auto& c : list_cases()) names.push_back(c.name);
  for (const char* expected :
       {"topology-fixed", "topology-buggy", "d2r-fixed", "d2r-buggy", "cache-fixed",
        "cache-buggy", "app-fixed", "app-buggy", "isolation-alice-fixed",
        "isolation-alice-buggy", "isolation-bob"}) {
    CAPTURE(expected);
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  }
  // Every rejected case names at least one expected diagnostic; every
  // accepted case lists at least one observer.
  for (auto& c : list_cases()) {
    if (c.expect_accept)
      CHECK_FALSE(c.ni_observers.empty());
    else
      CHECK_FALSE(c.expected_diags.empty());
  }
}

TEST_CASE("lookup returns the recorded expectations") {
  const CorpusCase& cache = lookup_case("cache-buggy");
  CHECK_FALSE(cache.expect_accept);
  REQUIRE(cache.expected_diags.size() == 1);
  CHECK(cache.expected_diags[0].rule == "T-TblDecl");

  CHECK(lookup_case("topology-fixed").expect_accept);
  const CorpusCase& bob = lookup_case("isolation-bob");
  CHECK(bob.expect_accept);
  CHECK(bob.check_pc == "B");
  CHECK_THROWS(lookup_case("nope"));
}

TEST_CASE("every corpus source parses and matches its expected verdict") {
  for (auto& c : list_cases()) {
    CAPTURE(c.name);
    const Lattice& lat = lattice_of(c);
    Program p = parse_program(corpus_file(c.source_file), lat);
    Verdict v = check_program(p, lat, lat.label(c.check_pc));
    CHECK(v.accepted == c.expect_accept);
    if (!c.expect_accept) {
      REQUIRE(v.diagnostics.size() == c.expected_diags.size());
      for (size_t i = 0; i < v.diagnostics.size(); ++i) {
        CHECK(v.diagnostics[i].rule == c.expected_diags[i].rule);
        CHECK(v.diagnostics[i].span.line == c.expected_diags[i].line);
      }
    }
  }
}

TEST_CASE("isolation programs behave per principal") {
  // Alice's buggy switch: one explicit write to Bob's field, one telemetry
  // key; her fixed switch is clean at pc = A; Bob's switch is clean at B.
  const Lattice& dia = Lattice::diamond();
  Program alice = parse_program(corpus_file("isolation-alice-buggy.p4s"), dia);
  Verdict v = check_program(alice, dia, dia.label("A"));
  REQUIRE(v.diagnostics.size() == 2);
  CHECK(v.diagnostics[0].rule == "T-Assign");
  CHECK(v.diagnostics[1].rule == "T-TblDecl");

  Program bob = parse_program(corpus_file("isolation-bob.p4s"), dia);
  CHECK(check_program(bob, dia, dia.label("B")).accepted);
  // Bob's increment writes top-labeled telemetry, so checking his program
  // at pc = A is also fine; the isolation is per-principal.
  CHECK(check_program(bob, dia, dia.label("A")).accepted);
}

TEST_CASE("embedded corpus matches the loose files when present") {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(CORPUS_SOURCE_DIR);
  if (!fs::is_directory(dir)) return;  // embedded-only build
  for (auto& [name, embedded] : corpus_embedded_files()) {
    std::ifstream in(dir / name, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), name);
    std::ostringstream os;
    os << in.rdbuf();
    CHECK_MESSAGE(os.str() == embedded, name << " diverges from the embedded copy");
  }
}

TEST_CASE("disabling the table label checks breaks the cache verdict") {
  // Guards the harness itself: with the T-TblDecl chain skipped, the buggy
  // cache program would be accepted and the corpus run must notice.
  const CorpusCase& c = lookup_case("cache-buggy");
  const Lattice& lat = lattice_of(c);
  Program p = parse_program(corpus_file(c.source_file), lat);
  CheckOptions opts;
  opts.skip_table_label_checks = true;
  CheckResult cr = check_program_full(p, lat, lat.label(c.check_pc), opts);
  // The mutated checker accepts the leak, contradicting the recorded
  // expectation; a corpus run against it necessarily fails.
  CHECK(cr.verdict.accepted);
  CHECK(cr.verdict.accepted != c.expect_accept);
}
