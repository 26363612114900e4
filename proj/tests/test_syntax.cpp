#include <doctest.h>

#include "p4ifc/corpus.hpp"
#include "p4ifc/syntax.hpp"

using namespace p4ifc;

namespace {

const Lattice& two = Lattice::two_point();

Program parse_two(const std::string& src) { return parse_program(src, two); }

const char* kTiny = R"(
match_kind { exact, lpm }
header h_t {
  <bit<8>, high> secret;
  bit<8> ttl;
}
struct hs_t { h_t inner; }
control C(inout hs_t hdr) {
  bit<8> x = 3:8;
  action a(in <bit<8>, high> v) {
    hdr.inner.secret = v;
  }
  table t {
    key = { hdr.inner.ttl: exact; }
    actions = { a(hdr.inner.secret); }
  }
  apply {
    t.apply();
  }
}
)";

} // namespace

TEST_CASE("spans carry 1-based line/column") {
  Program p = parse_two(kTiny);
  CHECK(p.control_span.line == 8);
  CHECK(p.top_decls.size() == 3);
  REQUIRE(p.decls.size() == 3);
  CHECK(p.decls[0]->span.line == 9);
}

TEST_CASE("annotated header fields carry their label") {
  Program p = parse_two(kTiny);
  const auto& td = std::get<TypedefDecl>(p.top_decls[1]->node);
  REQUIRE(td.type->base.kind == BaseType::Header);
  CHECK(td.type->base.fields[0].type->label == two.label("high"));
  // Unannotated types default to bottom.
  CHECK(td.type->base.fields[1].type->label == two.bottom());
  // Aggregate shapes themselves stay at bottom.
  CHECK(td.type->label == two.bottom());
}

TEST_CASE("unknown annotation labels are rejected with a span") {
  try {
    parse_two("control C(inout <bool, up> x) { apply { } }");
    FAIL("expected UnknownLabel");
  } catch (const CompileError& e) {
    CHECK(e.kind == "UnknownLabel");
    CHECK(e.span.line == 1);
    CHECK(e.span.col > 1);
  }
}

TEST_CASE("bit literals carry their width and must fit") {
  Program p = parse_two("control C() { apply { bit<8> x = 255:8; } }");
  (void)p;
  CHECK_THROWS_AS(parse_two("control C() { apply { bit<8> x = 256:8; } }"), CompileError);
  CHECK_THROWS_AS(parse_two("control C() { apply { bit<200> x; } }"), CompileError);
}

TEST_CASE("annotating an aggregate pushes the label onto scalar leaves") {
  Program p = parse_two(
      "control C(inout <header { bit<8> f; bit<4> g; }, high> h) { apply { } }");
  const TypePtr& t = p.control_params[0].type;
  REQUIRE(t->base.kind == BaseType::Header);
  CHECK(t->label == two.bottom());
  CHECK(t->base.fields[0].type->label == two.label("high"));
  CHECK(t->base.fields[1].type->label == two.label("high"));
}

TEST_CASE("resolve_type unfolds typedefs recursively") {
  TypeDefs defs;
  defs.lattice = &two;
  BaseType name_t;
  name_t.kind = BaseType::Name;
  name_t.name = "T";
  BaseType name_u;
  name_u.kind = BaseType::Name;
  name_u.name = "U";
  defs.types["T"] = make_type(name_u, two.bottom());
  defs.types["U"] = int_type(two.bottom());

  TypePtr t = make_type(name_t, two.bottom());
  // Oracle: iterate single-step substitution to a fixed point.
  TypePtr expect = defs.types["T"];
  while (expect->base.kind == BaseType::Name) expect = defs.types.at(expect->base.name);
  TypePtr got = resolve_type(defs, t);
  CHECK(type_equal(got, expect));
  CHECK(got->base.kind == BaseType::Int);

  // Base types are fixed points; resolution is idempotent.
  CHECK(type_equal(resolve_type(defs, got), got));

  SUBCASE("unknown names") {
    BaseType bad;
    bad.kind = BaseType::Name;
    bad.name = "V";
    CHECK_THROWS_AS(resolve_type(defs, make_type(bad, two.bottom())), CompileError);
  }
  SUBCASE("cycles") {
    BaseType back;
    back.kind = BaseType::Name;
    back.name = "T";
    defs.types["U"] = make_type(back, two.bottom());
    CHECK_THROWS_AS(resolve_type(defs, t), CompileError);
  }
}

TEST_CASE("single typedef unfolding") {
  TypeDefs defs;
  defs.lattice = &two;
  defs.types["T"] = bit_type(8, two.bottom());
  BaseType name_t;
  name_t.kind = BaseType::Name;
  name_t.name = "T";
  TypePtr resolved = resolve_type(defs, make_type(name_t, two.bottom()));
  CHECK(resolved->base.kind == BaseType::Bit);
  CHECK(resolved->base.width == 8);
}

TEST_CASE("resolution is idempotent on every corpus type") {
  for (auto& c : list_cases()) {
    const Lattice& lat = c.lattice == "diamond" ? Lattice::diamond() : Lattice::two_point();
    Program p = parse_program(corpus_file(c.source_file), lat);
    TypeDefs defs;
    defs.lattice = &lat;
    for (auto& d : p.top_decls)
      if (const auto* td = std::get_if<TypedefDecl>(&d->node)) defs.types[td->name] = td->type;
    for (auto& [name, t] : defs.types) {
      TypePtr once = resolve_type(defs, t);
      CHECK(type_equal(resolve_type(defs, once), once));
    }
  }
}

TEST_CASE("pretty-print is a fixed point on the corpus") {
  for (auto& c : list_cases()) {
    const Lattice& lat = c.lattice == "diamond" ? Lattice::diamond() : Lattice::two_point();
    Program p1 = parse_program(corpus_file(c.source_file), lat);
    std::string printed = print_program(p1, lat);
    Program p2 = parse_program(printed, lat);
    CHECK(print_program(p2, lat) == printed);
  }
}

TEST_CASE("every parsed label is a lattice element") {
  // The parser resolves labels eagerly, so a successful parse implies
  // membership; spot-check by re-parsing each corpus file.
  for (auto& c : list_cases()) {
    const Lattice& lat = c.lattice == "diamond" ? Lattice::diamond() : Lattice::two_point();
    CHECK_NOTHROW(parse_program(corpus_file(c.source_file), lat));
  }
}

TEST_CASE("parse errors carry spans") {
  try {
    parse_two("control C() { apply { if } }");
    FAIL("expected ParseError");
  } catch (const CompileError& e) {
    CHECK(e.kind == "ParseError");
    CHECK(e.span.line == 1);
  }
}

TEST_CASE("control-plane parameters sit after a semicolon") {
  Program p = parse_two(
      "control C() {\n"
      "  action a(inout bit<8> x; bit<8> v, bool b) { x = v; }\n"
      "  apply { }\n"
      "}");
  const auto& f = std::get<FunctionDecl>(p.decls[0]->node);
  REQUIRE(f.params.size() == 3);
  CHECK_FALSE(f.params[0].control_plane);
  CHECK(f.params[0].dir == Dir::InOut);
  CHECK(f.params[1].control_plane);
  CHECK(f.params[2].control_plane);
}
