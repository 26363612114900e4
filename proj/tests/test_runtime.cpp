#include <doctest.h>

#include <algorithm>
#include <random>

#include "p4ifc/corpus.hpp"
#include "p4ifc/runtime.hpp"

using namespace p4ifc;

namespace {

const Lattice& two = Lattice::two_point();

TypeDefs defs_for(const Lattice& lat) {
  TypeDefs d;
  d.lattice = &lat;
  return d;
}

CheckResult checked(const std::string& name, const Lattice& lat, const std::string& pc) {
  Program p = parse_program(corpus_file(name), lat);
  return check_program_full(p, lat, lat.label(pc));
}

} // namespace

TEST_CASE("init_value produces canonical zeros") {
  TypeDefs defs = defs_for(two);
  CHECK(print_value(init_value(defs, bit_type(8, two.bottom()))) == "0:8");
  CHECK(print_value(init_value(defs, bool_type(two.bottom()))) == "false");
  CHECK(print_value(init_value(defs, int_type(two.bottom()))) == "0");

  BaseType hdr;
  hdr.kind = BaseType::Header;
  hdr.fields.push_back({"a", bit_type(4, two.bottom())});
  hdr.fields.push_back({"b", bool_type(two.bottom())});
  Value v = init_value(defs, make_type(hdr, two.bottom()));
  CHECK(print_value(v) == "{a = 0:4, b = false}");
  CHECK(std::get<HeaderV>(v.v).valid);
}

TEST_CASE("havoc is deterministic and equals init") {
  TypeDefs defs = defs_for(two);
  CHECK(value_equal(havoc_value(defs, bit_type(8, two.bottom())),
                    init_value(defs, bit_type(8, two.bottom()))));
  CHECK(print_value(havoc_value(defs, bool_type(two.bottom()))) == "false");

  BaseType stk;
  stk.kind = BaseType::Stack;
  stk.elem = bit_type(4, two.bottom());
  stk.size = 2;
  CHECK(print_value(havoc_value(defs, make_type(stk, two.bottom()))) == "[0:4, 0:4]");
}

TEST_CASE("load_entries validates against the table signatures") {
  CheckResult cr = checked("cache-fixed.p4s", two, "low");
  ControlPlane cp =
      load_entries("fetch_from_cache: 7:8 -> cache_hit(99:32)\n", cr.sigs, cr.top_defs);
  REQUIRE(cp.tables.count("fetch_from_cache") == 1);
  const Entry& e = cp.tables["fetch_from_cache"].entries[0];
  CHECK(e.action == "cache_hit");
  REQUIRE(e.patterns.size() == 1);
  CHECK(e.patterns[0].kind == Pattern::Exact);
  CHECK(e.patterns[0].width == 8);
  REQUIRE(e.args.size() == 1);
  CHECK(print_value(e.args[0]) == "99:32");

  SUBCASE("unknown actions") {
    CHECK_THROWS_AS(load_entries("fetch_from_cache: 7:8 -> nope()\n", cr.sigs, cr.top_defs),
                    CompileError);
  }
  SUBCASE("unknown tables") {
    CHECK_THROWS_AS(load_entries("nope: 7:8 -> cache_hit(1:32)\n", cr.sigs, cr.top_defs),
                    CompileError);
  }
  SUBCASE("argument type mismatches") {
    CHECK_THROWS_AS(
        load_entries("fetch_from_cache: 7:8 -> cache_hit(true)\n", cr.sigs, cr.top_defs),
        CompileError);
    CHECK_THROWS_AS(
        load_entries("fetch_from_cache: 7:8 -> cache_hit()\n", cr.sigs, cr.top_defs),
        CompileError);
  }
  SUBCASE("pattern width mismatches") {
    CHECK_THROWS_AS(
        load_entries("fetch_from_cache: 7:16 -> cache_hit(1:32)\n", cr.sigs, cr.top_defs),
        CompileError);
  }
}

TEST_CASE("lpm prefixes parse from dotted quads") {
  CheckResult cr = checked("topology-fixed.p4s", two, "low");
  ControlPlane cp = load_entries("ipv4_lpm_forward: 10.0.0.0/8 -> drop()\n", cr.sigs,
                                 cr.top_defs);
  const Entry& e = cp.tables["ipv4_lpm_forward"].entries[0];
  REQUIRE(e.patterns.size() == 1);
  CHECK(e.patterns[0].kind == Pattern::Lpm);
  CHECK(e.patterns[0].prefix_len == 8);
  CHECK(e.patterns[0].width == 32);
  // Oracle: 10.0.0.0 == 10 << 24; the top 8 bits must equal 10.
  CHECK(static_cast<uint64_t>(e.patterns[0].value >> 24) == 10);
}

TEST_CASE("entries round-trip through serialize and load") {
  for (auto& c : list_cases()) {
    const Lattice& lat = c.lattice == "diamond" ? Lattice::diamond() : two;
    CheckResult cr = checked(c.source_file, lat, c.check_pc);
    ControlPlane cp1 = load_entries(corpus_file(c.entries_file), cr.sigs, cr.top_defs);
    std::string text = serialize_entries(cp1);
    ControlPlane cp2 = load_entries(text, cr.sigs, cr.top_defs);
    CHECK(serialize_entries(cp2) == text);
  }
}

namespace {

std::vector<TableKeySig> one_key(uint32_t width, const std::string& kind) {
  return {{bit_type(width, two.bottom()), kind}};
}

Value bits(uint64_t v, uint32_t w) { return {BitsV{v, w}}; }

} // namespace

TEST_CASE("exact matching compares bit for bit") {
  ControlPlane cp;
  cp.tables["t"].entries.push_back({{Pattern{Pattern::Exact, 7, 8, 0}}, "a", {}});
  auto m = table_match(cp, "t", one_key(8, "exact"), {bits(7, 8)});
  REQUIRE(m);
  CHECK(m->action == "a");
  CHECK_FALSE(table_match(cp, "t", one_key(8, "exact"), {bits(8, 8)}));
}

TEST_CASE("lpm selects the longest matching prefix") {
  ControlPlane cp;
  // 10.0.0.0/8 and 10.1.0.0/16 both match 10.1.2.3.
  cp.tables["t"].entries.push_back(
      {{Pattern{Pattern::Lpm, 10ull << 24, 32, 8}}, "slash8", {}});
  cp.tables["t"].entries.push_back(
      {{Pattern{Pattern::Lpm, (10ull << 24) | (1ull << 16), 32, 16}}, "slash16", {}});
  uint64_t addr = (10ull << 24) | (1ull << 16) | (2ull << 8) | 3ull;
  auto m = table_match(cp, "t", one_key(32, "lpm"), {bits(addr, 32)});
  REQUIRE(m);
  CHECK(m->action == "slash16");

  // 10.2.0.0 only matches the /8.
  auto m2 = table_match(cp, "t", one_key(32, "lpm"), {bits((10ull << 24) | (2ull << 16), 32)});
  REQUIRE(m2);
  CHECK(m2->action == "slash8");
}

TEST_CASE("no entry and no default is a match failure") {
  ControlPlane cp;
  cp.tables["t"] = {};
  CHECK_FALSE(table_match(cp, "t", one_key(8, "exact"), {bits(1, 8)}));

  cp.tables["t"].default_entry = Entry{{}, "fallback", {}};
  auto m = table_match(cp, "t", one_key(8, "exact"), {bits(1, 8)});
  REQUIRE(m);
  CHECK(m->action == "fallback");
}

TEST_CASE("multi-key entries require every key to match") {
  ControlPlane cp;
  cp.tables["t"].entries.push_back(
      {{Pattern{Pattern::Exact, 1, 8, 0}, Pattern{Pattern::Lpm, 0xF0, 8, 4}}, "both", {}});
  auto keys = std::vector<TableKeySig>{{bit_type(8, two.bottom()), "exact"},
                                       {bit_type(8, two.bottom()), "lpm"}};
  CHECK(table_match(cp, "t", keys, {bits(1, 8), bits(0xF3, 8)}));
  CHECK_FALSE(table_match(cp, "t", keys, {bits(2, 8), bits(0xF3, 8)}));
  CHECK_FALSE(table_match(cp, "t", keys, {bits(1, 8), bits(0x13, 8)}));
}

TEST_CASE("exact matching is permutation independent for disjoint patterns") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 20; ++round) {
    std::vector<uint64_t> patterns;
    for (int i = 0; i < 16; ++i) patterns.push_back(i * 3 + 1);  // disjoint
    std::vector<Entry> entries;
    for (size_t i = 0; i < patterns.size(); ++i)
      entries.push_back({{Pattern{Pattern::Exact, patterns[i], 8, 0}},
                         "a" + std::to_string(i),
                         {}});
    ControlPlane base;
    base.tables["t"].entries = entries;

    std::vector<Entry> shuffled = entries;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ControlPlane perm;
    perm.tables["t"].entries = shuffled;

    for (uint64_t key = 0; key < 64; ++key) {
      auto m1 = table_match(base, "t", one_key(8, "exact"), {bits(key, 8)});
      auto m2 = table_match(perm, "t", one_key(8, "exact"), {bits(key, 8)});
      CHECK(m1.has_value() == m2.has_value());
      if (m1 && m2) CHECK(m1->action == m2->action);
    }
  }
}

TEST_CASE("store specs parse typed values at dotted paths") {
  CheckResult cr = checked("cache-fixed.p4s", two, "low");
  StoreSpec spec =
      parse_store_spec("hdr.req.query = 7:8\n# comment\n", cr.top_env, cr.top_defs);
  REQUIRE(spec.assigns.size() == 1);
  CHECK(spec.assigns[0].path == "hdr.req.query");
  CHECK(print_value(spec.assigns[0].value) == "7:8");

  CHECK_THROWS_AS(parse_store_spec("hdr.nope = 1:8\n", cr.top_env, cr.top_defs),
                  CompileError);
  CHECK_THROWS_AS(parse_store_spec("hdr.req.query = 999:8\n", cr.top_env, cr.top_defs),
                  CompileError);

  std::string text = serialize_store_spec(spec);
  StoreSpec again = parse_store_spec(text, cr.top_env, cr.top_defs);
  CHECK(serialize_store_spec(again) == text);
}

TEST_CASE("value typing accepts exactly the declared shapes") {
  TypeDefs defs = defs_for(two);
  CHECK(value_types(defs, {BitsV{5, 8}}, bit_type(8, two.bottom())));
  CHECK_FALSE(value_types(defs, {BitsV{5, 16}}, bit_type(8, two.bottom())));
  CHECK_FALSE(value_types(defs, {BoolV{true}}, bit_type(8, two.bottom())));

  BaseType stk;
  stk.kind = BaseType::Stack;
  stk.elem = bit_type(4, two.bottom());
  stk.size = 2;
  TypePtr st = make_type(stk, two.bottom());
  CHECK(value_types(defs, init_value(defs, st), st));
  Value short_stack{StackV{bit_type(4, two.bottom()), {bits(1, 4)}}};
  CHECK_FALSE(value_types(defs, short_stack, st));
}

TEST_CASE("bit magnitudes stay reduced under fuzzed arithmetic") {
  // Closure of bit<n> values under the store/value constructors: parse and
  // re-print random in-range values at random widths.
  std::mt19937_64 rng(99);
  TypeDefs defs = defs_for(two);
  for (int i = 0; i < 500; ++i) {
    uint32_t width = 1 + static_cast<uint32_t>(rng() % 64);
    uint64_t mask = width >= 64 ? ~0ull : ((1ull << width) - 1);
    uint64_t v = rng() & mask;
    TypePtr t = bit_type(width, two.bottom());
    Value parsed = parse_value(defs, t, uint128_to_string(v) + ":" + std::to_string(width));
    CHECK(value_types(defs, parsed, t));
    CHECK(std::get<BitsV>(parsed.v).v == v);
  }
}
