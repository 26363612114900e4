"""Smoke tests for the _p4ifc extension module."""

import _p4ifc


def case_file(name):
    return _p4ifc.corpus_file(name)


def test_lattice_ops():
    two = _p4ifc.Lattice("two-point")
    assert two.leq("low", "high")
    assert not two.leq("high", "low")
    assert two.join("low", "high") == "high"
    assert two.meet("low", "high") == "low"
    assert two.bottom() == "low" and two.top() == "high"

    dia = _p4ifc.Lattice("diamond")
    assert not dia.leq("A", "B")
    assert dia.join("A", "B") == "top"
    assert dia.meet("A", "B") == "bot"


def test_lattice_file_format():
    chain = _p4ifc.Lattice("elements: a b c\norder: a <= b\norder: b <= c\n")
    assert chain.leq("a", "c")
    assert chain.elements() == ["a", "b", "c"]


def test_check_fixed_and_buggy():
    fixed = _p4ifc.check(case_file("topology-fixed.p4s"), lattice="two-point", pc="low")
    assert fixed["accepted"]
    assert fixed["diagnostics"] == []

    buggy = _p4ifc.check(case_file("topology-buggy.p4s"))
    assert not buggy["accepted"]
    assert len(buggy["diagnostics"]) == 1
    diag = buggy["diagnostics"][0]
    assert diag["rule"] == "T-Assign"
    assert diag["line"] == 38
    assert diag["found_label"] == "high"
    assert diag["required_label"] == "low"


def test_run_cache_hit():
    out = _p4ifc.run(
        case_file("cache-fixed.p4s"),
        entries=case_file("cache-fixed.entries"),
        store=case_file("cache-fixed.store"),
    )
    assert out["signal"] == "cont"
    assert "hit = true" in out["dump"]
    assert "value = 99:32" in out["dump"]


def test_nicheck_finds_the_topology_leak():
    report = _p4ifc.nicheck(
        case_file("topology-buggy.p4s"),
        entries=case_file("topology-buggy.entries"),
        observer="low",
        trials=10,
        seed=7,
        unchecked=True,
    )
    assert report["failures"]
    assert any(f["item"] == "hdr.ipv4.ttl" for f in report["failures"])


def test_nicheck_clean_on_fixed():
    report = _p4ifc.nicheck(
        case_file("topology-fixed.p4s"),
        entries=case_file("topology-fixed.entries"),
        observer="low",
        trials=25,
        seed=7,
    )
    assert report["failures"] == []


def test_corpus_listing():
    cases = _p4ifc.corpus_cases()
    names = {c["name"] for c in cases}
    assert "cache-buggy" in names and "isolation-bob" in names
    bob = next(c for c in cases if c["name"] == "isolation-bob")
    assert bob["expect_accept"] and bob["check_pc"] == "B"
