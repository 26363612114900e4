#include <doctest.h>

#include "p4ifc/lattice.hpp"

using namespace p4ifc;

TEST_CASE("two-point order") {
  const Lattice& l = Lattice::two_point();
  CHECK(l.leq(l.label("low"), l.label("high")));
  CHECK_FALSE(l.leq(l.label("high"), l.label("low")));
  for (auto x : l.elements()) CHECK(l.leq(x, x));
  CHECK(l.join(l.label("low"), l.label("high")) == l.label("high"));
  CHECK(l.meet(l.label("low"), l.label("high")) == l.label("low"));
  CHECK(l.bottom() == l.label("low"));
  CHECK(l.top() == l.label("high"));
}

TEST_CASE("diamond order") {
  const Lattice& l = Lattice::diamond();
  auto A = l.label("A");
  auto B = l.label("B");
  CHECK_FALSE(l.leq(A, B));
  CHECK_FALSE(l.leq(B, A));
  CHECK(l.join(A, B) == l.top());
  CHECK(l.meet(A, B) == l.bottom());
  CHECK(l.join(l.bottom(), A) == A);
  CHECK(l.meet(l.top(), B) == B);
}

TEST_CASE("unknown labels are rejected") {
  const Lattice& l = Lattice::two_point();
  CHECK_THROWS_AS(l.label("up"), LatticeError);
}

TEST_CASE("lattice file format") {
  Lattice l = Lattice::parse(
      "# three-point chain\n"
      "elements: a b c\n"
      "bottom: a\n"
      "top: c\n"
      "order: a <= b\n"
      "order: b <= c\n");
  CHECK(l.leq(l.label("a"), l.label("c")));  // transitive closure
  CHECK(l.join(l.label("a"), l.label("b")) == l.label("b"));
}

TEST_CASE("antisymmetry violations are not lattices") {
  CHECK_THROWS_AS(Lattice::parse("elements: a b\norder: a <= b\norder: b <= a\n"),
                  LatticeError);
}

TEST_CASE("posets without unique bounds are rejected") {
  // Two maximal elements: no top, no unique lub for {a, b}.
  CHECK_THROWS_AS(Lattice({"x", "a", "b"}, {{"x", "a"}, {"x", "b"}}), LatticeError);
}

// Brute-force oracles, independent of the Lattice implementation: closure by
// iterated composition, bounds by scanning.
namespace {

struct Oracle {
  size_t n;
  std::vector<bool> le;

  Oracle(size_t n, const std::vector<std::pair<size_t, size_t>>& covers) : n(n), le(n * n) {
    for (size_t i = 0; i < n; ++i) le[i * n + i] = true;
    for (auto& [a, b] : covers) le[a * n + b] = true;
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          for (size_t k = 0; k < n; ++k)
            if (le[i * n + j] && le[j * n + k] && !le[i * n + k]) {
              le[i * n + k] = true;
              changed = true;
            }
    }
  }

  bool leq(size_t a, size_t b) const { return le[a * n + b]; }

  // Least upper bound by scanning every candidate.
  int lub(size_t a, size_t b) const {
    int best = -1;
    for (size_t c = 0; c < n; ++c) {
      if (!leq(a, c) || !leq(b, c)) continue;
      if (best < 0 || leq(c, static_cast<size_t>(best))) best = static_cast<int>(c);
    }
    return best;
  }

  int glb(size_t a, size_t b) const {
    int best = -1;
    for (size_t c = 0; c < n; ++c) {
      if (!leq(c, a) || !leq(c, b)) continue;
      if (best < 0 || leq(static_cast<size_t>(best), c)) best = static_cast<int>(c);
    }
    return best;
  }
};

void check_against_oracle(const Lattice& l, const std::vector<std::pair<size_t, size_t>>& covers) {
  Oracle oracle(l.size(), covers);
  for (auto a : l.elements()) {
    for (auto b : l.elements()) {
      CHECK(l.leq(a, b) == oracle.leq(a.id, b.id));
      CHECK(l.join(a, b).id == static_cast<uint32_t>(oracle.lub(a.id, b.id)));
      CHECK(l.meet(a, b).id == static_cast<uint32_t>(oracle.glb(a.id, b.id)));
    }
  }
}

} // namespace

TEST_CASE("leq/join/meet agree with the brute-force oracle") {
  check_against_oracle(Lattice::two_point(), {{0, 1}});
  check_against_oracle(Lattice::diamond(), {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("lattice laws hold exhaustively on small lattices") {
  for (const Lattice* lp : {&Lattice::two_point(), &Lattice::diamond()}) {
    const Lattice& l = *lp;
    for (auto x : l.elements()) {
      for (auto y : l.elements()) {
        auto j = l.join(x, y);
        CHECK(l.leq(x, j));
        CHECK(l.leq(y, j));
        for (auto z : l.elements())
          if (l.leq(x, z) && l.leq(y, z)) CHECK(l.leq(j, z));
        auto m = l.meet(x, y);
        CHECK(l.leq(m, x));
        CHECK(l.leq(m, y));
        for (auto z : l.elements())
          if (l.leq(z, x) && l.leq(z, y)) CHECK(l.leq(z, m));
        CHECK(l.join(x, y) == l.join(y, x));
        CHECK(l.meet(x, y) == l.meet(y, x));
        CHECK(l.join(x, x) == x);
        CHECK(l.meet(x, x) == x);
        for (auto z : l.elements()) {
          CHECK(l.join(l.join(x, y), z) == l.join(x, l.join(y, z)));
          CHECK(l.meet(l.meet(x, y), z) == l.meet(x, l.meet(y, z)));
        }
      }
    }
  }
}
