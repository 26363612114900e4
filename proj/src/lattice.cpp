// p4ifc/lattice.cpp
#include "p4ifc/lattice.hpp"

#include <optional>
#include <sstream>

namespace p4ifc {

Lattice::Lattice(std::vector<std::string> elements,
                 std::vector<std::pair<std::string, std::string>> covers) {
  if (elements.empty()) throw LatticeError("lattice has no elements");
  names_ = std::move(elements);
  for (uint32_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second)
      throw LatticeError("duplicate lattice element '" + names_[i] + "'");
  }

  const size_t n = names_.size();
  leq_.assign(n * n, false);
  for (size_t i = 0; i < n; ++i) leq_[i * n + i] = true;
  for (auto& [lo, hi] : covers) {
    auto a = index_.find(lo);
    auto b = index_.find(hi);
    if (a == index_.end()) throw LatticeError("unknown label '" + lo + "' in order");
    if (b == index_.end()) throw LatticeError("unknown label '" + hi + "' in order");
    leq_[a->second * n + b->second] = true;
  }
  // Warshall closure of the declared cover pairs.
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (leq_[i * n + k])
        for (size_t j = 0; j < n; ++j)
          if (leq_[k * n + j]) leq_[i * n + j] = true;

  // Antisymmetry: a <= b <= a forces a == b.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && leq_[i * n + j] && leq_[j * n + i])
        throw LatticeError("order is cyclic: '" + names_[i] + "' and '" +
                           names_[j] + "' are mutually ordered");

  // Unique lub/glb for every pair, found by scanning all elements.
  auto unique_bound = [&](size_t a, size_t b, bool upper) -> std::optional<size_t> {
    std::vector<size_t> bounds;
    for (size_t c = 0; c < n; ++c) {
      bool ok = upper ? (leq_[a * n + c] && leq_[b * n + c])
                      : (leq_[c * n + a] && leq_[c * n + b]);
      if (ok) bounds.push_back(c);
    }
    for (size_t c : bounds) {
      bool least = true;
      for (size_t d : bounds) {
        bool cd = upper ? leq_[c * n + d] : leq_[d * n + c];
        if (!cd) { least = false; break; }
      }
      if (least) return c;
    }
    return std::nullopt;
  };

  join_.assign(n * n, 0);
  meet_.assign(n * n, 0);
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = 0; b < n; ++b) {
      auto j = unique_bound(a, b, true);
      if (!j) throw LatticeError("no least upper bound for '" + names_[a] +
                                 "' and '" + names_[b] + "'");
      auto m = unique_bound(a, b, false);
      if (!m) throw LatticeError("no greatest lower bound for '" + names_[a] +
                                 "' and '" + names_[b] + "'");
      join_[a * n + b] = static_cast<uint32_t>(*j);
      meet_[a * n + b] = static_cast<uint32_t>(*m);
    }
  }

  std::optional<size_t> bot, top;
  for (size_t x = 0; x < n; ++x) {
    bool isb = true, ist = true;
    for (size_t y = 0; y < n; ++y) {
      if (!leq_[x * n + y]) isb = false;
      if (!leq_[y * n + x]) ist = false;
    }
    if (isb) bot = x;
    if (ist) top = x;
  }
  if (!bot) throw LatticeError("lattice has no bottom element");
  if (!top) throw LatticeError("lattice has no top element");
  bottom_ = {static_cast<uint32_t>(*bot)};
  top_ = {static_cast<uint32_t>(*top)};
}

const Lattice& Lattice::two_point() {
  static const Lattice l({"low", "high"}, {{"low", "high"}});
  return l;
}

const Lattice& Lattice::diamond() {
  static const Lattice l({"bot", "A", "B", "top"},
                         {{"bot", "A"}, {"bot", "B"}, {"A", "top"}, {"B", "top"}});
  return l;
}

Lattice Lattice::parse(const std::string& source) {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;
  std::optional<std::string> declared_bottom, declared_top;

  std::istringstream in(source);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto fail = [&](const std::string& msg) {
      throw LatticeError("lattice file line " + std::to_string(lineno) + ": " + msg);
    };
    if (kw == "elements:") {
      std::string e;
      while (ls >> e) elements.push_back(e);
    } else if (kw == "bottom:") {
      std::string e;
      if (!(ls >> e)) fail("expected a label after bottom:");
      declared_bottom = e;
    } else if (kw == "top:") {
      std::string e;
      if (!(ls >> e)) fail("expected a label after top:");
      declared_top = e;
    } else if (kw == "order:") {
      std::string a, le, b;
      if (!(ls >> a >> le >> b) || le != "<=") fail("expected 'order: a <= b'");
      covers.emplace_back(a, b);
    } else {
      fail("unknown directive '" + kw + "'");
    }
  }
  if (elements.empty()) throw LatticeError("lattice file declares no elements");

  Lattice l(std::move(elements), std::move(covers));
  if (declared_bottom && l.name(l.bottom()) != *declared_bottom)
    throw LatticeError("declared bottom '" + *declared_bottom +
                       "' is not the least element");
  if (declared_top && l.name(l.top()) != *declared_top)
    throw LatticeError("declared top '" + *declared_top + "' is not the greatest element");
  return l;
}

SecurityLabel Lattice::label(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw LatticeError("unknown label '" + name + "'");
  return {it->second};
}

std::vector<SecurityLabel> Lattice::elements() const {
  std::vector<SecurityLabel> out;
  out.reserve(size());
  for (uint32_t i = 0; i < size(); ++i) out.push_back({i});
  return out;
}

void Lattice::check(SecurityLabel l) const {
  if (l.id >= names_.size()) throw LatticeError("label out of range");
}

bool Lattice::leq(SecurityLabel a, SecurityLabel b) const {
  check(a);
  check(b);
  return leq_[a.id * size() + b.id];
}

SecurityLabel Lattice::join(SecurityLabel a, SecurityLabel b) const {
  check(a);
  check(b);
  return {join_[a.id * size() + b.id]};
}

SecurityLabel Lattice::meet(SecurityLabel a, SecurityLabel b) const {
  check(a);
  check(b);
  return {meet_[a.id * size() + b.id]};
}

} // namespace p4ifc
