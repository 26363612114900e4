// p4ifc/lattice.hpp - finite security lattices
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace p4ifc {

/// A security label is an index into its lattice's element table. Labels are
/// meaningful only relative to the lattice that produced them.
struct SecurityLabel {
  uint32_t id = 0;

  friend bool operator==(SecurityLabel a, SecurityLabel b) { return a.id == b.id; }
  friend bool operator!=(SecurityLabel a, SecurityLabel b) { return a.id != b.id; }
  friend bool operator<(SecurityLabel a, SecurityLabel b) { return a.id < b.id; }
};

class LatticeError : public std::runtime_error {
 public:
  explicit LatticeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Finite lattice of security labels. Immutable once constructed; the
/// reflexive-transitive closure and join/meet tables are precomputed, so
/// queries are table lookups and the object is safe to share across threads.
class Lattice {
 public:
  /// Builds a lattice from element names and Hasse-style cover pairs
  /// (lo, hi). Throws LatticeError if the declared order is not a lattice
  /// (cycle, missing unique lub/glb, no bottom or top).
  Lattice(std::vector<std::string> elements,
          std::vector<std::pair<std::string, std::string>> covers);

  static const Lattice& two_point();
  static const Lattice& diamond();

  /// Parses the line-oriented lattice file format:
  ///   elements: a b c
  ///   bottom: a
  ///   top: c
  ///   order: a <= b
  /// '#' starts a comment. "two-point" and "diamond" are available as
  /// built-in names without a file.
  static Lattice parse(const std::string& source);

  SecurityLabel label(const std::string& name) const;
  bool has_label(const std::string& name) const { return index_.count(name) != 0; }
  const std::string& name(SecurityLabel l) const { return names_.at(l.id); }

  size_t size() const { return names_.size(); }
  std::vector<SecurityLabel> elements() const;

  bool leq(SecurityLabel a, SecurityLabel b) const;
  SecurityLabel join(SecurityLabel a, SecurityLabel b) const;
  SecurityLabel meet(SecurityLabel a, SecurityLabel b) const;

  SecurityLabel bottom() const { return bottom_; }
  SecurityLabel top() const { return top_; }

 private:
  void check(SecurityLabel l) const;

  std::vector<std::string> names_;
  std::map<std::string, uint32_t> index_;
  std::vector<bool> leq_;        // n*n closure table
  std::vector<uint32_t> join_;   // n*n
  std::vector<uint32_t> meet_;   // n*n
  SecurityLabel bottom_;
  SecurityLabel top_;
};

} // namespace p4ifc
