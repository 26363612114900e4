// p4ifc/ni.hpp - empirical non-interference testing by dual execution
#pragma once

#include <cstdint>

#include "p4ifc/interp.hpp"

namespace p4ifc {

struct Counterexample {
  std::string store_spec_a;
  std::string store_spec_b;
  std::string observer;
  std::string item;  // disagreeing variable path, or "signal"
  std::string value_a;
  std::string value_b;
  uint64_t trial_seed = 0;
};

struct NiReport {
  std::string program;
  std::string observer;
  int trials = 0;
  uint64_t seed = 0;
  std::vector<Counterexample> failures;
};

std::string ni_report_json(const NiReport& report);

/// First observable disagreement between two values at a security type:
/// scalars compare when their label flows below l, aggregates compare
/// component-wise at component labels, closures compare by captured-domain
/// equality. nullopt means the values are l-equivalent.
struct ValueDiff {
  std::string path;
  std::string value_a;
  std::string value_b;
};
std::optional<ValueDiff> value_ni_diff(const Lattice& lattice, SecurityLabel l,
                                       const std::string& path, const Value& a,
                                       const Value& b, const TypePtr& type);

/// Below-l equivalence of two machine states under Gamma. Reports the first
/// disagreeing variable; "domain" if the environments differ in shape.
std::optional<ValueDiff> low_equivalent_diff(const Lattice& lattice, SecurityLabel l,
                                             const MachineState& a, const MachineState& b,
                                             const TypeEnv& gamma);
bool low_equivalent(const Lattice& lattice, SecurityLabel l, const MachineState& a,
                    const MachineState& b, const TypeEnv& gamma);

/// Dual-execution harness for one checked (or deliberately unchecked)
/// program. Both runs share the control plane.
class NiHarness {
 public:
  NiHarness(std::string program_name, const Program& program, const CheckResult& check,
            const ControlPlane& cp, const Lattice& lattice);

  /// Seeded pair of store specs over the control parameters: leaves at or
  /// below l get equal values, others draw independently.
  std::pair<StoreSpec, StoreSpec> generate_state_pair(SecurityLabel l, uint64_t seed) const;

  /// Runs the two specs and checks the NI clauses: final below-l
  /// equivalence, signal agreement, domain monotonicity, closure-location
  /// immutability, and store-typing preservation.
  std::optional<Counterexample> run_pair(const StoreSpec& spec_a, const StoreSpec& spec_b,
                                         SecurityLabel l, uint64_t trial_seed = 0) const;

  NiReport check_noninterference(SecurityLabel l, int trials, uint64_t seed) const;

  /// Re-runs a recorded counterexample; the disagreement must reproduce.
  std::optional<Counterexample> replay(const Counterexample& cx) const;

 private:
  std::string name_;
  const Program& program_;
  const CheckResult& check_;
  const ControlPlane& cp_;
  const Lattice& lattice_;
};

} // namespace p4ifc
