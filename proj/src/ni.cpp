// p4ifc/ni.cpp
#include "p4ifc/ni.hpp"

#include <json.hpp>

namespace p4ifc {

namespace {

// splitmix64; gives per-trial seeds independent of scheduling order.
uint64_t mix(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class SplitRng {
 public:
  explicit SplitRng(uint64_t seed) : state_(seed) {}
  uint64_t next() { return mix(state_ += 0x9E3779B97F4A7C15ULL); }

 private:
  uint64_t state_;
};

Value random_value(const Lattice& lattice, SecurityLabel l, const TypePtr& type,
                   SplitRng& shared, SplitRng& own) {
  const BaseType& b = type->base;
  auto& rng = lattice.leq(type->label, l) ? shared : own;
  switch (b.kind) {
    case BaseType::Bool:
      return {BoolV{(rng.next() & 1) != 0}};
    case BaseType::Int: {
      auto magnitude = static_cast<int64_t>(rng.next() % (1ULL << 32));
      return {IntV{magnitude - (1LL << 31)}};
    }
    case BaseType::Bit: {
      unsigned __int128 v = rng.next();
      if (b.width > 64) v = (v << 64) | rng.next();
      if (b.width < 128) v &= ((static_cast<unsigned __int128>(1) << b.width) - 1);
      return {BitsV{v, b.width}};
    }
    case BaseType::Unit:
      return {UnitV{}};
    case BaseType::Record: {
      RecordV r;
      for (auto& f : b.fields)
        r.fields.emplace_back(f.name, random_value(lattice, l, f.type, shared, own));
      return {std::move(r)};
    }
    case BaseType::Header: {
      HeaderV h;
      for (auto& f : b.fields)
        h.fields.emplace_back(f.name, random_value(lattice, l, f.type, shared, own));
      return {std::move(h)};
    }
    case BaseType::Stack: {
      StackV s;
      s.elem_type = b.elem;
      for (uint32_t i = 0; i < b.size; ++i)
        s.elems.push_back(random_value(lattice, l, b.elem, shared, own));
      return {std::move(s)};
    }
    default:
      throw RuntimeError("WidthMismatch", "cannot generate a non-data value");
  }
}

} // namespace

std::optional<ValueDiff> value_ni_diff(const Lattice& lattice, SecurityLabel l,
                                       const std::string& path, const Value& a,
                                       const Value& b, const TypePtr& type) {
  const BaseType& t = type->base;
  switch (t.kind) {
    case BaseType::Record:
    case BaseType::Header: {
      const auto* ra = std::get_if<RecordV>(&a.v);
      const auto* rb = std::get_if<RecordV>(&b.v);
      const auto* ha = std::get_if<HeaderV>(&a.v);
      const auto* hb = std::get_if<HeaderV>(&b.v);
      auto fields_a = ra ? &ra->fields : ha ? &ha->fields : nullptr;
      auto fields_b = rb ? &rb->fields : hb ? &hb->fields : nullptr;
      if (!fields_a || !fields_b || fields_a->size() != t.fields.size() ||
          fields_b->size() != t.fields.size())
        return ValueDiff{path, print_value(a), print_value(b)};
      for (size_t i = 0; i < t.fields.size(); ++i) {
        auto d = value_ni_diff(lattice, l, path + "." + t.fields[i].name,
                               (*fields_a)[i].second, (*fields_b)[i].second,
                               t.fields[i].type);
        if (d) return d;
      }
      return std::nullopt;
    }
    case BaseType::Stack: {
      const auto* sa = std::get_if<StackV>(&a.v);
      const auto* sb = std::get_if<StackV>(&b.v);
      if (!sa || !sb || sa->elems.size() != sb->elems.size())
        return ValueDiff{path, print_value(a), print_value(b)};
      for (size_t i = 0; i < sa->elems.size(); ++i) {
        auto d = value_ni_diff(lattice, l, path + "[" + std::to_string(i) + "]",
                               sa->elems[i], sb->elems[i], t.elem);
        if (d) return d;
      }
      return std::nullopt;
    }
    case BaseType::Function: {
      const auto* ca = std::get_if<ClosV>(&a.v);
      const auto* cb = std::get_if<ClosV>(&b.v);
      if (!ca || !cb) return ValueDiff{path, print_value(a), print_value(b)};
      // Two closures compare by captured-environment domain.
      auto dom = [](const Env& e) {
        std::vector<std::string> names;
        for (auto& [n, _] : e) names.push_back(n);
        return names;
      };
      if (dom(ca->captured) != dom(cb->captured))
        return ValueDiff{path, "<function closure>", "<function closure>"};
      return std::nullopt;
    }
    case BaseType::Table: {
      const auto* ta = std::get_if<TableV>(&a.v);
      const auto* tb = std::get_if<TableV>(&b.v);
      if (!ta || !tb) return ValueDiff{path, print_value(a), print_value(b)};
      auto dom = [](const Env& e) {
        std::vector<std::string> names;
        for (auto& [n, _] : e) names.push_back(n);
        return names;
      };
      if (dom(ta->captured) != dom(tb->captured) || ta->name != tb->name)
        return ValueDiff{path, "<table closure>", "<table closure>"};
      return std::nullopt;
    }
    default:
      // Scalar, unit, match_kind: equality is required below the observer.
      if (lattice.leq(type->label, l) && !value_equal(a, b))
        return ValueDiff{path, print_value(a), print_value(b)};
      return std::nullopt;
  }
}

std::optional<ValueDiff> low_equivalent_diff(const Lattice& lattice, SecurityLabel l,
                                             const MachineState& a, const MachineState& b,
                                             const TypeEnv& gamma) {
  auto ita = a.env.begin();
  auto itb = b.env.begin();
  for (; ita != a.env.end() && itb != b.env.end(); ++ita, ++itb) {
    if (ita->first != itb->first)
      return ValueDiff{"domain", ita->first, itb->first};
    auto git = gamma.vars.find(ita->first);
    if (git == gamma.vars.end()) continue;
    auto d = value_ni_diff(lattice, l, ita->first, a.store.at(ita->second),
                           b.store.at(itb->second), git->second);
    if (d) return d;
  }
  if (ita != a.env.end() || itb != b.env.end())
    return ValueDiff{"domain", ita == a.env.end() ? "" : ita->first,
                     itb == b.env.end() ? "" : itb->first};
  return std::nullopt;
}

bool low_equivalent(const Lattice& lattice, SecurityLabel l, const MachineState& a,
                    const MachineState& b, const TypeEnv& gamma) {
  return !low_equivalent_diff(lattice, l, a, b, gamma).has_value();
}

NiHarness::NiHarness(std::string program_name, const Program& program,
                     const CheckResult& check, const ControlPlane& cp,
                     const Lattice& lattice)
    : name_(std::move(program_name)),
      program_(program),
      check_(check),
      cp_(cp),
      lattice_(lattice) {}

std::pair<StoreSpec, StoreSpec> NiHarness::generate_state_pair(SecurityLabel l,
                                                               uint64_t seed) const {
  SplitRng shared(mix(seed ^ 0x5EEDULL));
  SplitRng own_a(mix(seed ^ 0xA11CEULL));
  SplitRng own_b(mix(seed ^ 0xB0BULL));
  StoreSpec spec_a, spec_b;
  for (auto& param : program_.control_params) {
    TypePtr t = resolve_type(check_.top_defs, param.type);
    // The two own-streams must be drawn in lockstep, so aggregates are
    // generated twice over the same shared stream snapshot.
    SplitRng shared_snapshot = shared;
    Value va = random_value(lattice_, l, t, shared, own_a);
    Value vb = random_value(lattice_, l, t, shared_snapshot, own_b);
    spec_a.assigns.push_back({param.name, std::move(va)});
    spec_b.assigns.push_back({param.name, std::move(vb)});
  }
  return {std::move(spec_a), std::move(spec_b)};
}

std::optional<Counterexample> NiHarness::run_pair(const StoreSpec& spec_a,
                                                  const StoreSpec& spec_b, SecurityLabel l,
                                                  uint64_t trial_seed) const {
  Runner runner(program_, cp_, check_.sigs, lattice_);
  auto make_cx = [&](const std::string& item, const std::string& va, const std::string& vb) {
    return Counterexample{serialize_store_spec(spec_a), serialize_store_spec(spec_b),
                          lattice_.name(l), item, va, vb, trial_seed};
  };

  Signal decl_sig_a = Signal::cont();
  Signal decl_sig_b = Signal::cont();
  MachineState state_a = runner.prepare(spec_a, &decl_sig_a);
  MachineState state_b = runner.prepare(spec_b, &decl_sig_b);

  size_t store_before_a = state_a.store.size();
  size_t store_before_b = state_b.store.size();
  std::vector<std::pair<Loc, Value>> closures_a, closures_b;
  for (Loc loc = 0; loc < store_before_a; ++loc)
    if (state_a.store.at(loc).is_closure()) closures_a.emplace_back(loc, state_a.store.at(loc));
  for (Loc loc = 0; loc < store_before_b; ++loc)
    if (state_b.store.at(loc).is_closure()) closures_b.emplace_back(loc, state_b.store.at(loc));
  Env env_before_a = state_a.env;
  Env env_before_b = state_b.env;

  Signal sig_a = decl_sig_a.kind == Signal::Cont ? runner.run_apply(state_a) : decl_sig_a;
  Signal sig_b = decl_sig_b.kind == Signal::Cont ? runner.run_apply(state_b) : decl_sig_b;

  // (ii) signals must agree in form; paired returns compare as values.
  if (sig_a.kind != sig_b.kind)
    return make_cx("signal", sig_a.name(), sig_b.name());
  if (sig_a.kind == Signal::Ret && !value_equal(sig_a.value, sig_b.value))
    return make_cx("signal", print_value(sig_a.value), print_value(sig_b.value));

  // (i) final states agree below the observer.
  if (auto d = low_equivalent_diff(lattice_, l, state_a, state_b, check_.final_env))
    return make_cx(d->path, d->value_a, d->value_b);

  // (iv) store and environment domains only grow.
  if (state_a.store.size() < store_before_a || state_b.store.size() < store_before_b)
    return make_cx("store-domain", std::to_string(state_a.store.size()),
                   std::to_string(state_b.store.size()));
  for (auto& [name, loc] : env_before_a) {
    auto it = state_a.env.find(name);
    if (it == state_a.env.end() || it->second != loc)
      return make_cx("env-domain", name, "");
  }
  for (auto& [name, loc] : env_before_b) {
    auto it = state_b.env.find(name);
    if (it == state_b.env.end() || it->second != loc)
      return make_cx("env-domain", "", name);
  }

  // Closure-typed locations never change.
  for (auto& [loc, before] : closures_a)
    if (!value_equal(state_a.store.at(loc), before))
      return make_cx("closure@" + std::to_string(loc), "changed", "");
  for (auto& [loc, before] : closures_b)
    if (!value_equal(state_b.store.at(loc), before))
      return make_cx("closure@" + std::to_string(loc), "", "changed");

  // Store-typing preservation: every location still types at its recorded
  // store type.
  for (Loc loc = 0; loc < state_a.store.size(); ++loc)
    if (!value_types(state_a.defs, state_a.store.at(loc), state_a.store.type_at(loc)))
      return make_cx("store-typing@" + std::to_string(loc),
                     print_value(state_a.store.at(loc)), "");
  for (Loc loc = 0; loc < state_b.store.size(); ++loc)
    if (!value_types(state_b.defs, state_b.store.at(loc), state_b.store.type_at(loc)))
      return make_cx("store-typing@" + std::to_string(loc), "",
                     print_value(state_b.store.at(loc)));

  return std::nullopt;
}

NiReport NiHarness::check_noninterference(SecurityLabel l, int trials, uint64_t seed) const {
  NiReport report;
  report.program = name_;
  report.observer = lattice_.name(l);
  report.trials = trials;
  report.seed = seed;
  for (int i = 0; i < trials; ++i) {
    uint64_t trial_seed = mix(seed ^ (static_cast<uint64_t>(i) + 1));
    auto [spec_a, spec_b] = generate_state_pair(l, trial_seed);
    // Self-check: the generated pair is low-equivalent by construction.
    for (size_t k = 0; k < spec_a.assigns.size(); ++k) {
      TypePtr t = type_at_path(check_.top_env, check_.top_defs, spec_a.assigns[k].path);
      if (auto d = value_ni_diff(lattice_, l, spec_a.assigns[k].path,
                                 spec_a.assigns[k].value, spec_b.assigns[k].value, t)) {
        report.failures.push_back({serialize_store_spec(spec_a),
                                   serialize_store_spec(spec_b), lattice_.name(l),
                                   "generator:" + d->path, d->value_a, d->value_b,
                                   trial_seed});
      }
    }
    if (auto cx = run_pair(spec_a, spec_b, l, trial_seed)) report.failures.push_back(*cx);
  }
  return report;
}

std::optional<Counterexample> NiHarness::replay(const Counterexample& cx) const {
  StoreSpec spec_a = parse_store_spec(cx.store_spec_a, check_.top_env, check_.top_defs);
  StoreSpec spec_b = parse_store_spec(cx.store_spec_b, check_.top_env, check_.top_defs);
  return run_pair(spec_a, spec_b, lattice_.label(cx.observer), cx.trial_seed);
}

std::string ni_report_json(const NiReport& report) {
  nlohmann::json j;
  j["program"] = report.program;
  j["observer"] = report.observer;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["failures"] = nlohmann::json::array();
  for (auto& f : report.failures) {
    nlohmann::json cx;
    cx["item"] = f.item;
    cx["value_a"] = f.value_a;
    cx["value_b"] = f.value_b;
    cx["store_spec_a"] = f.store_spec_a;
    cx["store_spec_b"] = f.store_spec_b;
    cx["trial_seed"] = f.trial_seed;
    j["failures"].push_back(std::move(cx));
  }
  return j.dump(2);
}

} // namespace p4ifc
