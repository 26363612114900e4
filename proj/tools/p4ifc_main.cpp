// p4ifc - checker, interpreter, and NI harness for annotated control blocks
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "p4ifc/corpus.hpp"
#include "p4ifc/ni.hpp"

namespace fs = std::filesystem;
using namespace p4ifc;

namespace {

enum ExitStatus {
  kAccept = 0,   // accept / pass
  kReject = 1,   // reject / NI failure / exit signal
  kUsage = 2,    // usage or I/O error
  kInternal = 3,
};

bool color_enabled() {
  const char* env = std::getenv("P4IFC_COLOR");
  if (env) return std::string(env) == "1";
  return false;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Lattice resolve_lattice(const std::string& name_or_path) {
  if (name_or_path == "two-point") return Lattice::two_point();
  if (name_or_path == "diamond") return Lattice::diamond();
  return Lattice::parse(read_file(name_or_path));
}

void print_diagnostics(const std::string& file, const Verdict& v, bool json) {
  for (auto& d : v.diagnostics) {
    if (json) {
      nlohmann::json j;
      j["file"] = file;
      j["line"] = d.span.line;
      j["col"] = d.span.col;
      j["rule"] = d.rule;
      j["message"] = d.message;
      j["found_label"] = d.found_label ? nlohmann::json(*d.found_label) : nlohmann::json();
      j["required_label"] =
          d.required_label ? nlohmann::json(*d.required_label) : nlohmann::json();
      std::cout << j.dump() << "\n";
    } else {
      const char* em = color_enabled() ? "\x1b[31m" : "";
      const char* reset = color_enabled() ? "\x1b[0m" : "";
      std::cout << file << ":" << d.span.line << ":" << d.span.col << ": " << em << d.rule
                << reset << ": " << d.message;
      if (d.found_label && d.required_label)
        std::cout << " (found " << *d.found_label << ", required " << *d.required_label << ")";
      std::cout << "\n";
    }
  }
}

struct LoadedProgram {
  Program program;
  Lattice lattice;
  CheckResult check;
};

LoadedProgram load_and_check(const std::string& file, const std::string& lattice_arg,
                             const std::string& pc_arg) {
  LoadedProgram lp{Program{}, resolve_lattice(lattice_arg), CheckResult{}};
  std::string source = read_file(file);
  lp.program = parse_program(source, lp.lattice);
  SecurityLabel pc = pc_arg.empty() ? lp.lattice.bottom() : lp.lattice.label(pc_arg);
  lp.check = check_program_full(lp.program, lp.lattice, pc);
  return lp;
}

int cmd_check(const std::string& file, const std::string& lattice_arg,
              const std::string& pc_arg, bool json) {
  LoadedProgram lp = load_and_check(file, lattice_arg, pc_arg);
  print_diagnostics(file, lp.check.verdict, json);
  if (!json)
    std::cout << (lp.check.verdict.accepted ? "accepted" : "rejected") << "\n";
  return lp.check.verdict.accepted ? kAccept : kReject;
}

ControlPlane load_cp(const LoadedProgram& lp, const std::string& entries_path) {
  if (entries_path.empty()) return {};
  return load_entries(read_file(entries_path), lp.check.sigs, lp.check.top_defs);
}

StoreSpec load_store(const LoadedProgram& lp, const std::string& store_path) {
  if (store_path.empty()) return {};
  return parse_store_spec(read_file(store_path), lp.check.top_env, lp.check.top_defs);
}

int cmd_run(const std::string& file, const std::string& lattice_arg, const std::string& pc_arg,
            const std::string& entries_path, const std::string& store_path, bool unchecked) {
  LoadedProgram lp = load_and_check(file, lattice_arg, pc_arg);
  if (!lp.check.verdict.accepted && !unchecked) {
    print_diagnostics(file, lp.check.verdict, false);
    std::cerr << "program is rejected; pass --unchecked to run it anyway\n";
    return kReject;
  }
  ControlPlane cp = load_cp(lp, entries_path);
  StoreSpec spec = load_store(lp, store_path);
  Runner runner(lp.program, cp, lp.check.sigs, lp.lattice);
  RunResult result = runner.run(spec);
  std::cout << Runner::dump(result.state, result.sig);
  return result.sig.kind == Signal::Exit ? kReject : kAccept;
}

int cmd_nicheck(const std::string& file, const std::string& lattice_arg,
                const std::string& pc_arg, const std::string& entries_path,
                const std::string& observer, int trials, uint64_t seed, bool unchecked) {
  LoadedProgram lp = load_and_check(file, lattice_arg, pc_arg);
  if (!lp.check.verdict.accepted && !unchecked) {
    print_diagnostics(file, lp.check.verdict, false);
    std::cerr << "program is rejected; pass --unchecked to test it anyway\n";
    return kReject;
  }
  ControlPlane cp = load_cp(lp, entries_path);
  SecurityLabel l = observer.empty() ? lp.lattice.bottom() : lp.lattice.label(observer);
  NiHarness harness(fs::path(file).stem().string(), lp.program, lp.check, cp, lp.lattice);
  NiReport report = harness.check_noninterference(l, trials, seed);
  std::cout << ni_report_json(report) << "\n";
  return report.failures.empty() ? kAccept : kReject;
}

int cmd_corpus(const std::string& dir, int trials, uint64_t seed) {
  // Sources come from the embedded corpus or, with --dir, from loose files.
  auto file_text = [&](const std::string& name) -> std::string {
    if (dir.empty()) return corpus_file(name);
    return read_file((fs::path(dir) / name).string());
  };
  if (!dir.empty()) {
    if (!fs::is_directory(dir) || fs::is_empty(dir)) {
      std::cerr << "corpus directory '" << dir << "' is missing or empty\n";
      return kUsage;
    }
  }

  bool all_ok = true;
  for (auto& c : list_cases()) {
    std::ostringstream line;
    line << c.name << ": ";
    bool ok = true;
    try {
      Lattice lattice = resolve_lattice(c.lattice);
      Program p = parse_program(file_text(c.source_file), lattice);
      CheckResult cr = check_program_full(p, lattice, lattice.label(c.check_pc));
      if (cr.verdict.accepted != c.expect_accept) {
        ok = false;
        line << "verdict mismatch (got " << (cr.verdict.accepted ? "accept" : "reject") << ")";
      } else if (!c.expect_accept) {
        if (cr.verdict.diagnostics.size() != c.expected_diags.size()) {
          ok = false;
          line << "expected " << c.expected_diags.size() << " diagnostics, got "
               << cr.verdict.diagnostics.size();
        } else {
          for (size_t i = 0; i < c.expected_diags.size(); ++i) {
            const auto& got = cr.verdict.diagnostics[i];
            const auto& want = c.expected_diags[i];
            if (got.rule != want.rule || got.span.line != want.line) {
              ok = false;
              line << "diagnostic " << i << " is " << got.rule << "@" << got.span.line
                   << ", expected " << want.rule << "@" << want.line << "; ";
            }
          }
        }
      }
      if (ok && c.expect_accept) {
        ControlPlane cp = load_entries(file_text(c.entries_file), cr.sigs, cr.top_defs);
        NiHarness harness(c.name, p, cr, cp, lattice);
        for (auto& obs : c.ni_observers) {
          NiReport rep = harness.check_noninterference(lattice.label(obs), trials, seed);
          if (!rep.failures.empty()) {
            ok = false;
            line << "NI failures at observer " << obs << " (" << rep.failures.size() << "); ";
          }
        }
      }
    } catch (const std::exception& e) {
      ok = false;
      line << "error: " << e.what();
    }
    if (ok) line << "ok";
    std::cout << line.str() << "\n";
    all_ok = all_ok && ok;
  }
  return all_ok ? kAccept : kReject;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"IFC checker and reference interpreter for annotated control blocks"};
  app.require_subcommand(1);

  std::string file, lattice_arg = "two-point", pc_arg, entries_path, store_path;
  std::string observer, corpus_dir;
  bool json = false, unchecked = false;
  int trials = 200;
  uint64_t seed = 1;

  auto* check = app.add_subcommand("check", "typecheck a program");
  check->add_option("file", file)->required();
  check->add_option("--lattice", lattice_arg, "built-in name or lattice file");
  check->add_option("--pc", pc_arg, "pc label (default: bottom)");
  check->add_flag("--json", json, "JSON-lines diagnostics");

  auto* run = app.add_subcommand("run", "run a program to its final store");
  run->add_option("file", file)->required();
  run->add_option("--lattice", lattice_arg);
  run->add_option("--pc", pc_arg);
  run->add_option("--entries", entries_path, "control-plane entries file");
  run->add_option("--store", store_path, "store-init file");
  run->add_flag("--unchecked", unchecked, "run even if the checker rejects");

  auto* nicheck = app.add_subcommand("nicheck", "dual-execution non-interference testing");
  nicheck->add_option("file", file)->required();
  nicheck->add_option("--lattice", lattice_arg);
  nicheck->add_option("--pc", pc_arg);
  nicheck->add_option("--entries", entries_path);
  nicheck->add_option("--observer", observer, "observer label (default: bottom)");
  nicheck->add_option("--trials", trials);
  nicheck->add_option("--seed", seed);
  nicheck->add_flag("--unchecked", unchecked);

  auto* corpus = app.add_subcommand("corpus", "run the bundled case studies");
  corpus->add_option("--dir", corpus_dir, "load cases from a directory instead");
  corpus->add_option("--trials", trials);
  corpus->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kAccept : kUsage;
  }

  try {
    if (*check) return cmd_check(file, lattice_arg, pc_arg, json);
    if (*run) return cmd_run(file, lattice_arg, pc_arg, entries_path, store_path, unchecked);
    if (*nicheck)
      return cmd_nicheck(file, lattice_arg, pc_arg, entries_path, observer, trials, seed,
                         unchecked);
    if (*corpus) return cmd_corpus(corpus_dir, trials, seed);
  } catch (const CompileError& e) {
    std::cerr << "error: " << e.kind << " at " << e.span.line << ":" << e.span.col << ": "
              << e.what() << "\n";
    return kUsage;
  } catch (const LatticeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
