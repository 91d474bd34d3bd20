// SPDX-License-Identifier: Apache-2.0
//
// helpkit: HeLP constraints for torsion units of integral group rings.
//
//   helpkit validate TABLE
//   helpkit solve --table TABLE --order K [--mode paper|full] [--characters LIST]
//   helpkit kimmerle --table TABLE [--mode paper|full]
//   helpkit spectrum --table TABLE [--mode paper|full] [--full] [--out FILE]
//
// Exit status: 0 success (OPEN verdicts included), 1 table validation
// failure, 2 input or usage error, 3 resource cap.

#include "helpkit/constraints.hpp"
#include "helpkit/ctbl.hpp"
#include "helpkit/engine.hpp"
#include "helpkit/report.hpp"
#include "helpkit/solver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifndef HELPKIT_DEFAULT_MANIFEST
#define HELPKIT_DEFAULT_MANIFEST ""
#endif

namespace {

using namespace helpkit;

enum Exit { kOk = 0, kInvalid = 1, kUsage = 2, kCap = 3 };

struct Common {
  std::string table;
  std::string mode = "full";
  std::string manifest;
  std::string out;
  unsigned workers = 1;
  std::size_t max_solutions = 1'000'000;
  bool json = false;
  bool text = false;
  bool verbose = false;
  bool timings = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

engine::SolveOptions make_options(const Common& c) {
  engine::SolveOptions o;
  o.mode = c.mode == "paper" ? engine::Mode::Paper : engine::Mode::Full;
  o.workers = std::max(1u, c.workers);
  o.solution_cap = c.max_solutions;
  if (o.mode == engine::Mode::Paper) {
    const std::string path = c.manifest.empty() ? HELPKIT_DEFAULT_MANIFEST : c.manifest;
    std::ifstream probe(path);
    if (probe) {
      o.manifest = engine::SelectionManifest::load(path);
    } else if (!c.manifest.empty()) {
      throw UsageError("cannot read selection manifest " + c.manifest);
    } else {
      std::cerr << "warning: no selection manifest found; paper mode uses the full selection\n";
    }
  }
  return o;
}

void emit(const Common& c, const report::RunReport& r, bool json_default) {
  const bool as_json = c.json || (json_default && !c.text);
  const std::string body = as_json ? report::dump(r) : report::render_text(r);
  if (c.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(c.out);
  if (!f) {
    throw UsageError("cannot write " + c.out);
  }
  f << body;
}

report::RunReport new_report(const ctbl::TableBundle& b, const Common& c) {
  report::RunReport r;
  r.group = b.table.group_name;
  r.mode = c.mode;
  return r;
}

// Solves one order, turning per-order resource and unboundedness failures
// into an annotated row.
report::OrderRow solve_row(engine::Engine& e, std::int64_t k, bool timings) {
  const auto t0 = std::chrono::steady_clock::now();
  report::OrderRow row;
  try {
    row = report::summarize(e.solve(k));
  } catch (const std::exception& ex) {
    const bool known = dynamic_cast<const solver::Unbounded*>(&ex) ||
                       dynamic_cast<const solver::CapExceeded*>(&ex) ||
                       dynamic_cast<const engine::ProfileCapExceeded*>(&ex);
    if (!known) {
      throw;
    }
    row.k = k;
    row.status = engine::to_string(engine::Status::Indeterminate);
    row.classes = constraints::allowed_classes(e.bundle().table, k).names;
    row.note = ex.what();
  }
  if (timings) {
    row.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  return row;
}

int cmd_validate(const std::string& path, bool json) {
  const auto bundle = ctbl::load_table(path);
  const auto rep = ctbl::validate(bundle);
  if (json) {
    nlohmann::ordered_json j;
    j["table"] = bundle.table.group_name;
    j["passed"] = rep.passed();
    j["failures"] = rep.failures;
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& f : rep.failures) {
      std::cout << "FAIL " << f << '\n';
    }
    std::cout << bundle.table.group_name << ": " << bundle.table.class_count() << " classes, "
              << bundle.table.characters.size() << " characters, " << bundle.brauer.size()
              << " Brauer tables: " << (rep.passed() ? "PASS" : "FAIL") << '\n';
  }
  return rep.passed() ? kOk : kInvalid;
}

int cmd_solve(const Common& c, std::int64_t k, const std::vector<std::string>& characters) {
  if (k < 2) {
    throw UsageError("--order must be at least 2");
  }
  const auto bundle = ctbl::load_table(c.table);
  auto options = make_options(c);
  if (!characters.empty()) {
    auto& sel = options.overrides[k];
    for (const auto& s : characters) {
      sel.push_back(constraints::CharacterRef::parse(s));
    }
  }
  engine::Engine e(bundle, options);
  const auto t0 = std::chrono::steady_clock::now();
  const auto& v = e.solve(k);
  const auto elapsed = std::chrono::steady_clock::now() - t0;
  if (c.verbose) {
    if (v.excluded_by_divisor != 0) {
      std::cerr << "order " << k << ": a unit would power to order " << v.excluded_by_divisor
                << ", which is excluded\n";
    }
    for (std::size_t i = 0; i < v.profiles.size(); ++i) {
      std::cerr << "# case " << i + 1 << ":";
      for (const auto& [d, aug] : v.profiles[i].powers.powers) {
        if (d < k) {
          std::cerr << " u^" << d << " = " << constraints::render(bundle.table, aug);
        }
      }
      std::cerr << "  -> " << v.per_profile[i].size() << " solutions\n";
      const auto sys = constraints::build_system(bundle, k, v.profiles[i].powers, v.selection);
      std::cerr << constraints::render(sys);
    }
  }
  auto r = new_report(bundle, c);
  r.orders.push_back(report::summarize(v));
  if (c.timings) {
    r.orders.back().millis = std::chrono::duration<double, std::milli>(elapsed).count();
  }
  emit(c, r, false);
  return kOk;
}

int cmd_kimmerle(const Common& c) {
  const auto bundle = ctbl::load_table(c.table);
  engine::Engine e(bundle, make_options(c));
  auto r = new_report(bundle, c);
  for (auto k : engine::critical_orders(bundle.table)) {
    r.orders.push_back(solve_row(e, k, c.timings));
  }
  r.kimmerle = report::summarize(e.kimmerle());
  emit(c, r, false);
  return kOk;
}

int cmd_spectrum(const Common& c, bool full) {
  const auto bundle = ctbl::load_table(c.table);
  engine::Engine e(bundle, make_options(c));
  auto r = new_report(bundle, c);
  for (auto k : e.scan_orders(full)) {
    if (c.verbose) {
      std::cerr << "solving order " << k << '\n';
    }
    r.orders.push_back(solve_row(e, k, c.timings));
  }
  r.kimmerle = report::summarize(e.kimmerle());
  emit(c, r, true);
  return kOk;
}

void add_common(CLI::App* sub, Common& c, bool table_required = true) {
  auto* t = sub->add_option("--table", c.table, "character table fixture (JSON)");
  if (table_required) {
    t->required();
  }
  sub->add_option("--mode", c.mode, "character selection: full or paper")
      ->check(CLI::IsMember({"full", "paper"}));
  sub->add_option("--manifest", c.manifest, "per-order selection manifest for paper mode");
  sub->add_option("--workers", c.workers, "worker threads for independent cases");
  sub->add_option("--max-solutions", c.max_solutions, "solution cap per system");
  sub->add_option("--out", c.out, "write the report to a file");
  auto* j = sub->add_flag("--json", c.json, "JSON output");
  auto* x = sub->add_flag("--text", c.text, "text output");
  j->excludes(x);
  sub->add_flag("--verbose", c.verbose, "print the constraint systems");
  sub->add_flag("--timings", c.timings, "include per-order timings (not reproducible)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HeLP constraints on torsion units of integral group rings", "helpkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::kToolVersion);

  std::string validate_path;
  bool validate_json = false;
  auto* v = app.add_subcommand("validate", "check a character table fixture");
  v->add_option("table", validate_path, "fixture path")->required();
  v->add_flag("--json", validate_json, "JSON output");

  Common solve_c;
  std::int64_t order = 0;
  std::vector<std::string> characters;
  auto* s = app.add_subcommand("solve", "solve the constraints for one order");
  add_common(s, solve_c);
  s->add_option("--order", order, "unit order k")->required();
  s->add_option("--characters", characters, "explicit selection for this order, e.g. chi2@*,chi5@11")
      ->delimiter(',');

  Common kim_c;
  auto* kc = app.add_subcommand("kimmerle", "compare prime graphs of G and V(ZG)");
  add_common(kc, kim_c);

  Common spec_c;
  bool full = false;
  auto* sp = app.add_subcommand("spectrum", "solve every order in scope and report");
  add_common(sp, spec_c);
  sp->add_flag("--full", full, "attempt every divisor of the exponent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*v) {
      return cmd_validate(validate_path, validate_json);
    }
    if (*s) {
      return cmd_solve(solve_c, order, characters);
    }
    if (*kc) {
      return cmd_kimmerle(kim_c);
    }
    return cmd_spectrum(spec_c, full);
  } catch (const ctbl::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const solver::CapExceeded& e) {
    std::cerr << "error: solution cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const engine::ProfileCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCap;
  } catch (const solver::Unbounded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
