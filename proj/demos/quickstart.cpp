// SPDX-License-Identifier: Apache-2.0
//
// Loads a character table, solves every order in scope and compares prime
// graphs. Usage: quickstart [TABLE.json]

#include "helpkit/report.hpp"

#include <iostream>

using namespace helpkit;

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : std::string(HELPKIT_FIXTURE_DIR) + "/a5.json";
  const auto bundle = ctbl::load_table(path);
  const auto check = ctbl::validate(bundle);
  if (!check.passed()) {
    for (const auto& f : check.failures) {
      std::cerr << f << '\n';
    }
    return 1;
  }

  engine::Engine e(bundle, engine::SolveOptions{});
  report::RunReport r;
  r.group = bundle.table.group_name;
  r.mode = "full";
  for (auto k : e.scan_orders(false)) {
    r.orders.push_back(report::summarize(e.solve(k)));
  }
  r.kimmerle = report::summarize(e.kimmerle());
  std::cout << report::render_text(r);

  // A single system, printed as mu inequalities.
  const auto& t = bundle.table;
  const auto space = constraints::allowed_classes(t, 2);
  const auto profile = constraints::trivial_profile(t, space.classes.front());
  const auto sys = constraints::build_system(bundle, 2, profile, constraints::full_selection(bundle, 2));
  std::cout << '\n' << constraints::render(sys);
  return 0;
}
