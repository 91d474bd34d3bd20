// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "helpkit/report.hpp"
#include "mu_rows.hpp"
#include "oracle.hpp"
#include "published.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace helpkit;
using engine::Engine;
using engine::Status;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      detail << what;
    }
    ok = ok && cond;
  }
};

const ctbl::TableBundle& m24() {
  static const auto b = ctbl::load_table(std::string(HELPKIT_FIXTURE_DIR) + "/m24.json");
  return b;
}

const ctbl::TableBundle& a5() {
  static const auto b = ctbl::load_table(std::string(HELPKIT_FIXTURE_DIR) + "/a5.json");
  return b;
}

engine::SolveOptions paper_options(unsigned workers = 1) {
  engine::SolveOptions o;
  o.mode = engine::Mode::Paper;
  o.manifest = engine::SelectionManifest::load(std::string(HELPKIT_DATA_DIR) +
                                               "/m24_paper_selection.json");
  o.workers = workers;
  return o;
}

Engine& paper() {
  static Engine e(m24(), paper_options());
  return e;
}

Engine& full() {
  static Engine e(m24(), engine::SolveOptions{});
  return e;
}

std::string str(const published::Tuples& ts) {
  std::string s;
  for (const auto& t : ts) {
    s += report::tuple_text(t);
  }
  return s;
}

void expect_set(Outcome& o, std::int64_t k, const published::Tuples& want) {
  const auto& got = paper().solve(k).solutions;
  o.require(got == want, "order " + std::to_string(k) + ": got " + std::to_string(got.size()) +
                             " tuples " + str(got));
}

void criterion1(Outcome& o) { expect_set(o, 2, published::order2()); }

void criterion2(Outcome& o) {
  expect_set(o, 3, published::order3());
  expect_set(o, 7, published::order7());
  for (std::int64_t k : {5, 11, 23}) {
    o.require(paper().solve(k).status == Status::RationallyConjugate,
              "order " + std::to_string(k) + " is " + to_string(paper().solve(k).status));
  }
}

void criterion3(Outcome& o) {
  expect_set(o, 10, published::order10());
  const auto& t = m24().table;
  const auto& v = paper().solve(10);
  o.require(v.profiles.size() == 6, "order 10 has " + std::to_string(v.profiles.size()) + " cases");
  const std::vector<std::pair<mu_rows::NamedAug, std::size_t>> cases{
      {{{"2a", 1}}, 3}, {{{"2b", 1}}, 3}, {{{"2a", -2}, {"2b", 3}}, 1}};
  for (const auto& [u5, count] : cases) {
    const auto target = mu_rows::aug(t, u5);
    bool found = false;
    for (std::size_t i = 0; i < v.profiles.size(); ++i) {
      if (v.profiles[i].powers.powers.at(5) == target) {
        found = true;
        o.require(v.per_profile[i].size() == count,
                  "case u^5 = " + constraints::render(t, target) + " gives " +
                      std::to_string(v.per_profile[i].size()) + " tuples");
      }
    }
    o.require(found, "no case with u^5 = " + constraints::render(t, target));
  }
}

void criterion4(Outcome& o) {
  expect_set(o, 15, published::order15());
  expect_set(o, 21, published::order21());
  o.require(paper().solve(15).solutions.size() == 34 && paper().solve(21).solutions.size() == 21,
            "tuple counts differ from 34 and 21");
}

void criterion5(Outcome& o) {
  for (auto k : published::critical_orders()) {
    o.require(paper().solve(k).status == Status::Excluded,
              "order " + std::to_string(k) + " is " + to_string(paper().solve(k).status));
  }
  Engine e(m24(), paper_options());
  const auto r = e.kimmerle();
  std::vector<std::int64_t> ks;
  for (const auto& [k, s] : r.critical) {
    ks.push_back(k);
  }
  o.require(ks == published::critical_orders(), "critical orders differ");
  o.require(r.holds, "kimmerle does not hold");
}

void criterion6(Outcome& o) {
  const auto rows = mu_rows::published_rows();
  o.require(rows.size() >= 40, "only " + std::to_string(rows.size()) + " expressions");
  const auto& t = m24().table;
  std::size_t matched = 0;
  for (const auto& r : rows) {
    const auto space = constraints::allowed_classes(t, r.k);
    const auto prof = mu_rows::profile(t, r.k, r.powers);
    const auto f = constraints::mu_form(m24(), mu_rows::ref(r.chi, r.p), r.l, space, prof);
    if (f.coeffs == r.coeffs && f.constant == r.constant) {
      ++matched;
    } else {
      o.require(false, "mismatch at k=" + std::to_string(r.k) + " chi" + std::to_string(r.chi) +
                           " l=" + std::to_string(r.l));
    }
  }
  o.detail << (o.ok ? std::to_string(matched) + " expressions" : "");
}

void criterion7(Outcome& o) {
  const auto& t = m24().table;
  for (std::int64_t k : {2, 3, 5, 7, 10, 11, 15, 21, 23}) {
    const auto& f = full().solve(k);
    const auto& p = paper().solve(k);
    o.require(std::includes(p.solutions.begin(), p.solutions.end(), f.solutions.begin(),
                            f.solutions.end()),
              "order " + std::to_string(k) + ": full not a subset of paper");
    for (const auto* v : {&f, &p}) {
      for (std::size_t j = 0; j < v->space.size(); ++j) {
        if (t.classes[v->space.classes[j]].element_order != k) {
          continue;
        }
        solver::Tuple unit(v->space.size(), 0);
        unit[j] = 1;
        o.require(std::binary_search(v->solutions.begin(), v->solutions.end(), unit),
                  "trivial unit of " + v->space.names[j] + " lost");
      }
    }
  }
}

void criterion8(Outcome& o) {
  Engine e(a5(), engine::SolveOptions{});
  for (std::int64_t k : {2, 3, 5}) {
    o.require(e.solve(k).status == Status::RationallyConjugate,
              "A5 order " + std::to_string(k) + " is " + to_string(e.solve(k).status));
  }
  for (std::int64_t k : {6, 10, 15}) {
    o.require(e.solve(k).status == Status::Excluded,
              "A5 order " + std::to_string(k) + " is " + to_string(e.solve(k).status));
  }
  o.require(e.kimmerle().holds, "A5 kimmerle does not hold");
  // Order 6 by hand: chi4 and chi5 at l = 0, 3 leave (v2a, v3a) = (1, 0),
  // where 6 mu_1(chi2) = -v2a + 4 = 3.
  std::size_t survivors = 0;
  for (std::int64_t v3 = -50; v3 <= 50; ++v3) {
    const std::int64_t v2 = 1 - v3;
    auto ok = [](std::int64_t x, std::int64_t deg) { return x >= 0 && x <= 6 * deg && x % 6 == 0; };
    if (ok(2 * v3 + 6, 4) && ok(-2 * v3 + 6, 4) && ok(2 * v2 - 2 * v3 + 4, 5) &&
        ok(-2 * v2 + 2 * v3 + 2, 5) && ok(-v2 + 4, 3)) {
      ++survivors;
    }
  }
  o.require(survivors == 0, "hand-solved order 6 system has a solution");
}

void criterion9(Outcome& o) {
  for (std::int64_t n = 1; n <= 30; ++n) {
    for (std::int64_t t = 0; t < n; ++t) {
      o.require(arith::Rational(arith::trace_root(n, t)) ==
                    oracle::brute_trace({{t, arith::Rational(1)}}, n),
                "trace_root(" + std::to_string(n) + ", " + std::to_string(t) + ")");
    }
  }
  for (const auto* b : {&m24(), &a5()}) {
    const auto r = ctbl::validate(*b);
    o.require(r.passed(), b->table.group_name + ": " + (r.passed() ? "" : r.failures.front()));
  }

  std::mt19937 rng(2024);
  auto pick = [&](solver::Int lo, solver::Int hi) {
    return std::uniform_int_distribution<solver::Int>(lo, hi)(rng);
  };
  for (int trial = 0; trial < 200; ++trial) {
    solver::IntegerSystem sys;
    sys.n = static_cast<std::size_t>(pick(1, 5));
    const solver::Int bound = pick(1, 8);
    solver::Bounds box;
    for (std::size_t i = 0; i < sys.n; ++i) {
      std::vector<solver::Int> e(sys.n, 0);
      e[i] = 1;
      sys.inequalities.push_back({e, bound});
      e[i] = -1;
      sys.inequalities.push_back({e, bound});
      box.box.push_back({-bound, bound});
    }
    auto row = [&] {
      std::vector<solver::Int> a(sys.n);
      for (auto& x : a) {
        x = pick(-4, 4);
      }
      return a;
    };
    for (auto r = pick(0, 4); r > 0; --r) {
      sys.inequalities.push_back({row(), pick(-6, 10)});
    }
    if (pick(0, 2) == 0) {
      sys.equalities.push_back({row(), pick(-3, 3)});
    }
    for (auto r = pick(0, 2); r > 0; --r) {
      sys.congruences.push_back({row(), pick(-5, 5), pick(2, 7)});
    }
    if (box.points() > 10'000'000) {
      continue;
    }
    o.require(solver::enumerate(sys) == solver::brute_force(sys, box),
              "random system " + std::to_string(trial));
  }

  std::size_t systems = 0;
  const auto& t = m24().table;
  std::vector<std::int64_t> orders{2, 3, 5, 7, 10, 11, 15, 21, 23};
  orders.insert(orders.end(), published::critical_orders().begin(),
                published::critical_orders().end());
  for (auto k : orders) {
    const auto& v = paper().solve(k);
    for (const auto& prof : v.profiles) {
      constraints::MuBuilder builder(t, v.space, prof.powers);
      for (const auto& ref : v.selection) {
        const auto chi = constraints::resolve(m24(), ref);
        std::vector<std::int64_t> coeffs(v.space.size(), 0);
        std::int64_t constant = 0;
        for (const auto& f : builder.forms(chi)) {
          for (std::size_t i = 0; i < coeffs.size(); ++i) {
            coeffs[i] += f.coeffs[i];
          }
          constant += f.constant;
        }
        o.require(coeffs == std::vector<std::int64_t>(v.space.size(), 0) &&
                      constant == k * chi.degree,
                  "mu sum at order " + std::to_string(k) + " " + ref.str());
      }
      ++systems;
    }
  }

  auto run = [&](unsigned workers) {
    Engine e(m24(), paper_options(workers));
    report::RunReport r;
    r.group = t.group_name;
    r.mode = "paper";
    for (auto k : orders) {
      r.orders.push_back(report::summarize(e.solve(k)));
    }
    r.kimmerle = report::summarize(e.kimmerle());
    return report::dump(r);
  };
  const auto one = run(1);
  o.require(one == run(1) && one == run(4), "reports differ across runs or workers");
  if (o.ok) {
    o.detail << systems << " systems checked";
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"order 2 paper-mode tuples", criterion1},
      {"orders 3, 7 tuples; 5, 11, 23 rationally conjugate", criterion2},
      {"order 10 union and per-case counts", criterion3},
      {"orders 15 and 21 tables", criterion4},
      {"critical orders excluded, kimmerle holds", criterion5},
      {"published mu expressions reproduced", criterion6},
      {"full mode refines paper mode, trivial units survive", criterion7},
      {"A5 end to end", criterion8},
      {"property suites", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
    const auto detail = o.detail.str();
    if (!detail.empty()) {
      std::cout << " (" << detail << ")";
    }
    std::cout << " [" << ms << " ms]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
