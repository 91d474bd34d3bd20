// SPDX-License-Identifier: Apache-2.0

#include "helpkit/report.hpp"

#include <gtest/gtest.h>

#include <regex>

using namespace helpkit;
using namespace helpkit::report;

namespace {

const ctbl::TableBundle& m24() {
  static const auto b = ctbl::load_table(std::string(HELPKIT_FIXTURE_DIR) + "/m24.json");
  return b;
}

RunReport run(unsigned workers) {
  engine::SolveOptions o;
  o.mode = engine::Mode::Paper;
  o.manifest = engine::SelectionManifest::load(std::string(HELPKIT_DATA_DIR) +
                                               "/m24_paper_selection.json");
  o.workers = workers;
  engine::Engine e(m24(), o);
  RunReport r;
  r.group = m24().table.group_name;
  r.mode = engine::to_string(o.mode);
  for (std::int64_t k : {2, 3, 5, 7, 10, 11, 15, 21, 23, 66}) {
    r.orders.push_back(summarize(e.solve(k)));
  }
  r.kimmerle = summarize(e.kimmerle());
  return r;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
  auto r = run(1);
  r.orders[0].note = "hand note";
  r.orders[1].millis = 12.5;
  r.kimmerle->critical[0].note = "cap";
  const auto back = from_json(Json::parse(dump(r)));
  EXPECT_EQ(back, r);
  EXPECT_EQ(dump(back), dump(r));
}

TEST(Report, ByteIdenticalAcrossRunsAndWorkers) {
  const auto a = dump(run(1));
  EXPECT_EQ(a, dump(run(1)));
  EXPECT_EQ(a, dump(run(4)));
}

TEST(Report, TextAgreesWithJson) {
  const auto r = run(1);
  const auto text = render_text(r);
  const auto j = to_json(r);
  for (const auto& row : j["orders"]) {
    const auto k = row["k"].get<std::int64_t>();
    const std::regex header("\norder " + std::to_string(k) + ": " +
                            row["status"].get<std::string>() + "  \\(" +
                            std::to_string(row["profiles"].get<std::size_t>()) + " profiles, " +
                            std::to_string(row["solutions"].size()) + " solutions\\)");
    EXPECT_TRUE(std::regex_search(text, header)) << k;
    for (const auto& t : row["solutions"]) {
      EXPECT_NE(text.find("  " + tuple_text(t.get<std::vector<std::int64_t>>()) + "\n"),
                std::string::npos)
          << k;
    }
  }
  // Every tuple line in the text corresponds to a JSON solution.
  std::size_t tuple_lines = 0;
  const std::regex tuple_line("\n  \\(-?[0-9]");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), tuple_line);
       it != std::sregex_iterator(); ++it) {
    ++tuple_lines;
  }
  std::size_t json_tuples = 0;
  for (const auto& row : j["orders"]) {
    json_tuples += row["solutions"].size();
  }
  EXPECT_EQ(tuple_lines, json_tuples);
  for (const auto& c : j["kimmerle"]["critical"]) {
    EXPECT_NE(text.find("  " + std::to_string(c["k"].get<std::int64_t>()) + ": " +
                        c["status"].get<std::string>()),
              std::string::npos);
  }
  EXPECT_NE(text.find("\nHOLDS\n"), std::string::npos);
  EXPECT_TRUE(j["kimmerle"]["holds"].get<bool>());
  EXPECT_TRUE(std::regex_search(text, std::regex("order 66: excluded.*\\[order (22|33) excluded\\]")));
}

TEST(Report, SummarizeFields) {
  const auto r = run(1);
  const auto& row10 = r.orders[4];
  EXPECT_EQ(row10.k, 10);
  EXPECT_EQ(row10.status, "indeterminate");
  EXPECT_EQ(row10.profiles, 6u);
  EXPECT_EQ(row10.classes, (std::vector<std::string>{"2a", "2b", "5a", "10a"}));
  EXPECT_EQ(row10.solutions.size(), 11u);
  const auto& row66 = r.orders.back();
  EXPECT_EQ(row66.status, "excluded");
  EXPECT_EQ(row66.profiles, 0u);
  EXPECT_NE(row66.excluded_by_divisor, 0);
  ASSERT_TRUE(r.kimmerle);
  EXPECT_EQ(r.kimmerle->critical.size(), 10u);
  EXPECT_EQ(r.kimmerle->vertices, (std::vector<std::int64_t>{2, 3, 5, 7, 11, 23}));
}

TEST(Report, MalformedJsonRejected) {
  EXPECT_THROW(from_json(Json::parse(R"({"tool": "x"})")), Json::exception);
  EXPECT_THROW(from_json(Json::parse(R"({"tool": "x", "group": "G", "mode": "full",
                                          "orders": [{"k": "two"}]})")),
               Json::exception);
}
