#include <gtest/gtest.h>

#include "ncas/report.hpp"

using namespace ncas;

TEST(Report, NoTableFails) {
  for (auto& id : table_ids()) {
    auto rep = reproduce_table(id, 2);
    EXPECT_TRUE(rep.ok()) << rep.to_text();
    EXPECT_GT(rep.count(RowStatus::Pass), 0u) << id;
  }
}

TEST(Report, ThreadCountDoesNotChangeOutput) {
  for (auto& id : table_ids())
    EXPECT_EQ(reproduce_table(id, 1).to_json().dump(), reproduce_table(id, 4).to_json().dump()) << id;
}

TEST(Report, KnownDiscrepancies) {
  EXPECT_EQ(reproduce_table("2").count(RowStatus::Discrepancy), 1u);
  EXPECT_EQ(reproduce_table("isom").count(RowStatus::Discrepancy), 1u);
  EXPECT_EQ(reproduce_table("GME").count(RowStatus::Discrepancy), 0u);
}

TEST(Report, JsonShape) {
  auto j = reproduce_table("3").to_json();
  EXPECT_EQ(j["table"], "3");
  ASSERT_TRUE(j["rows"].is_array());
  for (auto& r : j["rows"]) {
    EXPECT_TRUE(r.contains("status"));
    EXPECT_TRUE(r["assumptionsUsed"].is_array());
    EXPECT_TRUE(r["witnesses"].is_array());
  }
  EXPECT_EQ(j["summary"]["fail"], 0);
}

TEST(Report, UnknownTable) { EXPECT_THROW(reproduce_table("7"), Error); }
