#include "driftlab/dataset.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "driftlab/error.hpp"
#include "support/synthetic_news.hpp"

namespace driftlab {
namespace {

TEST(CsvReaderTest, QuotingAndLineEndings) {
  CsvReader reader("a,\"b,c\",\"d \"\"q\"\"\"\r\n1,\"multi\nline\",3\nlast,,");
  std::vector<std::string> f;
  ASSERT_TRUE(reader.next(f));
  EXPECT_EQ(f, (std::vector<std::string>{"a", "b,c", "d \"q\""}));
  EXPECT_EQ(reader.line_number(), 1u);
  ASSERT_TRUE(reader.next(f));
  EXPECT_EQ(f, (std::vector<std::string>{"1", "multi\nline", "3"}));
  ASSERT_TRUE(reader.next(f));
  EXPECT_EQ(f, (std::vector<std::string>{"last", "", ""}));
  EXPECT_EQ(reader.record_number(), 3u);
  EXPECT_EQ(reader.line_number(), 4u);
  EXPECT_FALSE(reader.next(f));
}

TEST(CsvReaderTest, UnterminatedQuote) {
  CsvReader reader("1,\"open");
  std::vector<std::string> f;
  EXPECT_THROW(reader.next(f), DataError);
}

TEST(AgNewsCsvTest, LabelMapping) {
  const Dataset d = parse_agnews_csv("2,\"Match report\",\"City won ...\"\n");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.records[0].label, Category::kSports);
  EXPECT_EQ(d.records[0].title, "Match report");
  EXPECT_EQ(d.records[0].description, "City won ...");
  EXPECT_EQ(d.records[0].text(), "Match report City won ...");
  EXPECT_EQ(to_string(Category::kSciTech), "SciTech");
}

TEST(AgNewsCsvTest, InvalidClassRejectedWithRowNumber) {
  try {
    parse_agnews_csv("1,a,b\n7,c,d\n3,e,f\nx,g,h\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("2 malformed rows"), std::string::npos) << msg;
    EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("row 4"), std::string::npos) << msg;
  }
}

TEST(AgNewsCsvTest, WrongFieldCountRejected) {
  EXPECT_THROW(parse_agnews_csv("1,only two\n"), DataError);
}

TEST(AgNewsCsvTest, BlankLinesAndEmptyTextSkipped) {
  const Dataset d = parse_agnews_csv("1,a,b\n\n3,\" \",\"\"\n4,t,\n");
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.skipped_empty, 1u);
  EXPECT_EQ(d.records[1].source_row, 4u);
  EXPECT_EQ(d.records[1].label, Category::kSciTech);
}

TEST(AgNewsCsvTest, SyntheticCorpusCountsAndOrder) {
  testing::SyntheticNewsOptions o;
  o.per_category = 50;
  const std::string csv = testing::synthetic_news_csv(o);
  const Dataset a = parse_agnews_csv(csv);
  EXPECT_EQ(a.size(), 200u);
  for (Category c : {Category::kWorld, Category::kSports, Category::kBusiness, Category::kSciTech}) {
    EXPECT_EQ(a.count(c), 50u);
  }
  const Dataset b = parse_agnews_csv(csv);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.records[i].text(), b.records[i].text());
    EXPECT_EQ(a.records[i].source_row, i + 1);
  }
}

TEST(AgNewsCsvTest, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "driftlab_dataset_test.csv";
  std::ofstream(path) << "4,\"Chips, faster\",\"New \"\"fast\"\" chip\"\n";
  const Dataset d = load_agnews_csv(path);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.records[0].title, "Chips, faster");
  EXPECT_EQ(d.records[0].description, "New \"fast\" chip");
  std::filesystem::remove(path);
  EXPECT_THROW(load_agnews_csv(path), DataError);
}

}  // namespace
}  // namespace driftlab
