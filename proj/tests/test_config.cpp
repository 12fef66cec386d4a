#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "gpw/config.hpp"

namespace gpw {
namespace {

TEST(Config, TopLevelSettings) {
  const ConfigFile cfg = parse_config(
      "# run\n"
      "case = cs\n"
      "  n=3   # trailing comment\n"
      "\n"
      "out = results/cs.csv\n");
  EXPECT_EQ(cfg.settings.at("case"), "cs");
  EXPECT_EQ(cfg.settings.at("n"), "3");
  EXPECT_EQ(cfg.settings.at("out"), "results/cs.csv");
  EXPECT_FALSE(cfg.op.has_value());
}

TEST(Config, OperatorSection) {
  const ConfigFile cfg = parse_config(
      "seed = 4\n"
      "[operator]\n"
      "order = 2\n"
      "a20 = -1\n"
      "a02 = -1\n"
      "a00 = 2*(x+y)\n");
  ASSERT_TRUE(cfg.op.has_value());
  EXPECT_EQ(cfg.settings.at("seed"), "4");
  const PdeOperator op = cfg.op->at({0.25, 0.5}, 1);
  EXPECT_EQ(op.order(), 2);
  EXPECT_EQ(op.alpha_at_center(2, 0), Complex(-1.0));
  EXPECT_EQ(op.alpha_at_center(1, 1), Complex(0.0));
  EXPECT_NEAR(std::abs(op.alpha_at_center(0, 0) - Complex(1.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(op.alpha(0, 0)[{1, 0}] - Complex(2.0)), 0.0, 1e-15);
}

TEST(Config, AssertedGamma) {
  const ConfigFile cfg = parse_config(
      "[operator]\n"
      "order = 4\n"
      "a40 = 1\n"
      "a22 = 2\n"
      "a04 = 1\n"
      "gamma = 1, 0, 1\n");
  ASSERT_TRUE(cfg.op.has_value());
  const PdeOperator op = cfg.op->at({0, 0}, 0);
  ASSERT_TRUE(op.asserted_gamma().has_value());
  EXPECT_TRUE(check_hypotheses(op).hyp2.has_value());
}

void expect_line_error(const std::string& text, int line) {
  try {
    parse_config(text);
    FAIL() << "no error for:\n" << text;
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("line " + std::to_string(line)), std::string::npos) << what;
  }
}

TEST(Config, ErrorsCarryLineNumbers) {
  expect_line_error("case = cs\njunk\n", 2);
  expect_line_error("n =\n", 1);
  expect_line_error("[solver]\n", 1);
  expect_line_error("[operator\n", 1);
  expect_line_error("[operator]\norder = 2\na20 = x +\n", 3);
  expect_line_error("[operator]\norder = 2\nb20 = 1\n", 3);
  expect_line_error("[operator]\norder = 4\n\ngamma = 1, 2\n", 4);
  expect_line_error("[operator]\norder = 4\ngamma = 1, 2, 3, 4\n", 3);
}

TEST(Config, OperatorSemanticErrors) {
  EXPECT_THROW(parse_config("[operator]\na20 = 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("[operator]\norder = 2\na30 = 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("[operator]\norder = 1\n"), std::invalid_argument);
}

TEST(Config, LoadFromFile) {
  const std::string path = ::testing::TempDir() + "gpw_config_test.cfg";
  {
    std::ofstream out(path);
    out << "case = JJ\nq = 2\n";
  }
  const ConfigFile cfg = load_config(path);
  EXPECT_EQ(cfg.settings.at("case"), "JJ");
  EXPECT_EQ(cfg.settings.at("q"), "2");
  std::remove(path.c_str());
  EXPECT_THROW(load_config(path), std::invalid_argument);
}

}  // namespace
}  // namespace gpw
