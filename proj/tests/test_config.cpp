#include <fprac/function_config.hpp>
#include <fprac/practicality.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace fprac;
using nlohmann::json;

TEST(Config, TableWithDefault) {
  const auto doc = json::parse(R"({"name": "tweak", "kind": "multiplicative", "default": "totient",
                                   "prime_power": [{"p": 3, "k": 1, "value": 3}]})");
  const auto loaded = load_function_spec(doc);
  EXPECT_EQ(loaded.spec.name, "tweak");
  EXPECT_EQ(eval(loaded.spec, 3), 3u);
  EXPECT_EQ(eval(loaded.spec, 9), 6u);
  EXPECT_EQ(eval(loaded.spec, 15), 12u);
  EXPECT_TRUE(loaded.warnings.empty());
}

TEST(Config, BaseWithParameterMatchesCatalog) {
  const auto loaded = load_function_spec(json::parse(R"({"name": "f6", "base": "fn", "param": 6})"));
  const auto ref = catalog::fn(6);
  for (u64 n = 1; n <= 300; ++n) ASSERT_EQ(eval(loaded.spec, n), eval(ref, n));
}

TEST(Config, AdditiveTableAndHugeValues) {
  const auto loaded = load_function_spec(json::parse(
      R"({"name": "big", "kind": "additive", "default": "exponent",
          "prime_power": [{"p": 2, "k": 1, "value": "100000000000000000000"}]})"));
  EXPECT_EQ(to_string(eval(loaded.spec, 6)), "100000000000000000001");
  EXPECT_EQ(eval(loaded.spec, 9), 2u);
}

TEST(Config, NonMonotoneTableWarns) {
  const auto loaded = load_function_spec(json::parse(
      R"({"name": "dip", "kind": "multiplicative", "default": "identity",
          "prime_power": [{"p": 5, "k": 2, "value": 1}]})"));
  ASSERT_EQ(loaded.warnings.size(), 1u);
  EXPECT_NE(loaded.warnings[0].find("p=5"), std::string::npos);
}

TEST(Config, MissingDefaultWarnsAndThrowsOnLookup) {
  const auto loaded = load_function_spec(json::parse(
      R"({"name": "sparse", "kind": "multiplicative", "prime_power": [{"p": 2, "k": 1, "value": 1}]})"));
  EXPECT_FALSE(loaded.warnings.empty());
  EXPECT_EQ(eval(loaded.spec, 2), 1u);
  EXPECT_THROW(eval(loaded.spec, 3), std::out_of_range);
}

TEST(Config, Errors) {
  for (const char* text : {R"([])", R"({"kind": "multiplicative"})", R"({"name": "x"})",
                           R"({"name": "x", "kind": "direct"})",
                           R"({"name": "x", "kind": "additive", "default": "nope"})",
                           R"({"name": "x", "kind": "additive", "prime_power": [{"p": 4, "k": 1, "value": 1}]})",
                           R"({"name": "x", "kind": "additive", "prime_power": [{"p": 2, "k": 0, "value": 1}]})",
                           R"({"name": "x", "kind": "additive", "prime_power": [{"p": 2, "k": 1, "value": -1}]})",
                           R"({"name": "x", "base": "lambda", "prime_power": [{"p": 2, "k": 1, "value": 1}]})",
                           R"({"name": "x", "base": "vp"})"}) {
    EXPECT_THROW(load_function_spec(json::parse(text)), std::exception) << text;
  }
}

TEST(Config, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "fprac_config_test.json";
  {
    std::ofstream out(path);
    out << R"({"name": "tot", "kind": "multiplicative", "default": "totient"})";
  }
  const auto loaded = load_function_spec_file(path.string());
  EXPECT_TRUE(is_f_practical(12, loaded.spec).is_practical);
  EXPECT_FALSE(is_f_practical(75, loaded.spec).is_practical);
  std::filesystem::remove(path);
  EXPECT_THROW(load_function_spec_file(path.string()), std::invalid_argument);
}

TEST(Config, MalformedFile) {
  const auto path = std::filesystem::temp_directory_path() / "fprac_config_bad.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  EXPECT_THROW(load_function_spec_file(path.string()), std::invalid_argument);
  std::filesystem::remove(path);
}
