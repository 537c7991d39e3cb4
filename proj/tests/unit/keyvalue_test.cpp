#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "qmflow/errors.hpp"
#include "qmflow/keyvalue.hpp"

namespace qmflow {
namespace {

TEST(KeyValue, ParseBasics) {
  const auto doc = KeyValueDocument::parse("# comment\n\n  alpha = 1.5  \nbeta.x=hello world\n");
  ASSERT_EQ(doc.entries().size(), 2u);
  EXPECT_EQ(doc.require("beta.x"), "hello world");
  EXPECT_DOUBLE_EQ(doc.require_double("alpha"), 1.5);
  EXPECT_FALSE(doc.contains("gamma"));
  EXPECT_FALSE(doc.get("gamma").has_value());
}

TEST(KeyValue, ParseErrors) {
  EXPECT_THROW(KeyValueDocument::parse("novalue\n"), ConfigError);
  EXPECT_THROW(KeyValueDocument::parse("bad key = 1\n"), ConfigError);
  EXPECT_THROW(KeyValueDocument::parse("a = 1\na = 2\n"), ConfigError);
  try {
    KeyValueDocument::parse("a = 1\n\nb c = 2\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(KeyValueDocument::load("/nonexistent/file.conf"), ConfigError);
}

TEST(KeyValue, TypedAccessors) {
  const auto doc = KeyValueDocument::parse("i = 42\nx = 1e-3\nbad = 4x\n");
  EXPECT_EQ(doc.require_int("i"), 42);
  EXPECT_DOUBLE_EQ(doc.require_double("x"), 1e-3);
  EXPECT_THROW(doc.require_int("bad"), ConfigError);
  EXPECT_THROW(doc.require_double("bad"), ConfigError);
  EXPECT_THROW(doc.require_int("x"), ConfigError);
  EXPECT_THROW(doc.require("missing"), ConfigError);
}

TEST(KeyValue, WriteKeepsOrderAndRoundTrips) {
  KeyValueDocument doc;
  doc.set("z", "1");
  doc.set("a", "two words");
  doc.set("z", "3");
  const std::string text = doc.to_string();
  EXPECT_EQ(text, "z = 3\na = two words\n");
  EXPECT_EQ(KeyValueDocument::parse(text).to_string(), text);
}

TEST(KeyValue, FormatExactRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 0.16 / 7, 1e-300, -2.5, std::nextafter(0.3, 1.0)}) {
    EXPECT_EQ(parse_double(format_exact(v), "v"), v);
  }
}

}  // namespace
}  // namespace qmflow
