#include <doctest.h>

#include <limits>

#include "avbench/text_format.hpp"

using namespace avbench::text;

TEST_CASE("split_fields keeps empty fields and caps the count") {
  const auto f = split_fields("a,,b");
  REQUIRE(f.size() == 3);
  CHECK(f[1].empty());

  const auto meta = split_fields("meta,0,note,rain, then sun", 4);
  REQUIRE(meta.size() == 4);
  CHECK(meta[3] == "rain, then sun");

  CHECK(split_fields("").size() == 1);
}

TEST_CASE("parse_double accepts whole finite fields only") {
  CHECK(parse_double("1.5") == 1.5);
  CHECK(parse_double("-2e3") == -2000.0);
  CHECK_FALSE(parse_double(""));
  CHECK_FALSE(parse_double(" 1"));
  CHECK_FALSE(parse_double("1 "));
  CHECK_FALSE(parse_double("1.0x"));
  CHECK_FALSE(parse_double("nan"));
  CHECK_FALSE(parse_double("inf"));
  CHECK_FALSE(parse_double("1e999"));
}

TEST_CASE("parse_int") {
  CHECK(parse_int("42") == 42);
  CHECK(parse_int("-7") == -7);
  CHECK_FALSE(parse_int("4.2"));
  CHECK_FALSE(parse_int(""));
}

TEST_CASE("format_shortest round-trips") {
  for (const double v : {0.1, 1.0 / 3.0, 1.7e9 + 0.123456789, 5e-324,
                         std::numeric_limits<double>::max(), -0.0, 123456789.0}) {
    const auto text = format_shortest(v);
    REQUIRE(parse_double(text).has_value());
    CHECK(*parse_double(text) == v);
  }
  CHECK(format_shortest(2.0) == "2");
  CHECK(format_shortest(0.5) == "0.5");
}

TEST_CASE("format_fixed uses six decimals and never prints negative zero") {
  CHECK(format_fixed(380.42) == "380.420000");
  CHECK(format_fixed(0.0000004) == "0.000000");
  CHECK(format_fixed(-0.0000004) == "0.000000");
  CHECK(format_fixed(-0.0) == "0.000000");
  CHECK(format_fixed(-1.5) == "-1.500000");
  CHECK(format_fixed(2.5, 0) == "2");
}

TEST_CASE("is_ignorable") {
  CHECK(is_ignorable(""));
  CHECK(is_ignorable("# comment"));
  CHECK_FALSE(is_ignorable("pose,0,0,0,0,1,0,0,0"));
}
