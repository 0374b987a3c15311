#include <gtest/gtest.h>

#include <limits>

#include "uavrl/common/digest.hpp"
#include "uavrl/common/errors.hpp"
#include "uavrl/common/kv_config.hpp"
#include "uavrl/common/random.hpp"

using namespace uavrl;

TEST(KeyValueConfig, ParsesCommentsAndWhitespace) {
  auto kv = KeyValueConfig::parse("# header\n  area_side = 250 \n\nseeds = 1, 2,3\nname=td3\n");
  EXPECT_DOUBLE_EQ(kv.take_double("area_side", 0.0), 250.0);
  EXPECT_EQ(kv.take_uint_list("seeds", {}), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(kv.take_string("name", ""), "td3");
  EXPECT_NO_THROW(kv.expect_all_consumed());
}

TEST(KeyValueConfig, DuplicateKeyRejected) {
  EXPECT_THROW(KeyValueConfig::parse("a = 1\na = 2\n"), ConfigError);
}

TEST(KeyValueConfig, UnconsumedKeysReported) {
  auto kv = KeyValueConfig::parse("area_side = 1\nareaside = 2\n");
  kv.take_double("area_side", 0.0);
  EXPECT_EQ(kv.unconsumed(), std::vector<std::string>{"areaside"});
  EXPECT_THROW(kv.expect_all_consumed(), ConfigError);
}

TEST(KeyValueConfig, BadNumberNamesField) {
  auto kv = KeyValueConfig::parse("horizon = lots\n");
  try {
    kv.take_int("horizon", 1);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "horizon");
  }
}

TEST(FormatDouble, RoundTripsExactly) {
  for (double v : {0.1, 1.0 / 3.0, 2.6e6, 1e-15, -4.25, 123456789.125}) {
    EXPECT_EQ(parse_double_field("x", format_double(v)), v);
  }
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_TRUE(std::isinf(parse_double_field("x", "inf")));
}

TEST(Digest, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Seeds, DerivedStreamsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}
