#include <cmath>

#include "doctest.h"
#include "xbgraph/fx16.hpp"
#include "support.hpp"

using namespace xbgraph;

TEST_CASE("frac encoding") {
  CHECK(fx_encode(0.0, FxFormat::frac).raw == 0);
  CHECK(fx_encode(0.5, FxFormat::frac).raw == 0x8000);
  CHECK(fx_encode(0.25, FxFormat::frac).raw == 0x4000);
  // Just below one rounds to the top code rather than wrapping.
  CHECK(fx_encode(1.0 - 1e-9, FxFormat::frac).raw == 0xFFFF);
  CHECK_THROWS_AS(fx_encode(1.0, FxFormat::frac), FxRangeError);
  CHECK_THROWS_AS(fx_encode(-0.1, FxFormat::frac), FxRangeError);
  CHECK_THROWS_AS(fx_encode(NAN, FxFormat::frac), FxRangeError);
}

TEST_CASE("frac rounding is to nearest, ties to even") {
  // Half an ulp above 0 and above 1 ulp.
  CHECK(fx_encode(0.5 / 65536.0, FxFormat::frac).raw == 0);
  CHECK(fx_encode(1.5 / 65536.0, FxFormat::frac).raw == 2);
  CHECK(fx_encode(2.5 / 65536.0, FxFormat::frac).raw == 2);
  CHECK(fx_encode(2.6 / 65536.0, FxFormat::frac).raw == 3);
}

TEST_CASE("integer encoding") {
  CHECK(fx_encode(7, FxFormat::integer).raw == 7);
  CHECK(fx_encode(65535, FxFormat::integer).raw == kInfinity);
  CHECK_THROWS_AS(fx_encode(2.5, FxFormat::integer), FxRangeError);
  CHECK_THROWS_AS(fx_encode(65536, FxFormat::integer), FxRangeError);
}

TEST_CASE("clamped encoding counts clamps") {
  std::uint64_t n = 0;
  CHECK(fx_encode_clamped(1.5, FxFormat::frac, &n).raw == 0xFFFF);
  CHECK(fx_encode_clamped(-1.0, FxFormat::frac, &n).raw == 0);
  CHECK(fx_encode_clamped(70000, FxFormat::integer, &n).raw == kInfinity - 1);
  CHECK(n == 3);
  CHECK(fx_encode_clamped(0.5, FxFormat::frac, &n).raw == 0x8000);
  CHECK(n == 3);
}

TEST_CASE("decode inverts encode over every frac word") {
  for (std::uint32_t w = 0; w <= 0xFFFF; ++w) {
    const Fx16 f{static_cast<std::uint16_t>(w), FxFormat::frac};
    REQUIRE(fx_encode(fx_decode(f), FxFormat::frac).raw == w);
  }
}

TEST_CASE("saturating add") {
  CHECK(sat_add_raw(3, 4) == 7);
  CHECK(sat_add_raw(kInfinity, 0) == kInfinity);
  CHECK(sat_add_raw(0, kInfinity) == kInfinity);
  CHECK(sat_add_raw(60000, 10000) == kInfinity);
  CHECK_THROWS_AS(fx_sat_add({1, FxFormat::frac}, {1, FxFormat::integer}), std::invalid_argument);

  testing::Gen g(11);
  for (int k = 0; k < 20000; ++k) {
    const std::uint16_t a = g.word(), b = g.word(), c = g.word();
    // Commutative, associative, M absorbing, 0 neutral, never below either operand.
    REQUIRE(sat_add_raw(a, b) == sat_add_raw(b, a));
    REQUIRE(sat_add_raw(sat_add_raw(a, b), c) == sat_add_raw(a, sat_add_raw(b, c)));
    REQUIRE(sat_add_raw(a, kInfinity) == kInfinity);
    REQUIRE(sat_add_raw(a, 0) == a);
    REQUIRE(sat_add_raw(a, b) >= std::max(a, b));
    const std::uint32_t wide = std::uint32_t{a} + b;
    REQUIRE(sat_add_raw(a, b) == std::min<std::uint32_t>(wide, kInfinity));
  }
}

TEST_CASE("q32 to q16 rescale") {
  CHECK(rescale_q32_to_q16(0) == 0);
  CHECK(rescale_q32_to_q16(0x8000) == 0);     // tie, even
  CHECK(rescale_q32_to_q16(0x18000) == 2);    // tie, even
  CHECK(rescale_q32_to_q16(0x8001) == 1);
  CHECK(rescale_q32_to_q16(0x7FFF) == 0);
  CHECK(rescale_q32_to_q16(std::uint64_t{5} << 16) == 5);

  testing::Gen g(3);
  for (int k = 0; k < 20000; ++k) {
    const std::uint64_t x = g.rng() >> 20;
    const long double exact = static_cast<long double>(x) / 65536.0L;
    const auto r = rescale_q32_to_q16(x);
    REQUIRE(std::fabs(static_cast<long double>(r) - exact) <= 0.5L);
  }
}
