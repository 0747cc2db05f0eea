#include "xbgraph/fx16.hpp"

#include <cmath>
#include <string>

namespace xbgraph {

namespace {

double round_half_even(double x) {
  // nearbyint honours the current rounding mode, which is to-nearest-even
  // unless something changed it; compute explicitly instead.
  const double fl = std::floor(x);
  const double diff = x - fl;
  if (diff > 0.5) return fl + 1.0;
  if (diff < 0.5) return fl;
  return std::fmod(fl, 2.0) == 0.0 ? fl : fl + 1.0;
}

}  // namespace

Fx16 fx_encode(double x, FxFormat format) {
  if (!std::isfinite(x)) throw FxRangeError("fx_encode: non-finite value");
  if (format == FxFormat::frac) {
    if (x < 0.0 || x >= 1.0) {
      throw FxRangeError("fx_encode: frac value " + std::to_string(x) + " outside [0, 1)");
    }
    const double r = round_half_even(x * kFracScale);
    // x just below 1 can round up to 2^16.
    return {r >= kFracScale ? kFxMax : static_cast<std::uint16_t>(r), FxFormat::frac};
  }
  if (x < 0.0 || x > 65535.0 || std::floor(x) != x) {
    throw FxRangeError("fx_encode: integer value " + std::to_string(x) + " not in 0..65535");
  }
  return {static_cast<std::uint16_t>(x), FxFormat::integer};
}

Fx16 fx_encode_clamped(double x, FxFormat format, std::uint64_t* clamped) {
  if (std::isnan(x)) throw FxRangeError("fx_encode_clamped: NaN");
  auto note = [&] {
    if (clamped) ++*clamped;
  };
  if (format == FxFormat::frac) {
    if (x < 0.0) {
      note();
      return {0, format};
    }
    const double r = round_half_even(x * kFracScale);
    if (r >= kFracScale) {
      if (x >= 1.0) note();
      return {kFxMax, format};
    }
    return {static_cast<std::uint16_t>(r), format};
  }
  if (x < 0.0) {
    note();
    return {0, format};
  }
  const double r = round_half_even(x);
  if (r > 65534.0) {
    note();
    return {kInfinity - 1, format};
  }
  return {static_cast<std::uint16_t>(r), format};
}

double fx_decode(Fx16 f) {
  if (f.format == FxFormat::frac) return static_cast<double>(f.raw) / kFracScale;
  return static_cast<double>(f.raw);
}

Fx16 fx_sat_add(Fx16 a, Fx16 b) {
  if (a.format != b.format) throw std::invalid_argument("fx_sat_add: format mismatch");
  return {sat_add_raw(a.raw, b.raw), a.format};
}

}  // namespace xbgraph
