#pragma once

#include <cstdint>
#include <stdexcept>

namespace xbgraph {

// Two interpretations of the same 16-bit cell word.
//   frac:    Q0.16, value = raw / 2^16, range [0, 1 - 2^-16]
//   integer: value = raw, 0xFFFF reserved as "no edge" / infinite distance
enum class FxFormat : std::uint8_t { frac, integer };

inline constexpr std::uint16_t kFxMax = 0xFFFF;
inline constexpr std::uint16_t kInfinity = kFxMax;  // M
inline constexpr double kFracScale = 65536.0;
inline constexpr double kFracUlp = 1.0 / kFracScale;

class FxRangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

struct Fx16 {
  std::uint16_t raw = 0;
  FxFormat format = FxFormat::frac;

  friend constexpr bool operator==(Fx16, Fx16) = default;
};

// Strict encoders. frac requires x in [0, 1); integer requires an integral
// value in [0, 65535]. Rounding is to nearest, ties to even.
Fx16 fx_encode(double x, FxFormat format);

// Clamping encoder used for edge weights. Values outside the representable
// range are clamped and `clamped` (when given) is incremented. For integer
// weights the upper clamp is 0xFFFE so a real edge never aliases M.
Fx16 fx_encode_clamped(double x, FxFormat format, std::uint64_t* clamped = nullptr);

double fx_decode(Fx16 f);

// Saturating add on raw words; M absorbs.
constexpr std::uint16_t sat_add_raw(std::uint16_t a, std::uint16_t b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  const std::uint32_t s = std::uint32_t{a} + std::uint32_t{b};
  return s >= kInfinity ? kInfinity : static_cast<std::uint16_t>(s);
}

// Operands must share a format. In frac format the saturation point is the
// largest representable value, which is also 0xFFFF.
Fx16 fx_sat_add(Fx16 a, Fx16 b);

// Round-to-nearest-even division by 2^16 of an unsigned Q.32 accumulator.
constexpr std::uint64_t rescale_q32_to_q16(std::uint64_t acc) {
  std::uint64_t q = acc >> 16;
  const std::uint64_t rem = acc & 0xFFFFu;
  if (rem > 0x8000u || (rem == 0x8000u && (q & 1u))) ++q;
  return q;
}

}  // namespace xbgraph
