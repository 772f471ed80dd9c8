#pragma once

namespace fresco {

// Data sizes are KB at the interfaces and bits inside the queueing models.
inline constexpr double kBitsPerKb = 8192.0;

constexpr double kb_to_bits(double kb) { return kb * kBitsPerKb; }
constexpr double bits_to_kb(double bits) { return bits / kBitsPerKb; }

inline constexpr double kKbPerGb = 1024.0 * 1024.0;

constexpr double kb_to_gb(double kb) { return kb / kKbPerGb; }

// Time is milliseconds inside the simulator, seconds at model boundaries.
constexpr double ms_to_s(double ms) { return ms / 1000.0; }
constexpr double s_to_ms(double s) { return s * 1000.0; }

} // namespace fresco
