#include "fresco/ledger/fixed_point.hpp"

#include <cmath>
#include <stdexcept>

namespace fresco::ledger {

FixedRep fixed_from_double(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error("reputation value outside [0,1]");
  }
  return FixedRep{std::llround(v * kRepScale)};
}

std::int64_t quantize_ms(double ms) {
  if (!(ms >= 0.0)) throw std::domain_error("measurement must be non-negative");
  return std::llround(ms * 1000.0);
}

std::int64_t incentive_raw(double measurement_ms, double nabla_ms) {
  const std::int64_t nabla_us = quantize_ms(nabla_ms);
  if (nabla_us <= 0) throw std::domain_error("latency budget must be positive");
  const std::int64_t rt_us = quantize_ms(measurement_ms);
  if (rt_us >= nabla_us) return 0;
  const std::int64_t margin = nabla_us - rt_us;
  return (margin * kRepScale + nabla_us / 2) / nabla_us;
}

std::int64_t reputation_step(std::int64_t old_raw, std::int64_t omega_raw,
                             std::int64_t inc_raw) {
  if (old_raw < 0 || old_raw > kRepScale || inc_raw < 0 || inc_raw > kRepScale ||
      omega_raw < 0 || omega_raw > kRepScale) {
    throw std::domain_error("fixed-point operand outside [0, scale]");
  }
  const std::int64_t numer =
      old_raw * (kRepScale - omega_raw) + omega_raw * inc_raw + kRepScale / 2;
  std::int64_t next = numer / kRepScale;
  if (next > kRepScale) next = kRepScale;
  return next;
}

} // namespace fresco::ledger
