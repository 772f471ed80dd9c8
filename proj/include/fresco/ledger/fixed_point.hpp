#pragma once

#include <cstdint>

namespace fresco::ledger {

// On-ledger arithmetic is integer-only; reputations live on a 1e-6 grid.
inline constexpr std::int64_t kRepScale = 1'000'000;

struct FixedRep {
  std::int64_t raw = 0; // invariant: 0 <= raw <= kRepScale

  double value() const { return static_cast<double>(raw) / kRepScale; }

  bool operator==(const FixedRep&) const = default;
  auto operator<=>(const FixedRep&) const = default;
};

FixedRep fixed_from_double(double v);

// Millisecond measurements enter the integer domain at microsecond
// resolution.
std::int64_t quantize_ms(double ms);

// Normalized reward for finishing under budget: max((nabla - rt)/nabla, 0)
// on the fixed-point grid, round-half-up.
std::int64_t incentive_raw(double measurement_ms, double nabla_ms);

// One exponential-smoothing step: old*(1-omega) + omega*inc, round-half-up.
std::int64_t reputation_step(std::int64_t old_raw, std::int64_t omega_raw,
                             std::int64_t inc_raw);

} // namespace fresco::ledger
