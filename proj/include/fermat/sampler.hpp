#pragma once

#include "fermat/families.hpp"

#include <cstdint>

namespace fermat {

/// Draws a parameter set satisfying every relation of the given case. The
/// same (case, seed) always gives the same spec.
FamilySpec sample_spec(Theorem theorem, Subcase subcase, std::uint64_t seed);

/// Breaks exactly one relation of a valid spec: d1 += 2 pi i for T1_i/T2_i
/// (flips the half relation), d3 += pi i for the two-exponent cases, eta += pi i
/// for the shift-difference cases.
FamilySpec negative_control(const FamilySpec &spec);

} // namespace fermat
