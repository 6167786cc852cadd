#pragma once

// The bundled three-sector economy with fixed capital and heterogeneous
// consumption, plus small helpers shared across the suites.

#include "valuedom/operators.hpp"

namespace fixtures {

inline valuedom::EconomySpec three_sector() {
    valuedom::EconomySpec e;
    e.names = {"sector_1", "sector_2", "sector_3"};
    e.a = valuedom::Matrix{{0.15, 0.18, 0.12},
                           {0.20, 0.12, 0.15},
                           {0.10, 0.15, 0.18}};
    e.k = valuedom::Matrix{{0.40, 0.35, 0.30},
                           {0.30, 0.45, 0.25},
                           {0.25, 0.30, 0.40}};
    e.delta = {0.10, 0.12, 0.08};
    e.labor = {0.40, 0.60, 0.35};
    e.b = valuedom::Matrix{{0.25, 0.30, 0.20},
                           {0.20, 0.25, 0.15},
                           {0.22, 0.28, 0.25}};
    e.x = {100.0, 80.0, 120.0};
    return e;
}

/// The published reduction vector for the three-sector economy, rounded to
/// four decimals as reported.
inline valuedom::Vector reference_reduction() { return {1.0, 1.7868, 1.0902}; }

/// Economy with the consumption matrix rescaled so rho(M0) lands exactly on
/// the unit boundary (the degenerate, zero-surplus case).
inline valuedom::EconomySpec boundary_rescaled(valuedom::EconomySpec e) {
    const valuedom::OperatorSet ops = valuedom::build_operators(e);
    const double rho = valuedom::spectral_radius(ops.m0).radius;
    e.b *= 1.0 / rho;
    return e;
}

} // namespace fixtures
