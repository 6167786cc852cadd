#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "valuedom/economy.hpp"
#include "valuedom/matrix.hpp"
#include "valuedom/spectral.hpp"

namespace valuedom {

/**
 * @brief Derived operators of an economy.
 *
 * s = L (I - A~)^-1 maps final demand to total embodied hours; m0 = s B is
 * the dimensionless labor-reproduction operator; a_hat = A~ + B L is the
 * extended physical matrix including workers' consumption; s_hat =
 * L (I - a_hat)^-1 is the surplus operator, present only when the economy
 * has a surplus margin (rho(a_hat) < 1 - 1e-9).
 */
struct OperatorSet {
    Matrix a_tilde;
    Matrix leontief_inv;
    Matrix s;
    Matrix m0;
    Matrix a_hat;
    double rho_a_hat = 0.0;
    std::optional<Matrix> s_hat;

    bool has_surplus_operator() const noexcept { return s_hat.has_value(); }

    const Matrix& surplus_operator() const {
        if (!s_hat)
            fail(Errc::surplus_absent,
                 "rho(A~ + BL) = " + std::to_string(rho_a_hat) +
                     "; the surplus operator is unavailable at the reproduction boundary");
        return *s_hat;
    }
};

/// Unique value system induced by a reduction vector c: per-unit values v,
/// and the per-hour value of labor power sigma.
struct ValueSystem {
    Vector c;
    Vector v;      // v^T = c^T S, hours per unit of output
    Vector sigma;  // sigma^T = c^T M0, hours per hour worked
};

/// Price system at a uniform stock-based profit rate.
struct PriceSystem {
    double r = 0.0;
    Vector w;  // nominal wage per hour
    Vector p;  // price per unit of output
};

namespace detail {

inline Matrix scale_rows_by_labor(const Matrix& m, const Vector& labor) {
    Matrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= labor[i];
    return out;
}

/// (I - A~ - r K)^-1, guarded by the technical profit-rate ceiling.
inline Matrix resolvent(const EconomySpec& e, const Matrix& a_tilde, double r) {
    if (r < 0.0) fail(Errc::domain_error, "profit rate must be nonnegative");
    Matrix base = a_tilde;
    if (r != 0.0) base += e.k * r;
    const double rho = spectral_radius(base).radius;
    if (rho >= 1.0 - kUnitRadiusMargin)
        fail(Errc::rate_beyond_technical_max,
             "rho(A~ + rK) = " + std::to_string(rho) + " at r = " + std::to_string(r));
    return solve_refined(Matrix::identity(base.rows()) - base, Matrix::identity(base.rows()));
}

} // namespace detail

/**
 * @brief Build every derived operator of the economy.
 *
 * Requires the Hawkins-Simon condition; the surplus operator slot is left
 * empty (with the offending spectral radius recorded) when rho(A~ + BL)
 * reaches the unit boundary, so boundary diagnostics can still use the rest.
 */
inline OperatorSet build_operators(const EconomySpec& e) {
    check_structure(e);
    OperatorSet ops;
    ops.a_tilde = composite_inputs(e).second;
    ops.leontief_inv = inverse_of_i_minus(ops.a_tilde);
    ops.s = detail::scale_rows_by_labor(ops.leontief_inv, e.labor);
    ops.m0 = ops.s * e.b;
    ops.a_hat = ops.a_tilde + consumption_times_labor(e);
    ops.rho_a_hat = spectral_radius(ops.a_hat).radius;
    if (ops.rho_a_hat < 1.0 - kUnitRadiusMargin)
        ops.s_hat = detail::scale_rows_by_labor(inverse_of_i_minus(ops.a_hat), e.labor);
    return ops;
}

/**
 * @brief Labor-reproduction operator at profit rate r:
 *        M(r) = L (I - A~ - r K)^-1 B. M(0) coincides with m0.
 */
inline Matrix parametric_reproduction(const EconomySpec& e, double r) {
    check_structure(e);
    const Matrix a_tilde = composite_inputs(e).second;
    const Matrix resolvent = detail::resolvent(e, a_tilde, r);
    return detail::scale_rows_by_labor(resolvent, e.labor) * e.b;
}

/// v^T = c^T S and sigma^T = c^T M0 for a strictly positive reduction vector.
inline ValueSystem value_system(const OperatorSet& ops, const Vector& c) {
    if (c.size() != ops.m0.rows()) fail(Errc::shape_mismatch, "reduction vector length mismatch");
    if (!all_positive(c))
        fail(Errc::non_positive_reduction, "reduction coefficients must be strictly positive");
    ValueSystem vs;
    vs.c = c;
    vs.v = premultiply(c, ops.s);
    vs.sigma = premultiply(c, ops.m0);
    return vs;
}

/**
 * @brief Unique positive price solution of
 *        p^T = p^T A~ + w^T L + r p^T K, i.e. p^T = w^T L (I - A~ - rK)^-1.
 */
inline PriceSystem price_system(const EconomySpec& e, const Vector& w, double r) {
    check_structure(e);
    if (w.size() != e.size()) fail(Errc::shape_mismatch, "wage vector length mismatch");
    if (!all_positive(w)) fail(Errc::non_positive_wage, "wages must be strictly positive");
    const Matrix a_tilde = composite_inputs(e).second;
    const Matrix resolvent = detail::resolvent(e, a_tilde, r);
    Vector wl(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) wl[j] = w[j] * e.labor[j];
    PriceSystem ps;
    ps.r = r;
    ps.w = w;
    ps.p = premultiply(wl, resolvent);
    return ps;
}

/**
 * @brief Max-abs residual of the composite operator identity
 *        (I - M0)^-1 S = S_hat, with both sides computed independently.
 *
 * The left side is a fresh LU solve against S; the right side is the stored
 * surplus operator. For any valid surplus economy this is at round-off level
 * (contract: <= 1e-9).
 */
inline double verify_identity(const OperatorSet& ops) {
    const Matrix& s_hat = ops.surplus_operator();
    const Matrix lhs =
        solve_refined(Matrix::identity(ops.m0.rows()) - ops.m0, ops.s);
    return (lhs - s_hat).max_abs();
}

} // namespace valuedom
