#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valuedom/economy.hpp"
#include "valuedom/feasible.hpp"
#include "valuedom/linprog.hpp"
#include "valuedom/operators.hpp"

namespace valuedom {

/// Macro-level totals of one transformation solution. Hours on the value
/// side (F, S), currency on the price side (P, Pi); kappa converts hours to
/// currency, gamma is the profit share, mu the absolute-system scalar.
struct MacroAggregates {
    double total_value = 0.0;
    double total_surplus = 0.0;
    double total_price = 0.0;
    double total_profit = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
    std::optional<double> mu;
};

/// Per-sector critical profit shares and the interval they span.
struct CompatibilityInterval {
    Vector per_sector;
    double gamma_min = 0.0;
    double gamma_max = 0.0;

    bool contains_closed(double gamma) const noexcept {
        return gamma >= gamma_min && gamma <= gamma_max;
    }
    bool contains_open(double gamma) const noexcept {
        return gamma > gamma_min && gamma < gamma_max;
    }
};

enum class TransformMode { relative, absolute };

struct TransformSolution {
    Vector c_star;
    Vector q_star;  // slack image c*^T (I - M0), componentwise nonnegative
    MacroAggregates aggregates;
    double residual_eq1 = 0.0;  // |total price - total value|
    double residual_eq2 = 0.0;  // |total profit - total surplus|
    TransformMode mode = TransformMode::relative;
};

/// Residuals of both macro equalities recomputed from scratch.
struct EqualityReport {
    double total_price = 0.0;
    double total_profit = 0.0;
    double total_value = 0.0;
    double total_surplus = 0.0;
    double abs_eq1 = 0.0;
    double rel_eq1 = 0.0;
    double abs_eq2 = 0.0;
    double rel_eq2 = 0.0;
    double surplus_form_spread = 0.0;  // disagreement between the two surplus expansions
};

namespace detail {

inline void require_positive_pair(const Vector& c, const Vector& x) {
    if (!all_positive(c))
        fail(Errc::non_positive_input, "reduction coefficients must be strictly positive");
    if (!all_positive(x)) fail(Errc::non_positive_input, "output vector must be strictly positive");
}

/// (I - A~ - BL) x, assembled from the stored extended matrix.
inline Vector net_surplus_output(const OperatorSet& ops, const Vector& x) {
    const Vector ax = multiply(ops.a_hat, x);
    Vector net(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) net[i] = x[i] - ax[i];
    return net;
}

inline Vector labor_times(const EconomySpec& e, const Vector& x) {
    Vector lx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) lx[i] = e.labor[i] * x[i];
    return lx;
}

} // namespace detail

/// Total labor value F(c) = c^T S x.
inline double total_value(const OperatorSet& ops, const Vector& c, const Vector& x) {
    detail::require_positive_pair(c, x);
    return dot(c, multiply(ops.s, x));
}

/// Total surplus value S(c) = c^T S (I - A~ - BL) x.
inline double total_surplus(const OperatorSet& ops, const Vector& c, const Vector& x) {
    detail::require_positive_pair(c, x);
    return dot(c, multiply(ops.s, detail::net_surplus_output(ops, x)));
}

/// Both algebraic routes to the surplus: the S-expansion above and the
/// direct form c^T L x - c^T M0 L x, with their absolute spread.
struct SurplusForms {
    double expansion = 0.0;
    double direct = 0.0;
    double spread = 0.0;
};

inline SurplusForms total_surplus_forms(const OperatorSet& ops, const EconomySpec& e,
                                        const Vector& c, const Vector& x) {
    SurplusForms f;
    f.expansion = total_surplus(ops, c, x);
    Vector lx = detail::labor_times(e, x);
    f.direct = dot(c, lx) - dot(c, multiply(ops.m0, lx));
    f.spread = std::abs(f.expansion - f.direct);
    return f;
}

/**
 * @brief Macro profit share at rate r under the relative wage structure:
 *        gamma = r w^T L R K x / (w^T L R x) with R = (I - A~ - rK)^-1.
 *
 * Always lands in [0, 1) for admissible inputs; a value outside that range
 * signals broken preconditions and is reported as a DomainError.
 */
inline double profit_share(const EconomySpec& e, const Vector& w_rel, double r) {
    check_structure(e);
    if (w_rel.size() != e.size()) fail(Errc::shape_mismatch, "wage vector length mismatch");
    if (!all_positive(w_rel)) fail(Errc::non_positive_wage, "wages must be strictly positive");
    if (std::abs(w_rel[0] - 1.0) > kMembershipTol)
        fail(Errc::normalization_violated, "relative wages must be normalized with w1 = 1");

    const Matrix a_tilde = composite_inputs(e).second;
    Matrix base = a_tilde;
    if (r != 0.0) base += e.k * r;
    const double rho = spectral_radius(base).radius;
    if (rho >= 1.0 - kUnitRadiusMargin)
        fail(Errc::rate_beyond_technical_max,
             "rho(A~ + rK) = " + std::to_string(rho) + " at r = " + std::to_string(r));
    const Matrix resolvent =
        solve_refined(Matrix::identity(base.rows()) - base, Matrix::identity(base.rows()));

    Vector wl(w_rel.size());
    for (std::size_t j = 0; j < w_rel.size(); ++j) wl[j] = w_rel[j] * e.labor[j];
    const Vector u = premultiply(wl, resolvent);
    const double gamma = r * dot(u, multiply(e.k, e.x)) / dot(u, e.x);
    if (gamma < 0.0 || gamma >= 1.0)
        fail(Errc::domain_error, "profit share left (0,1): gamma = " + std::to_string(gamma));
    return gamma;
}

/// Monetary expression of labor time: kappa = F / P_rel.
inline double melt(double total_value_hours, double relative_total_price) {
    if (!(total_value_hours > 0.0) || !(relative_total_price > 0.0))
        fail(Errc::non_positive_input, "melt requires positive totals");
    return total_value_hours / relative_total_price;
}

/**
 * @brief Normal vector of the second-equality hyperplane at profit share
 *        gamma: eta = S [ (A~ + BL) x - (1 - gamma) x ].
 *
 * Given total price = total value, total profit equals total surplus for
 * exactly the reduction vectors with c^T eta = 0.
 */
inline Vector hyperplane_normal(const OperatorSet& ops, const Vector& x, double gamma) {
    if (x.size() != ops.s.rows()) fail(Errc::shape_mismatch, "output vector length mismatch");
    Vector inner = multiply(ops.a_hat, x);
    for (std::size_t i = 0; i < x.size(); ++i) inner[i] -= (1.0 - gamma) * x[i];
    return multiply(ops.s, inner);
}

/// The same normal pushed into slack space: eta~ = S_hat [ A_hat x - (1-gamma) x ].
/// Mixed signs in eta~ are exactly the interior-intersection certificate.
inline Vector q_space_normal(const OperatorSet& ops, const Vector& x, double gamma) {
    const Matrix& s_hat = ops.surplus_operator();
    Vector inner = multiply(ops.a_hat, x);
    for (std::size_t i = 0; i < x.size(); ++i) inner[i] -= (1.0 - gamma) * x[i];
    return multiply(s_hat, inner);
}

/**
 * @brief Per-sector critical profit shares
 *        gamma_i = 1 - [S_hat A_hat x]_i / [S_hat x]_i
 *        and the compatibility interval they span.
 */
inline CompatibilityInterval critical_shares(const OperatorSet& ops, const Vector& x) {
    const Matrix& s_hat = ops.surplus_operator();
    if (x.size() != s_hat.rows()) fail(Errc::shape_mismatch, "output vector length mismatch");
    const Vector denom = multiply(s_hat, x);
    const Vector numer = multiply(s_hat, multiply(ops.a_hat, x));
    CompatibilityInterval ci;
    ci.per_sector.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) ci.per_sector[i] = 1.0 - numer[i] / denom[i];
    ci.gamma_min = *std::min_element(ci.per_sector.begin(), ci.per_sector.end());
    ci.gamma_max = *std::max_element(ci.per_sector.begin(), ci.per_sector.end());
    return ci;
}

namespace detail {

/**
 * @brief Deterministic selection of a reduction vector on the hyperplane:
 *        maximize the minimum slack subject to c^T eta = 0, c1 = 1 and the
 *        cap c <= caps, then break degenerate ties toward lexicographically
 *        small coefficients, and finally re-project onto the hyperplane
 *        within the c1 = 1 slice so the equality holds to round-off.
 */
inline Vector max_min_slack_point(const Matrix& g, const Vector& eta, const Vector& caps) {
    const std::size_t n = g.rows();
    const std::size_t nv = n;  // c2..cn plus t

    LpProblem lp;
    lp.nvars = nv;
    lp.objective.assign(nv, 0.0);
    lp.objective[nv - 1] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        LpConstraint row;
        row.coeffs.assign(nv, 0.0);
        for (std::size_t i = 1; i < n; ++i) row.coeffs[i - 1] = g(i, j);
        row.coeffs[nv - 1] = -1.0;
        row.relation = LpRelation::greater_equal;
        row.rhs = -g(0, j);
        lp.constraints.push_back(std::move(row));
    }
    {
        LpConstraint hyper;
        hyper.coeffs.assign(nv, 0.0);
        for (std::size_t i = 1; i < n; ++i) hyper.coeffs[i - 1] = eta[i];
        hyper.relation = LpRelation::equal;
        hyper.rhs = -eta[0];
        lp.constraints.push_back(std::move(hyper));
    }
    for (std::size_t i = 1; i < n; ++i) {
        LpConstraint cap;
        cap.coeffs.assign(nv, 0.0);
        cap.coeffs[i - 1] = 1.0;
        cap.relation = LpRelation::less_equal;
        cap.rhs = caps[i];
        lp.constraints.push_back(std::move(cap));
    }

    const LpSolution base = solve_lp(lp);
    if (base.status != LpStatus::optimal)
        fail(Errc::infeasible_lp, "no reduction vector satisfies the hyperplane constraints");

    auto assemble = [n](const Vector& vars) {
        Vector c(n, 1.0);
        for (std::size_t i = 1; i < n; ++i) c[i] = vars[i - 1];
        return c;
    };
    Vector c = assemble(base.x);
    const double t_star = base.x[nv - 1];

    // Tie-break pass: hold the achieved slack floor and minimize each
    // coefficient in turn. The floor is relaxed by 1e-11 so the phase-A
    // vertex stays feasible under accumulated pivots.
    {
        const double floor = t_star - 1e-11 * std::max(1.0, std::abs(t_star));
        LpProblem refine = lp;
        for (std::size_t j = 0; j < n; ++j) {
            refine.constraints[j].rhs = -g(0, j) + floor;
            refine.constraints[j].coeffs[nv - 1] = 0.0;
        }
        Vector fixed(nv, 0.0);
        bool ok = true;
        for (std::size_t i = 1; i < n && ok; ++i) {
            refine.objective.assign(nv, 0.0);
            refine.objective[i - 1] = -1.0;  // minimize c_i
            const LpSolution step = solve_lp(refine);
            if (step.status != LpStatus::optimal) {
                ok = false;
                break;
            }
            fixed = step.x;
            LpConstraint pin;
            pin.coeffs.assign(nv, 0.0);
            pin.coeffs[i - 1] = 1.0;
            pin.relation = LpRelation::equal;
            pin.rhs = step.x[i - 1];
            refine.constraints.push_back(std::move(pin));
        }
        if (ok) {
            const Vector refined = assemble(fixed);
            const double lo = min_element(premultiply(refined, g));
            if (lo >= -kMembershipTol) c = refined;
        }
    }

    // Exact hyperplane projection within the c1 = 1 slice.
    double denom = 0.0;
    for (std::size_t i = 1; i < n; ++i) denom += eta[i] * eta[i];
    if (denom > 0.0) {
        const double lambda = dot(c, eta) / denom;
        for (std::size_t i = 1; i < n; ++i) c[i] -= lambda * eta[i];
    }
    return c;
}

inline Vector uniform_caps(const ValueFeasibleDomain& d) {
    Vector caps = d.upper_bounds;
    for (double& v : caps) v *= 10.0;
    return caps;
}

} // namespace detail

/**
 * @brief Relative-system transformation solve.
 *
 * Computes gamma from (w_rel, r), requires it inside the compatibility
 * interval, and returns the max-min-slack reduction vector on the
 * second-equality hyperplane with c1 = 1. The wage scale kappa then makes
 * total price equal total value by construction; both residuals are
 * reported after honest recomputation.
 */
inline TransformSolution solve_relative(const EconomySpec& e, const Vector& w_rel, double r) {
    const OperatorSet ops = build_operators(e);
    const CompatibilityInterval interval = critical_shares(ops, e.x);
    const double gamma = profit_share(e, w_rel, r);
    if (!interval.contains_closed(gamma))
        fail(Errc::outside_compatibility_interval,
             "gamma = " + std::to_string(gamma) + " outside [" +
                 std::to_string(interval.gamma_min) + ", " + std::to_string(interval.gamma_max) +
                 "]; the equality hyperplane misses the feasible domain");

    const ValueFeasibleDomain domain = build_value_domain(ops);
    const Vector eta = hyperplane_normal(ops, e.x, gamma);
    const Vector c = detail::max_min_slack_point(domain.halfspace_matrix, eta,
                                                 detail::uniform_caps(domain));

    // Price side at the kappa-scaled wage.
    const Matrix a_tilde = ops.a_tilde;
    Matrix base = a_tilde + e.k * r;
    const Matrix resolvent =
        solve_refined(Matrix::identity(base.rows()) - base, Matrix::identity(base.rows()));
    Vector wl(w_rel.size());
    for (std::size_t j = 0; j < w_rel.size(); ++j) wl[j] = w_rel[j] * e.labor[j];
    const Vector u = premultiply(wl, resolvent);
    const double p_rel = dot(u, e.x);

    TransformSolution sol;
    sol.mode = TransformMode::relative;
    sol.c_star = c;
    sol.q_star = premultiply(c, domain.halfspace_matrix);
    sol.aggregates.total_value = total_value(ops, c, e.x);
    sol.aggregates.total_surplus = total_surplus(ops, c, e.x);
    sol.aggregates.gamma = gamma;
    sol.aggregates.kappa = melt(sol.aggregates.total_value, p_rel);
    sol.aggregates.total_price = sol.aggregates.kappa * p_rel;
    sol.aggregates.total_profit = sol.aggregates.kappa * r * dot(u, multiply(e.k, e.x));
    sol.residual_eq1 = std::abs(sol.aggregates.total_price - sol.aggregates.total_value);
    sol.residual_eq2 = std::abs(sol.aggregates.total_profit - sol.aggregates.total_surplus);
    return sol;
}

/**
 * @brief Absolute-system transformation solve (no external multiplier).
 *
 * Both macro totals are imposed directly: F(c) = P_star and S(c) = Pi_star.
 * The ratio Pi_star / P_star must lie strictly inside the compatibility
 * interval (the cone condition for a strictly positive slack image). The
 * returned vector is the max-min-slack hyperplane point at that ratio,
 * rescaled so the totals hold exactly; it therefore preserves the relative
 * solution's distributive structure by construction.
 */
inline TransformSolution solve_absolute(const EconomySpec& e, double p_star, double pi_star) {
    if (!(p_star > 0.0) || !(pi_star > 0.0))
        fail(Errc::non_positive_input, "absolute totals must be strictly positive");
    const OperatorSet ops = build_operators(e);
    const Matrix& s_hat = ops.surplus_operator();

    const Vector v1 = multiply(s_hat, e.x);
    const Vector v2 = detail::labor_times(e, e.x);
    const double cosine =
        std::abs(dot(v1, v2)) / std::sqrt(dot(v1, v1) * dot(v2, v2));
    if (1.0 - cosine < 1e-12)
        fail(Errc::degenerate_collinearity,
             "S_hat x and L x are collinear; the target cone has empty interior");

    const CompatibilityInterval interval = critical_shares(ops, e.x);
    const double gamma = pi_star / p_star;
    if (!interval.contains_open(gamma))
        fail(Errc::share_outside_cone,
             "Pi*/P* = " + std::to_string(gamma) + " outside (" +
                 std::to_string(interval.gamma_min) + ", " + std::to_string(interval.gamma_max) +
                 "); no strictly positive solution exists");

    const ValueFeasibleDomain domain = build_value_domain(ops);
    const Vector eta = hyperplane_normal(ops, e.x, gamma);
    const Vector c_rel = detail::max_min_slack_point(domain.halfspace_matrix, eta,
                                                     detail::uniform_caps(domain));
    const double mu = p_star / total_value(ops, c_rel, e.x);
    Vector c = scaled(c_rel, mu);

    TransformSolution sol;
    sol.mode = TransformMode::absolute;
    sol.c_star = std::move(c);
    sol.q_star = premultiply(sol.c_star, domain.halfspace_matrix);
    sol.aggregates.total_value = total_value(ops, sol.c_star, e.x);
    sol.aggregates.total_surplus = total_surplus(ops, sol.c_star, e.x);
    sol.aggregates.total_price = p_star;
    sol.aggregates.total_profit = pi_star;
    sol.aggregates.gamma = gamma;
    sol.aggregates.kappa = mu;
    sol.aggregates.mu = mu;
    sol.residual_eq1 = std::abs(sol.aggregates.total_value - p_star);
    sol.residual_eq2 = std::abs(sol.aggregates.total_surplus - pi_star);
    return sol;
}

/// Recompute both equalities from scratch for a relative-mode solution.
inline EqualityReport verify_equalities(const EconomySpec& e, const TransformSolution& sol,
                                        const Vector& w_rel, double r) {
    const OperatorSet ops = build_operators(e);
    EqualityReport rep;
    rep.total_value = total_value(ops, sol.c_star, e.x);
    const SurplusForms forms = total_surplus_forms(ops, e, sol.c_star, e.x);
    rep.total_surplus = forms.expansion;
    rep.surplus_form_spread = forms.spread;

    Matrix base = ops.a_tilde + e.k * r;
    const Matrix resolvent =
        solve_refined(Matrix::identity(base.rows()) - base, Matrix::identity(base.rows()));
    Vector wl(w_rel.size());
    for (std::size_t j = 0; j < w_rel.size(); ++j) wl[j] = w_rel[j] * e.labor[j];
    const Vector p = scaled(premultiply(wl, resolvent), sol.aggregates.kappa);
    rep.total_price = dot(p, e.x);
    rep.total_profit = r * dot(p, multiply(e.k, e.x));

    rep.abs_eq1 = std::abs(rep.total_price - rep.total_value);
    rep.rel_eq1 = rep.abs_eq1 / rep.total_value;
    rep.abs_eq2 = std::abs(rep.total_profit - rep.total_surplus);
    rep.rel_eq2 = rep.abs_eq2 / std::abs(rep.total_surplus);
    return rep;
}

/// Recompute both equalities for an absolute-mode solution against its
/// stored target totals.
inline EqualityReport verify_equalities(const EconomySpec& e, const TransformSolution& sol) {
    const OperatorSet ops = build_operators(e);
    EqualityReport rep;
    rep.total_value = total_value(ops, sol.c_star, e.x);
    const SurplusForms forms = total_surplus_forms(ops, e, sol.c_star, e.x);
    rep.total_surplus = forms.expansion;
    rep.surplus_form_spread = forms.spread;
    rep.total_price = sol.aggregates.total_price;
    rep.total_profit = sol.aggregates.total_profit;
    rep.abs_eq1 = std::abs(rep.total_price - rep.total_value);
    rep.rel_eq1 = rep.abs_eq1 / rep.total_value;
    rep.abs_eq2 = std::abs(rep.total_profit - rep.total_surplus);
    rep.rel_eq2 = rep.abs_eq2 / std::abs(rep.total_surplus);
    return rep;
}

/**
 * @brief Closed-form cross-check for three sectors: the segment cut by the
 *        hyperplane line out of the c1 = 1 slice of the feasible domain.
 *
 * Returns the two segment endpoints as full reduction vectors, or nothing
 * when the line misses the slice. solve_relative's point must lie on this
 * segment; the midpoint is an alternative valid solution.
 */
inline std::optional<std::array<Vector, 2>> hyperplane_segment_3(const ValueFeasibleDomain& d,
                                                                 const Vector& eta) {
    if (d.halfspace_matrix.rows() != 3)
        fail(Errc::dimension_not_3, "segment cross-check is defined for 3 sectors only");

    struct Line {
        double a, b, k;  // a c2 + b c3 + k, constraint rows demand >= 0
    };
    const Matrix& g = d.halfspace_matrix;
    std::vector<Line> constraints;
    for (std::size_t j = 0; j < 3; ++j) constraints.push_back({g(1, j), g(2, j), g(0, j)});
    constraints.push_back({1.0, 0.0, -d.lower_bounds[1]});
    constraints.push_back({-1.0, 0.0, d.upper_bounds[1]});
    constraints.push_back({0.0, 1.0, -d.lower_bounds[2]});
    constraints.push_back({0.0, -1.0, d.upper_bounds[2]});

    const Line h{eta[1], eta[2], eta[0]};
    const double scale = std::max({1.0, d.upper_bounds[1], d.upper_bounds[2]});
    const double tol = 1e-9 * scale;

    std::vector<std::array<double, 2>> points;
    for (const Line& l : constraints) {
        const double det = h.a * l.b - l.a * h.b;
        if (std::abs(det) < 1e-14) continue;
        const double c2 = (-h.k * l.b + l.k * h.b) / det;
        const double c3 = (-h.a * l.k + l.a * h.k) / det;
        bool feasible = true;
        for (const Line& m : constraints)
            if (m.a * c2 + m.b * c3 + m.k < -tol) feasible = false;
        if (feasible) points.push_back({c2, c3});
    }
    if (points.empty()) return std::nullopt;

    // Extremes along the line direction.
    const double dir2 = -h.b, dir3 = h.a;
    auto along = [&](const std::array<double, 2>& p) { return p[0] * dir2 + p[1] * dir3; };
    auto lo = points.front(), hi = points.front();
    for (const auto& p : points) {
        if (along(p) < along(lo)) lo = p;
        if (along(p) > along(hi)) hi = p;
    }
    return std::array<Vector, 2>{Vector{1.0, lo[0], lo[1]}, Vector{1.0, hi[0], hi[1]}};
}

} // namespace valuedom
