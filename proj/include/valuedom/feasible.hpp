#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "valuedom/operators.hpp"

namespace valuedom {

/// Slack sign tolerance separating boundary membership from the interior.
constexpr double kMembershipTol = 1e-12;

/**
 * @brief Half-space description of the value-feasible set of reduction
 *        vectors {c > 0 : c1 = 1, c^T (I - M0) >= 0}.
 *
 * lower_bounds/upper_bounds are the per-dimension enclosure derived from the
 * diagonal-entry property: for j >= 2,
 *   c_min[j] = M0(1,j) / (1 - M0(j,j)),   c_max[j] = (1 - M0(1,1)) / M0(j,1),
 * and both bounds equal 1 in the benchmark dimension. y_star is the left
 * Perron vector of M0 (y1 = 1), the unique member equalizing exploitation
 * rates at e_star = (1 - lambda_star) / lambda_star.
 */
struct ValueFeasibleDomain {
    Matrix halfspace_matrix;  // I - M0; constraint j reads c^T column_j >= 0
    Vector lower_bounds;
    Vector upper_bounds;
    double lambda_star = 0.0;
    Vector y_star;
    double e_star = 0.0;
    bool degenerate = false;
};

struct MembershipResult {
    bool member = false;
    bool strict = false;
    Vector slacks;
};

/// Outcome of the three equivalent surplus conditions.
struct ExistenceDiagnosis {
    bool interior_nonempty = false;  // witnessed by y_star with strict slacks
    bool rho_m0_below_one = false;
    bool rho_a_hat_below_one = false;
    double rho_m0 = 0.0;
    double rho_a_hat = 0.0;
    bool boundary = false;  // rho(M0) within 1e-9 of 1
    Vector singleton;       // the unique member y_star when boundary
};

inline ValueFeasibleDomain build_value_domain(const OperatorSet& ops) {
    const Matrix& m0 = ops.m0;
    const std::size_t n = m0.rows();
    if (!m0.all_positive())
        fail(Errc::not_strictly_positive,
             "the reproduction operator must be strictly positive to bound the domain");

    ValueFeasibleDomain d;
    d.halfspace_matrix = Matrix::identity(n) - m0;

    const SpectralResult spec = spectral_radius(m0);
    d.lambda_star = spec.radius;
    d.y_star = spec.left_vector;
    d.e_star = (1.0 - d.lambda_star) / d.lambda_star;
    d.degenerate = std::abs(d.lambda_star - 1.0) <= kUnitRadiusMargin;

    d.lower_bounds.assign(n, 1.0);
    d.upper_bounds.assign(n, 1.0);
    for (std::size_t j = 1; j < n; ++j) {
        d.lower_bounds[j] = m0(0, j) / (1.0 - m0(j, j));
        d.upper_bounds[j] = (1.0 - m0(0, 0)) / m0(j, 0);
    }
    return d;
}

/**
 * @brief Membership query. Slacks are c^T (I - M0) per column; membership
 *        allows slacks down to -1e-12 (the set is closed), strictness
 *        requires every slack above +1e-12.
 *
 * With require_normalized set, c1 must equal 1 within 1e-12.
 */
inline MembershipResult contains(const ValueFeasibleDomain& d, const Vector& c,
                                 bool require_normalized = false) {
    if (c.size() != d.halfspace_matrix.rows())
        fail(Errc::shape_mismatch, "reduction vector length mismatch");
    if (!all_positive(c))
        fail(Errc::non_positive_reduction, "reduction coefficients must be strictly positive");
    if (require_normalized && std::abs(c[0] - 1.0) > kMembershipTol)
        fail(Errc::normalization_violated, "benchmark coefficient c1 must equal 1");

    MembershipResult r;
    r.slacks = premultiply(c, d.halfspace_matrix);
    const double lo = min_element(r.slacks);
    r.member = lo >= -kMembershipTol;
    r.strict = lo > kMembershipTol;
    return r;
}

/// Sectoral exploitation rates e_j = (c_j - (c^T M0)_j) / (c^T M0)_j.
inline Vector exploitation_rates(const OperatorSet& ops, const Vector& c) {
    if (c.size() != ops.m0.rows()) fail(Errc::shape_mismatch, "reduction vector length mismatch");
    if (!all_positive(c))
        fail(Errc::non_positive_reduction, "reduction coefficients must be strictly positive");
    const Vector reproduction_cost = premultiply(c, ops.m0);
    Vector e(c.size());
    for (std::size_t j = 0; j < c.size(); ++j)
        e[j] = (c[j] - reproduction_cost[j]) / reproduction_cost[j];
    return e;
}

/**
 * @brief The three equivalent existence conditions for the feasible domain:
 *        a strict interior witness at y_star, rho(M0) < 1, and
 *        rho(A~ + BL) < 1, plus the boundary classification.
 *
 * The interior witness is tested as slack_j(y_star) > 1e-9 * y_star_j, the
 * same unit-radius margin used by the spectral tests, so the three booleans
 * agree away from a sub-1e-9 knife edge.
 */
inline ExistenceDiagnosis existence_diagnosis(const EconomySpec& e) {
    const OperatorSet ops = build_operators(e);
    const SpectralResult spec = spectral_radius(ops.m0);

    ExistenceDiagnosis d;
    d.rho_m0 = spec.radius;
    d.rho_a_hat = ops.rho_a_hat;
    d.rho_m0_below_one = d.rho_m0 < 1.0 - kUnitRadiusMargin;
    d.rho_a_hat_below_one = d.rho_a_hat < 1.0 - kUnitRadiusMargin;

    const Vector slacks = premultiply(spec.left_vector, Matrix::identity(ops.m0.rows()) - ops.m0);
    d.interior_nonempty = true;
    for (std::size_t j = 0; j < slacks.size(); ++j)
        if (slacks[j] <= kUnitRadiusMargin * spec.left_vector[j]) d.interior_nonempty = false;

    d.boundary = std::abs(d.rho_m0 - 1.0) <= kUnitRadiusMargin;
    if (d.boundary) d.singleton = spec.left_vector;
    return d;
}

/**
 * @brief Two-dimensional slice of a three-sector domain at c1 = 1.
 *
 * Vertices come from pairwise intersections of the three constraint lines
 * and the four bound-box edges; infeasible intersections are discarded and
 * the survivors are ordered counterclockwise and closed (first vertex
 * repeated at the end). The degenerate domain yields the single point
 * (y2*, y3*).
 */
inline std::vector<std::array<double, 2>> slice_2d(const ValueFeasibleDomain& d) {
    const std::size_t n = d.halfspace_matrix.rows();
    if (n != 3) fail(Errc::dimension_not_3, "the slice export is defined for 3 sectors only");

    if (d.degenerate) return {{d.y_star[1], d.y_star[2]}};

    // Lines a*c2 + b*c3 + k = 0; constraints are a*c2 + b*c3 + k >= 0.
    struct Line {
        double a, b, k;
    };
    const Matrix& g = d.halfspace_matrix;
    std::vector<Line> constraints;
    for (std::size_t j = 0; j < 3; ++j)
        constraints.push_back({g(1, j), g(2, j), g(0, j)});
    // Bound-box edges carry the same >= 0 orientation.
    constraints.push_back({1.0, 0.0, -d.lower_bounds[1]});
    constraints.push_back({-1.0, 0.0, d.upper_bounds[1]});
    constraints.push_back({0.0, 1.0, -d.lower_bounds[2]});
    constraints.push_back({0.0, -1.0, d.upper_bounds[2]});

    const double scale = std::max({1.0, d.upper_bounds[1], d.upper_bounds[2]});
    const double tol = 1e-9 * scale;

    std::vector<std::array<double, 2>> verts;
    for (std::size_t i = 0; i < constraints.size(); ++i)
        for (std::size_t j = i + 1; j < constraints.size(); ++j) {
            const Line& p = constraints[i];
            const Line& q = constraints[j];
            const double det = p.a * q.b - q.a * p.b;
            if (std::abs(det) < 1e-14) continue;
            const double c2 = (-p.k * q.b + q.k * p.b) / det;
            const double c3 = (-p.a * q.k + q.a * p.k) / det;
            bool feasible = true;
            for (const Line& l : constraints)
                if (l.a * c2 + l.b * c3 + l.k < -tol) feasible = false;
            if (!feasible) continue;
            bool duplicate = false;
            for (const auto& v : verts)
                if (std::abs(v[0] - c2) <= tol && std::abs(v[1] - c3) <= tol) duplicate = true;
            if (!duplicate) verts.push_back({c2, c3});
        }

    if (verts.empty()) fail(Errc::empty_slice, "the slice contains no feasible point");
    if (verts.size() == 1) return verts;

    double cx = 0.0, cy = 0.0;
    for (const auto& v : verts) {
        cx += v[0];
        cy += v[1];
    }
    cx /= static_cast<double>(verts.size());
    cy /= static_cast<double>(verts.size());
    std::sort(verts.begin(), verts.end(), [cx, cy](const auto& u, const auto& v) {
        return std::atan2(u[1] - cy, u[0] - cx) < std::atan2(v[1] - cy, v[0] - cx);
    });
    verts.push_back(verts.front());
    return verts;
}

} // namespace valuedom
