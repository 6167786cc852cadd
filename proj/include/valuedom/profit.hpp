#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "valuedom/economy.hpp"
#include "valuedom/feasible.hpp"
#include "valuedom/operators.hpp"

namespace valuedom {

/// Technical ceiling r_A (where rho(A~ + rK) reaches 1) and the
/// reproduction-compatible ceiling r* (where rho(M(r)) reaches 1).
struct ProfitBounds {
    double r_technical = 0.0;
    double r_feasible = 0.0;
    double gap() const noexcept { return r_technical - r_feasible; }
};

/// Feasible relative wage structures at profit rate r, normalized w1 = 1.
struct PriceWageDomain {
    double r = 0.0;
    Matrix halfspace_matrix;  // I - M(r)
    bool degenerate = false;  // rho(M(r)) within 1e-9 of 1
    Vector w_star;            // left Perron vector of M(r), w1 = 1
};

/// Outcome of the set-contraction probe between two profit rates.
struct DualityReport {
    std::size_t samples = 0;
    std::size_t included = 0;        // members of the r2 domain also in the r1 domain
    bool inclusion_holds = false;    // included == samples
    Vector boundary_witness;         // point on the r1 boundary
    bool witness_excluded = false;   // witness fails membership at r2
    double witness_slack_at_r2 = 0.0;
};

namespace detail {

inline double rho_at_rate(const EconomySpec& e, const Matrix& a_tilde, double r) {
    Matrix m = a_tilde;
    if (r != 0.0) m += e.k * r;
    return spectral_radius(m).radius;
}

/// Deterministic bisection of a continuous increasing f for f(r) = target.
/// Stops on interval width 1e-12 relative, capped at 200 halvings.
template <typename F>
double bisect_increasing(F&& f, double lo, double hi) {
    double flo = f(lo);
    for (std::size_t it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) return mid;
        const double fm = f(mid);
        if (fm < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (void)flo;
    return 0.5 * (lo + hi);
}

} // namespace detail

/**
 * @brief Maximum technical profit rate: the unique r_A with
 *        rho(A~ + r_A K) = 1.
 *
 * The bracket is found by doubling r from 1e-3 until the radius exceeds 1,
 * then bisected; with K identically zero no finite ceiling exists and
 * ZeroCapitalStock is raised.
 */
inline double max_technical_rate(const EconomySpec& e) {
    check_structure(e);
    if (e.k.max_abs() == 0.0)
        fail(Errc::zero_capital_stock, "K is identically zero; the technical rate is unbounded");
    const Matrix a_tilde = composite_inputs(e).second;
    const double rho0 = spectral_radius(a_tilde).radius;
    if (rho0 >= 1.0 - kUnitRadiusMargin)
        fail(Errc::spectral_radius_too_large,
             "Hawkins-Simon violated: rho(A~) = " + std::to_string(rho0));

    double hi = 1e-3;
    while (detail::rho_at_rate(e, a_tilde, hi) <= 1.0) {
        hi *= 2.0;
        if (hi > 1e12) fail(Errc::domain_error, "no finite technical rate below 1e12");
    }
    return detail::bisect_increasing(
        [&](double r) { return detail::rho_at_rate(e, a_tilde, r) - 1.0; }, hi * 0.5, hi);
}

/**
 * @brief Maximum reproduction-compatible profit rate: the unique r* in
 *        (0, r_A) with rho(M(r*)) = 1. Requires a surplus economy.
 */
inline double max_feasible_rate(const EconomySpec& e) {
    const OperatorSet ops = build_operators(e);
    const double rho_m0 = spectral_radius(ops.m0).radius;
    if (rho_m0 >= 1.0 - kUnitRadiusMargin)
        fail(Errc::surplus_absent, "rho(M0) = " + std::to_string(rho_m0) + "; no surplus margin");
    const double r_technical = max_technical_rate(e);

    // rho(M(r)) diverges toward r_A, so a bracket end with rho > 1 exists
    // strictly inside the resolvent's guard zone; back off until found.
    auto rho_mr = [&](double r) { return spectral_radius(parametric_reproduction(e, r)).radius; };
    double hi = 0.0;
    for (int k = 6; k >= 1; --k) {
        const double candidate = r_technical * (1.0 - std::pow(10.0, -k));
        const Matrix a_tilde = composite_inputs(e).second;
        if (detail::rho_at_rate(e, a_tilde, candidate) >= 1.0 - 2.0 * kUnitRadiusMargin) continue;
        hi = candidate;
        if (rho_mr(candidate) > 1.0) break;
    }
    if (hi == 0.0 || rho_mr(hi) <= 1.0)
        fail(Errc::domain_error, "could not bracket the feasible rate below r_A");
    return detail::bisect_increasing([&](double r) { return rho_mr(r) - 1.0; }, 0.0, hi);
}

inline ProfitBounds profit_bounds(const EconomySpec& e) {
    ProfitBounds b;
    b.r_technical = max_technical_rate(e);
    b.r_feasible = max_feasible_rate(e);
    return b;
}

/**
 * @brief The wage-structure domain at profit rate r. Shares membership
 *        semantics with the value-feasible domain via the same slack rules.
 */
inline PriceWageDomain price_wage_domain(const EconomySpec& e, double r) {
    const double r_star = max_feasible_rate(e);
    if (r < 0.0 || r > r_star + kUnitRadiusMargin)
        fail(Errc::rate_beyond_feasible_max,
             "r = " + std::to_string(r) + " exceeds the feasible ceiling r* = " +
                 std::to_string(r_star));
    const Matrix mr = parametric_reproduction(e, r);
    const SpectralResult spec = spectral_radius(mr);

    PriceWageDomain d;
    d.r = r;
    d.halfspace_matrix = Matrix::identity(mr.rows()) - mr;
    d.degenerate = std::abs(spec.radius - 1.0) <= kUnitRadiusMargin;
    d.w_star = spec.left_vector;
    return d;
}

/// Membership of a wage structure, sharing the value-domain slack rules.
inline MembershipResult contains(const PriceWageDomain& d, const Vector& w) {
    if (w.size() != d.halfspace_matrix.rows())
        fail(Errc::shape_mismatch, "wage vector length mismatch");
    if (!all_positive(w)) fail(Errc::non_positive_wage, "wages must be strictly positive");
    MembershipResult r;
    r.slacks = premultiply(w, d.halfspace_matrix);
    const double lo = min_element(r.slacks);
    r.member = lo >= -kMembershipTol;
    r.strict = lo > kMembershipTol;
    return r;
}

namespace detail {

/// Per-dimension sampling box of a wage domain, from the same diagonal-entry
/// bounds used for the value domain.
inline void sampling_box(const PriceWageDomain& d, Vector& lower, Vector& upper) {
    const std::size_t n = d.halfspace_matrix.rows();
    const Matrix& g = d.halfspace_matrix;
    lower.assign(n, 1.0);
    upper.assign(n, 1.0);
    for (std::size_t j = 1; j < n; ++j) {
        const double m_1j = -g(0, j);
        const double m_jj = 1.0 - g(j, j);
        const double m_j1 = -g(j, 0);
        const double m_11 = 1.0 - g(0, 0);
        lower[j] = m_1j / (1.0 - m_jj);
        upper[j] = (1.0 - m_11) / m_j1;
    }
}

} // namespace detail

/**
 * @brief Draw members of a wage domain by rejection in its bound box
 *        (w1 = 1). A degenerate domain has exactly one member, which every
 *        draw returns.
 */
inline std::vector<Vector> sample_members(const PriceWageDomain& d, std::size_t count,
                                          std::uint64_t seed) {
    std::vector<Vector> out;
    out.reserve(count);
    if (d.degenerate) {
        out.assign(count, d.w_star);
        return out;
    }
    Vector lower, upper;
    detail::sampling_box(d, lower, upper);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n = d.halfspace_matrix.rows();
    // Thin domains near the degenerate ceiling defeat plain box rejection,
    // so repeated misses contract the draws toward the interior Perron
    // point, which is a member at every admissible rate.
    double contraction = 1.0;
    std::size_t misses = 0;
    while (out.size() < count) {
        Vector w(n, 1.0);
        for (std::size_t j = 1; j < n; ++j) {
            const double draw = lower[j] + (upper[j] - lower[j]) * unit(rng);
            w[j] = d.w_star[j] + contraction * (draw - d.w_star[j]);
        }
        if (contains(d, w).member) {
            out.push_back(std::move(w));
        } else if (++misses % 2000 == 0) {
            contraction *= 0.5;
            if (contraction < 1e-12)
                fail(Errc::domain_error, "rejection sampling cannot reach the domain");
        }
    }
    return out;
}

/**
 * @brief Nested-set probe for two profit rates r1 < r2: every sampled
 *        member of the r2 domain must belong to the r1 domain, and a
 *        deterministically constructed boundary point of the r1 domain must
 *        fail membership at r2.
 *
 * The boundary point starts from the r1 domain's Perron point and walks the
 * most-slack coordinate direction until the first constraint binds.
 */
inline DualityReport duality_probe(const EconomySpec& e, double r1, double r2,
                                   std::size_t samples, std::uint64_t seed = 0) {
    if (!(r1 >= 0.0) || !(r1 < r2))
        fail(Errc::bad_rate_order, "need 0 <= r1 < r2 <= r*");
    const PriceWageDomain d1 = price_wage_domain(e, r1);
    const PriceWageDomain d2 = price_wage_domain(e, r2);

    DualityReport report;
    report.samples = samples;
    for (const Vector& w : sample_members(d2, samples, seed))
        if (contains(d1, w).member) ++report.included;
    report.inclusion_holds = report.included == samples;

    // Boundary construction at r1.
    const Vector& w0 = d1.w_star;
    const Vector slacks = premultiply(w0, d1.halfspace_matrix);
    std::size_t most_slack = 0;
    for (std::size_t j = 1; j < slacks.size(); ++j)
        if (slacks[j] > slacks[most_slack]) most_slack = j;
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < slacks.size(); ++k) {
        const double coeff = d1.halfspace_matrix(most_slack, k);
        if (coeff < 0.0) step = std::min(step, slacks[k] / (-coeff));
    }
    Vector wb = w0;
    wb[most_slack] += step;
    report.boundary_witness = wb;
    const MembershipResult at_r2 = contains(d2, wb);
    report.witness_excluded = !at_r2.member;
    report.witness_slack_at_r2 = min_element(at_r2.slacks);
    return report;
}

} // namespace valuedom
