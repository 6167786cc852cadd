#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "valuedom/matrix.hpp"
#include "valuedom/spectral.hpp"

namespace valuedom {

/**
 * @brief Physical description of an n-sector economy.
 *
 * A(i,j): units of commodity i consumed as a flow per unit of commodity j.
 * K(i,j): stock of commodity i advanced per unit of commodity j's output.
 * delta[j]: per-period depreciation rate of sector j's fixed capital, in (0,1].
 * labor[j]: direct hours per unit of output (diagonal of the labor matrix), > 0.
 * B(i,j): units of commodity i consumed per hour worked in sector j.
 * x[j]: gross physical output, > 0.
 */
struct EconomySpec {
    std::vector<std::string> names;
    Matrix a;
    Matrix k;
    Vector delta;
    Vector labor;
    Matrix b;
    Vector x;

    std::size_t size() const noexcept { return labor.size(); }
};

/// Findings from the assumption checks, with the spectral radii that drove them.
struct ValidationReport {
    bool hawkins_simon = false;
    double rho_a_tilde = 0.0;
    bool irreducible = false;
    bool labor_positive = false;
    bool consumption_columns_ok = false;
    bool surplus = false;
    double rho_a_hat = 0.0;
    bool reproduction = false;
    double rho_m0 = 0.0;
    std::vector<std::string> messages;

    bool all_ok() const {
        return hawkins_simon && irreducible && labor_positive && consumption_columns_ok &&
               surplus && reproduction;
    }
};

namespace detail {

inline void require_matrix_shape(const Matrix& m, std::size_t n, const char* name) {
    if (m.rows() != n || m.cols() != n)
        fail(Errc::shape_mismatch, std::string(name) + " must be " + std::to_string(n) + "x" +
                                       std::to_string(n));
}

inline void require_vector_shape(const Vector& v, std::size_t n, const char* name) {
    if (v.size() != n)
        fail(Errc::shape_mismatch,
             std::string(name) + " must have length " + std::to_string(n));
}

} // namespace detail

/**
 * @brief Structural checks run at construction time: shapes, signs, and the
 *        depreciation/labor/output domains. Economic assumption checks
 *        (irreducibility, Hawkins-Simon, surplus) live in validate().
 */
inline void check_structure(const EconomySpec& e) {
    const std::size_t n = e.names.size();
    if (n == 0) fail(Errc::domain_error, "economy needs at least one sector");
    detail::require_matrix_shape(e.a, n, "A");
    detail::require_matrix_shape(e.k, n, "K");
    detail::require_matrix_shape(e.b, n, "B");
    detail::require_vector_shape(e.delta, n, "delta");
    detail::require_vector_shape(e.labor, n, "labor");
    detail::require_vector_shape(e.x, n, "x");
    if (!e.a.all_nonnegative()) fail(Errc::domain_error, "A has a negative entry");
    if (!e.k.all_nonnegative()) fail(Errc::domain_error, "K has a negative entry");
    if (!e.b.all_nonnegative()) fail(Errc::domain_error, "B has a negative entry");
    for (double d : e.delta)
        if (!(d > 0.0) || d > 1.0)
            fail(Errc::domain_error, "delta components must lie in (0, 1]");
    for (double l : e.labor)
        if (!(l > 0.0)) fail(Errc::domain_error, "labor coefficients must be strictly positive");
    for (double v : e.x)
        if (!(v > 0.0)) fail(Errc::domain_error, "gross output must be strictly positive");
}

/**
 * @brief Depreciation-augmented input matrices: D = K diag(delta) and the
 *        composite A~ = A + D. Exact arithmetic, no rounding games.
 */
inline std::pair<Matrix, Matrix> composite_inputs(const EconomySpec& e) {
    const std::size_t n = e.size();
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d(i, j) = e.k(i, j) * e.delta[j];
    return {d, e.a + d};
}

/// B with each sector's hourly consumption weighted by its labor coefficient
/// (the product B L with L diagonal).
inline Matrix consumption_times_labor(const EconomySpec& e) {
    const std::size_t n = e.size();
    Matrix bl(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) bl(i, j) = e.b(i, j) * e.labor[j];
    return bl;
}

/**
 * @brief Assumption report: Hawkins-Simon on A~, irreducibility, labor
 *        positivity, consumption columns, and the two surplus conditions
 *        rho(A~ + B L) < 1 and rho(M0) < 1.
 *
 * Shape and sign problems are hard errors raised by check_structure;
 * everything here is an economic finding carried in the report.
 */
inline ValidationReport validate(const EconomySpec& e) {
    check_structure(e);
    const std::size_t n = e.size();
    ValidationReport r;

    auto [d, a_tilde] = composite_inputs(e);
    (void)d;
    r.rho_a_tilde = spectral_radius(a_tilde).radius;
    r.hawkins_simon = r.rho_a_tilde < 1.0 - kUnitRadiusMargin;
    if (!r.hawkins_simon)
        r.messages.push_back("Hawkins-Simon violated: rho(A~) = " + std::to_string(r.rho_a_tilde));

    r.irreducible = is_irreducible(a_tilde);
    if (!r.irreducible)
        r.messages.push_back("composite input matrix A~ is reducible; strict positivity of the "
                             "reproduction operator is not guaranteed");
    else if (!is_irreducible(e.a))
        // Informational only: the connectivity assumption is on A~, which
        // depreciation flows can make irreducible even when A alone is not.
        r.messages.push_back("flow matrix A alone is reducible; connectivity is carried by "
                             "the depreciation flows in A~");

    r.labor_positive = all_positive(e.labor);

    r.consumption_columns_ok = true;
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += e.b(i, j);
        if (col == 0.0) {
            r.consumption_columns_ok = false;
            r.messages.push_back("consumption matrix B has an all-zero column at sector " +
                                 std::to_string(j + 1));
        }
    }

    const Matrix a_hat = a_tilde + consumption_times_labor(e);
    r.rho_a_hat = spectral_radius(a_hat).radius;
    r.surplus = r.rho_a_hat < 1.0 - kUnitRadiusMargin;
    if (!r.surplus)
        r.messages.push_back("no physical surplus: rho(A~ + BL) = " + std::to_string(r.rho_a_hat));

    if (r.hawkins_simon) {
        const Matrix leontief_inv = inverse_of_i_minus(a_tilde);
        Matrix s(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s(i, j) = e.labor[i] * leontief_inv(i, j);
        r.rho_m0 = spectral_radius(s * e.b).radius;
        r.reproduction = r.rho_m0 < 1.0 - kUnitRadiusMargin;
        if (!r.reproduction)
            r.messages.push_back("labor power cannot reproduce with a margin: rho(M0) = " +
                                 std::to_string(r.rho_m0));
    }
    return r;
}

/**
 * @brief The same economy re-measured at prices p: A' = P A P^-1,
 *        K' = P K P^-1, labor' = labor / p, B' = P B, x' = P x.
 *
 * Exists so callers can confirm that the reproduction operator does not
 * depend on the unit of account.
 */
inline EconomySpec monetary_transform(const EconomySpec& e, const Vector& p) {
    check_structure(e);
    detail::require_vector_shape(p, e.size(), "p");
    if (!all_positive(p)) fail(Errc::non_positive_price, "price vector must be strictly positive");

    const std::size_t n = e.size();
    EconomySpec t = e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            t.a(i, j) = p[i] * e.a(i, j) / p[j];
            t.k(i, j) = p[i] * e.k(i, j) / p[j];
            t.b(i, j) = p[i] * e.b(i, j);
        }
    for (std::size_t j = 0; j < n; ++j) {
        t.labor[j] = e.labor[j] / p[j];
        t.x[j] = e.x[j] * p[j];
    }
    return t;
}

/**
 * @brief Deterministic random economy for property tests.
 *
 * Entries are drawn uniformly; irreducibility is forced by adding 1e-3 along
 * a random Hamiltonian cycle of A; B is rescaled downward until
 * rho(A~ + BL) <= 0.95, so the generated economy always validates with a
 * physical surplus.
 */
inline EconomySpec random_economy(std::size_t n, std::uint64_t seed) {
    if (n < 2) fail(Errc::domain_error, "random_economy requires n >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double scale = 0.5 / static_cast<double>(n);
    EconomySpec e;
    e.names.resize(n);
    for (std::size_t j = 0; j < n; ++j) e.names[j] = "sector_" + std::to_string(j + 1);
    e.a = Matrix(n, n);
    e.k = Matrix(n, n);
    e.b = Matrix(n, n);
    e.delta.resize(n);
    e.labor.resize(n);
    e.x.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            e.a(i, j) = scale * unit(rng);
            e.k(i, j) = 2.0 * scale * unit(rng);
            e.b(i, j) = 0.05 + 0.45 * unit(rng);
        }
    for (std::size_t j = 0; j < n; ++j) {
        e.delta[j] = 0.05 + 0.95 * unit(rng);
        e.labor[j] = 0.2 + 1.3 * unit(rng);
        e.x[j] = 10.0 + 190.0 * unit(rng);
    }

    // A random Hamiltonian cycle with a small floor keeps A~ irreducible.
    std::vector<std::size_t> cycle(n);
    std::iota(cycle.begin(), cycle.end(), 0);
    std::shuffle(cycle.begin(), cycle.end(), rng);
    for (std::size_t i = 0; i < n; ++i)
        e.a(cycle[i], cycle[(i + 1) % n]) += 1e-3;

    // Keep the composite input matrix comfortably productive.
    auto rho_a_tilde = [&e] { return spectral_radius(composite_inputs(e).second).radius; };
    const double rho0 = rho_a_tilde();
    if (rho0 > 0.6) {
        const double shrink = 0.6 / rho0;
        e.a *= shrink;
        e.k *= shrink;
    }

    // Rescale B downward until the surplus condition has a clear margin.
    auto rho_a_hat = [&e] {
        return spectral_radius(composite_inputs(e).second + consumption_times_labor(e)).radius;
    };
    while (rho_a_hat() > 0.95) e.b *= 0.85;
    return e;
}

} // namespace valuedom
