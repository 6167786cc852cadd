#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "valuedom/matrix.hpp"

namespace valuedom {

/**
 * @brief Result of a dominant-eigenpair computation on a nonnegative matrix.
 *
 * left_vector is normalized so its first component equals 1 (falling back to
 * sup-norm scaling when the first component vanishes, which can only happen
 * for reducible inputs); right_vector is normalized to unit sum. Both are
 * strictly positive whenever the input matrix is strictly positive.
 */
struct SpectralResult {
    double radius = 0.0;
    Vector left_vector;
    Vector right_vector;
    std::size_t iterations = 0;
    bool converged = false;
};

namespace detail {

inline void require_square(const Matrix& m, const char* who) {
    if (!m.square() || m.rows() == 0)
        fail(Errc::non_square, std::string(who) + " requires a nonempty square matrix");
}

inline void require_nonnegative(const Matrix& m, const char* who) {
    if (!m.all_nonnegative())
        fail(Errc::negative_entry, std::string(who) + " requires a nonnegative matrix");
}

/// One-sided shifted power iteration. Returns the dominant eigenvalue of
/// m + shift*I estimated by Rayleigh quotient, with the iterate left in v.
inline double power_iterate(const Matrix& m, double shift, Vector& v,
                            std::size_t max_iterations, double rel_change_tol,
                            std::size_t& iterations_used) {
    const std::size_t n = m.rows();
    v.assign(n, 1.0 / static_cast<double>(n));
    double estimate = 0.0;
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        Vector w = multiply(m, v);
        for (std::size_t i = 0; i < n; ++i) w[i] += shift * v[i];
        const double rayleigh = dot(v, w) / dot(v, v);
        const double norm = max_abs(w);
        if (norm == 0.0) {  // nilpotent direction; dominant eigenvalue of m+shift*I is shift
            iterations_used = it;
            v.assign(n, 1.0 / static_cast<double>(n));
            return shift;
        }
        for (double& x : w) x /= norm;
        const bool settled =
            std::abs(rayleigh - estimate) <= rel_change_tol * std::max(1.0, std::abs(rayleigh));
        estimate = rayleigh;
        v = std::move(w);
        if (settled) {
            iterations_used = it;
            return estimate;
        }
    }
    iterations_used = max_iterations;
    return estimate;
}

} // namespace detail

/**
 * @brief Dominant eigenvalue and Perron vectors of a nonnegative matrix.
 *
 * Power iteration with a Rayleigh-quotient estimate, run on m + s*I with
 * s = inf_norm(m)/2. The shift leaves the Perron root (shifted by s) and its
 * eigenvectors untouched while breaking the periodicity that would otherwise
 * stall the iteration on cyclic matrices. Convergence test on relative
 * change 1e-13, cap 100000 iterations. The final radius is the two-sided
 * quotient y^T M x / y^T x, and the eigen-residual is verified against the
 * documented tolerance before returning.
 *
 * Throws NotConverged when the cap is reached and the residual still
 * violates the tolerance (a degenerate or periodic matrix outside the
 * model's assumptions).
 */
inline SpectralResult spectral_radius(const Matrix& m) {
    detail::require_square(m, "spectral_radius");
    detail::require_nonnegative(m, "spectral_radius");
    const std::size_t n = m.rows();

    SpectralResult out;
    if (n == 1) {
        out.radius = m(0, 0);
        out.left_vector = {1.0};
        out.right_vector = {1.0};
        out.iterations = 0;
        out.converged = true;
        return out;
    }

    constexpr std::size_t kMaxIterations = 100000;
    constexpr double kRelChangeTol = 1e-13;
    const double shift = 0.5 * m.inf_norm();

    std::size_t iters_right = 0, iters_left = 0;
    Vector right, left;
    const Matrix mt = m.transposed();
    detail::power_iterate(m, shift, right, kMaxIterations, kRelChangeTol, iters_right);
    detail::power_iterate(mt, shift, left, kMaxIterations, kRelChangeTol, iters_left);

    // Two-sided Rayleigh quotient on the unshifted matrix.
    const Vector mright = multiply(m, right);
    double radius = dot(left, mright) / dot(left, right);
    if (std::abs(radius) < 1e-300) radius = 0.0;

    // Normalizations: y1 = 1 for the left vector, unit sum for the right.
    const double y1 = left[0];
    const double ymax = max_abs(left);
    const double left_scale = (std::abs(y1) > 1e-12 * ymax) ? y1 : ymax;
    for (double& x : left) x /= left_scale;
    const double rsum = sum(right);
    if (rsum != 0.0)
        for (double& x : right) x /= rsum;

    // Residual check: ||y^T M - rho y^T||_inf against the documented bound.
    const Vector ytm = premultiply(left, m);
    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) residual = std::max(residual, std::abs(ytm[j] - radius * left[j]));
    const double bound = 1e-10 * std::max(1.0, std::abs(radius) * max_abs(left));

    out.radius = radius;
    out.left_vector = std::move(left);
    out.right_vector = std::move(right);
    out.iterations = std::max(iters_right, iters_left);
    const bool cap_hit = iters_right >= kMaxIterations || iters_left >= kMaxIterations;
    if (cap_hit && residual > bound)
        fail(Errc::not_converged,
             "power iteration hit the cap with eigen-residual " + std::to_string(residual));
    out.converged = !cap_hit;
    return out;
}

/**
 * @brief Left Perron eigenvector of a strictly positive matrix, normalized
 *        so its first component equals 1.
 */
inline Vector perron_left(const Matrix& m) {
    detail::require_square(m, "perron_left");
    if (!m.all_positive())
        fail(Errc::not_strictly_positive, "perron_left requires a strictly positive matrix");
    return spectral_radius(m).left_vector;
}

/**
 * @brief True iff the directed graph with an edge i->j whenever m(i,j) > 0
 *        is strongly connected. Double breadth-first reachability.
 */
inline bool is_irreducible(const Matrix& m) {
    detail::require_square(m, "is_irreducible");
    detail::require_nonnegative(m, "is_irreducible");
    const std::size_t n = m.rows();
    if (n == 1) return true;

    auto reaches_all = [&](bool forward) {
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> queue{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!queue.empty()) {
            const std::size_t i = queue.back();
            queue.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                const double edge = forward ? m(i, j) : m(j, i);
                if (edge > 0.0 && !seen[j]) {
                    seen[j] = 1;
                    ++count;
                    queue.push_back(j);
                }
            }
        }
        return count == n;
    };
    return reaches_all(true) && reaches_all(false);
}

/// Spectral-radius margin below which (I - m) is treated as non-invertible.
constexpr double kUnitRadiusMargin = 1e-9;

/**
 * @brief (I - m)^-1 for a nonnegative m with spectral radius below 1.
 *
 * Direct LU solve of n right-hand sides plus one refinement step; throws
 * SpectralRadiusTooLarge when rho(m) >= 1 - 1e-9 (the economy is not
 * productive enough for the inverse to be meaningful).
 */
inline Matrix inverse_of_i_minus(const Matrix& m) {
    detail::require_square(m, "inverse_of_i_minus");
    detail::require_nonnegative(m, "inverse_of_i_minus");
    const double rho = spectral_radius(m).radius;
    if (rho >= 1.0 - kUnitRadiusMargin)
        fail(Errc::spectral_radius_too_large,
             "rho = " + std::to_string(rho) + " >= 1 - 1e-9; (I - M) is not safely invertible");
    const Matrix lhs = Matrix::identity(m.rows()) - m;
    return solve_refined(lhs, Matrix::identity(m.rows()));
}

} // namespace valuedom
