#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "valuedom/error.hpp"
#include "valuedom/matrix.hpp"

namespace valuedom {

/// Relation of one linear constraint row.
enum class LpRelation { less_equal, greater_equal, equal };

struct LpConstraint {
    Vector coeffs;
    LpRelation relation = LpRelation::less_equal;
    double rhs = 0.0;
};

/// A small dense linear program over free variables.
struct LpProblem {
    std::size_t nvars = 0;
    Vector objective;  // maximized
    std::vector<LpConstraint> constraints;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Vector x;
    double value = 0.0;
};

namespace detail {

/// Two-phase tableau simplex with Bland's rule. Free variables are split
/// into positive and negative parts; inequalities get slack or surplus
/// columns; artificials carry phase 1. Problem sizes here are tiny (a few
/// dozen columns), so the dense tableau is the simplest reliable choice.
class SimplexTableau {
public:
    static constexpr double kPivotTol = 1e-11;
    static constexpr double kCostTol = 1e-10;
    static constexpr double kFeasTol = 1e-8;

    explicit SimplexTableau(const LpProblem& p) {
        const std::size_t n = p.nvars;
        const std::size_t m = p.constraints.size();
        std::size_t extra = 0;
        for (const auto& c : p.constraints)
            if (c.relation != LpRelation::equal) ++extra;
        std::size_t artificials = 0;
        for (const auto& c : p.constraints) {
            const bool flipped = c.rhs < 0.0;
            LpRelation rel = c.relation;
            if (flipped) {
                if (rel == LpRelation::less_equal) rel = LpRelation::greater_equal;
                else if (rel == LpRelation::greater_equal) rel = LpRelation::less_equal;
            }
            if (rel != LpRelation::less_equal) ++artificials;
        }

        ncols_ = 2 * n + extra + artificials;
        art_begin_ = ncols_ - artificials;
        a_.assign(m, Vector(ncols_, 0.0));
        b_.assign(m, 0.0);
        basis_.assign(m, 0);

        std::size_t slack_col = 2 * n;
        std::size_t art_col = art_begin_;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& c = p.constraints[i];
            const double sign = c.rhs < 0.0 ? -1.0 : 1.0;
            LpRelation rel = c.relation;
            if (sign < 0.0) {
                if (rel == LpRelation::less_equal) rel = LpRelation::greater_equal;
                else if (rel == LpRelation::greater_equal) rel = LpRelation::less_equal;
            }
            for (std::size_t j = 0; j < n; ++j) {
                a_[i][2 * j] = sign * c.coeffs[j];
                a_[i][2 * j + 1] = -sign * c.coeffs[j];
            }
            b_[i] = sign * c.rhs;
            if (rel == LpRelation::less_equal) {
                a_[i][slack_col] = 1.0;
                basis_[i] = slack_col++;
            } else {
                if (rel == LpRelation::greater_equal) a_[i][slack_col++] = -1.0;
                a_[i][art_col] = 1.0;
                basis_[i] = art_col++;
            }
        }

        cost_.assign(ncols_, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            cost_[2 * j] = -p.objective[j];  // minimize the negated objective
            cost_[2 * j + 1] = p.objective[j];
        }
    }

    LpSolution solve(std::size_t nvars) {
        // Phase 1: drive the artificial variables to zero.
        if (art_begin_ < ncols_) {
            Vector phase1(ncols_, 0.0);
            for (std::size_t j = art_begin_; j < ncols_; ++j) phase1[j] = 1.0;
            if (!run(phase1, /*banned_from=*/ncols_)) return {LpStatus::unbounded, {}, 0.0};
            double infeasibility = 0.0;
            for (std::size_t i = 0; i < b_.size(); ++i)
                if (basis_[i] >= art_begin_) infeasibility += b_[i];
            if (infeasibility > kFeasTol) return {LpStatus::infeasible, {}, 0.0};
            pivot_out_artificials();
        }
        // Phase 2: optimize the real objective, artificials barred.
        if (!run(cost_, /*banned_from=*/art_begin_)) return {LpStatus::unbounded, {}, 0.0};

        LpSolution s;
        s.status = LpStatus::optimal;
        s.x.assign(nvars, 0.0);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const std::size_t col = basis_[i];
            if (col < 2 * nvars) {
                const std::size_t var = col / 2;
                s.x[var] += (col % 2 == 0 ? b_[i] : -b_[i]);
            }
        }
        s.value = 0.0;
        for (std::size_t j = 0; j < nvars; ++j) s.value += s.x[j] * (-cost_[2 * j]);
        return s;
    }

private:
    bool run(const Vector& cost, std::size_t banned_from) {
        const std::size_t m = b_.size();
        for (std::size_t guard = 0; guard < 100000; ++guard) {
            // Reduced costs priced from scratch; Bland: smallest improving index.
            std::size_t enter = ncols_;
            for (std::size_t j = 0; j < banned_from; ++j) {
                double rc = cost[j];
                for (std::size_t i = 0; i < m; ++i)
                    if (cost[basis_[i]] != 0.0) rc -= cost[basis_[i]] * a_[i][j];
                if (rc < -kCostTol) { enter = j; break; }
            }
            if (enter == ncols_) return true;

            std::size_t leave = m;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (a_[i][enter] > kPivotTol) {
                    const double ratio = b_[i] / a_[i][enter];
                    if (ratio < best_ratio - 1e-15 ||
                        (std::abs(ratio - best_ratio) <= 1e-15 &&
                         (leave == m || basis_[i] < basis_[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == m) return false;
            pivot(leave, enter);
        }
        return false;
    }

    void pivot(std::size_t row, std::size_t col) {
        const double p = a_[row][col];
        for (double& v : a_[row]) v /= p;
        b_[row] /= p;
        for (std::size_t i = 0; i < b_.size(); ++i) {
            if (i == row) continue;
            const double f = a_[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < ncols_; ++j) a_[i][j] -= f * a_[row][j];
            a_[i][col] = 0.0;
            b_[i] -= f * b_[row];
        }
        basis_[row] = col;
    }

    /// Swap zero-valued artificials out of the basis where a structural
    /// column is available; rows with none are redundant and stay put.
    void pivot_out_artificials() {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] < art_begin_) continue;
            for (std::size_t j = 0; j < art_begin_; ++j) {
                if (std::abs(a_[i][j]) > kPivotTol) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    std::vector<Vector> a_;
    Vector b_;
    Vector cost_;
    std::vector<std::size_t> basis_;
    std::size_t ncols_ = 0;
    std::size_t art_begin_ = 0;
};

} // namespace detail

/// Maximize objective^T x over the constraint rows; all variables free.
inline LpSolution solve_lp(const LpProblem& p) {
    for (const auto& c : p.constraints)
        if (c.coeffs.size() != p.nvars)
            fail(Errc::shape_mismatch, "LP constraint width mismatch");
    detail::SimplexTableau tableau(p);
    return tableau.solve(p.nvars);
}

} // namespace valuedom
