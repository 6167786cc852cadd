#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "valuedom/economy_io.hpp"
#include "valuedom/feasible.hpp"
#include "valuedom/profit.hpp"
#include "valuedom/report.hpp"
#include "valuedom/transform.hpp"

namespace valuedom::cli {

enum class Command { validate, analyze, interval, transform, slice, sweep, gen };

/// Parsed command-line request. transform needs either (r, w_rel) for the
/// relative system or (p_star, pi_star) for the absolute one, never both.
struct RunConfig {
    Command command = Command::validate;
    std::string input_path;
    std::optional<std::string> output_path;
    std::optional<double> r;
    std::optional<Vector> w_rel;
    std::optional<double> p_star;
    std::optional<double> pi_star;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    std::optional<std::size_t> points;
    std::string format;  // "json" or "csv"; empty picks the command default
};

namespace detail {

inline EconomySpec load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::parse_error, "cannot open input file: " + path);
    return load_economy(in);
}

inline Report validation_report(const ValidationReport& r) {
    Report doc = Report::object();
    doc.set("hawkins_simon", Report::boolean(r.hawkins_simon));
    doc.set("rho_a_tilde", Report::number(r.rho_a_tilde));
    doc.set("irreducible", Report::boolean(r.irreducible));
    doc.set("labor_positive", Report::boolean(r.labor_positive));
    doc.set("consumption_columns_ok", Report::boolean(r.consumption_columns_ok));
    doc.set("surplus", Report::boolean(r.surplus));
    doc.set("rho_a_hat", Report::number(r.rho_a_hat));
    doc.set("reproduction", Report::boolean(r.reproduction));
    doc.set("rho_m0", Report::number(r.rho_m0));
    doc.set("messages", Report::strings(r.messages));
    return doc;
}

inline Report economy_report(const EconomySpec& e) {
    auto matrix_rows = [](const Matrix& m) {
        Report rows = Report::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Vector row(m.cols());
            for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
            rows.push(Report::numbers(row));
        }
        return rows;
    };
    Report doc = Report::object();
    doc.set("sectors", Report::strings(e.names));
    doc.set("A", matrix_rows(e.a));
    doc.set("K", matrix_rows(e.k));
    doc.set("delta", Report::numbers(e.delta));
    doc.set("labor", Report::numbers(e.labor));
    doc.set("B", matrix_rows(e.b));
    doc.set("x", Report::numbers(e.x));
    return doc;
}

inline Report solution_report(const TransformSolution& sol, const Vector& exploitation) {
    Report doc = Report::object();
    doc.set("c_star", Report::numbers(sol.c_star));
    doc.set("kappa", Report::number(sol.aggregates.kappa));
    doc.set("gamma", Report::number(sol.aggregates.gamma));
    doc.set("F", Report::number(sol.aggregates.total_value));
    doc.set("S", Report::number(sol.aggregates.total_surplus));
    doc.set("P", Report::number(sol.aggregates.total_price));
    doc.set("Pi", Report::number(sol.aggregates.total_profit));
    doc.set("residual_eq1", Report::number(sol.residual_eq1));
    doc.set("residual_eq2", Report::number(sol.residual_eq2));
    doc.set("mode", Report::string(sol.mode == TransformMode::relative ? "relative" : "absolute"));
    doc.set("exploitation_rates", Report::numbers(exploitation));
    if (sol.aggregates.mu) doc.set("mu", Report::number(*sol.aggregates.mu));
    return doc;
}

inline Report analyze_report(const EconomySpec& e) {
    const OperatorSet ops = build_operators(e);
    const ValueFeasibleDomain domain = build_value_domain(ops);
    const ProfitBounds bounds = profit_bounds(e);
    Report doc = Report::object();
    doc.set("rho_a_tilde", Report::number(spectral_radius(ops.a_tilde).radius));
    doc.set("rho_m0", Report::number(domain.lambda_star));
    doc.set("rho_a_hat", Report::number(ops.rho_a_hat));
    doc.set("lambda_star", Report::number(domain.lambda_star));
    doc.set("y_star", Report::numbers(domain.y_star));
    doc.set("e_star", Report::number(domain.e_star));
    doc.set("degenerate", Report::boolean(domain.degenerate));
    doc.set("r_technical", Report::number(bounds.r_technical));
    doc.set("r_feasible", Report::number(bounds.r_feasible));
    doc.set("gap", Report::number(bounds.gap()));
    doc.set("lower_bounds", Report::numbers(domain.lower_bounds));
    doc.set("upper_bounds", Report::numbers(domain.upper_bounds));
    return doc;
}

inline Report interval_report(const EconomySpec& e) {
    const OperatorSet ops = build_operators(e);
    const CompatibilityInterval ci = critical_shares(ops, e.x);
    Report doc = Report::object();
    doc.set("per_sector", Report::numbers(ci.per_sector));
    doc.set("gamma_min", Report::number(ci.gamma_min));
    doc.set("gamma_max", Report::number(ci.gamma_max));
    return doc;
}

inline std::string slice_csv(const EconomySpec& e, const std::optional<double>& r,
                             const std::optional<Vector>& w_rel_opt, std::ostream& errs) {
    const OperatorSet ops = build_operators(e);
    const ValueFeasibleDomain domain = build_value_domain(ops);
    const auto polygon = slice_2d(domain);

    std::ostringstream csv;
    for (const auto& v : polygon)
        csv << "vertex," << format_number(v[0]) << "," << format_number(v[1]) << "\n";
    if (r) {
        Vector w_rel = w_rel_opt.value_or(Vector(e.size(), 1.0));
        if (!w_rel_opt)
            errs << "note: no wage structure given; using the uniform vector w_rel = 1\n";
        const double gamma = profit_share(e, w_rel, *r);
        const Vector eta = hyperplane_normal(ops, e.x, gamma);
        csv << "gamma," << format_number(gamma) << "\n";
        csv << "line";
        for (double v : eta) csv << "," << format_number(v);
        csv << "\n";
    }
    return csv.str();
}

inline std::string sweep_csv(const EconomySpec& e, std::size_t points) {
    const double r_star = max_feasible_rate(e);
    std::ostringstream csv;
    csv << "r,rho_Mr,domain_degenerate\n";
    for (std::size_t i = 0; i <= points; ++i) {
        const double r = r_star * static_cast<double>(i) / static_cast<double>(points);
        const double rho = spectral_radius(parametric_reproduction(e, r)).radius;
        const bool degenerate = std::abs(rho - 1.0) <= kUnitRadiusMargin;
        csv << format_number(r) << "," << format_number(rho) << ","
            << (degenerate ? "true" : "false") << "\n";
    }
    return csv.str();
}

inline int emit(const RunConfig& cfg, const std::string& text, std::ostream& out,
                std::ostream& errs) {
    if (!cfg.output_path) {
        out << text;
        return 0;
    }
    std::ofstream f(*cfg.output_path);
    if (!f) {
        errs << "error: cannot open output file: " << *cfg.output_path << "\n";
        return 1;
    }
    f << text;
    return 0;
}

} // namespace detail

/**
 * @brief Execute one CLI request. Returns 0 on success, 1 on domain errors
 *        (with a message naming the violated assumption), 2 on usage errors.
 */
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& errs) {
    try {
        std::ostringstream text;
        switch (cfg.command) {
            case Command::validate:
                text << detail::validation_report(validate(detail::load_input(cfg.input_path)));
                break;
            case Command::analyze:
                text << detail::analyze_report(detail::load_input(cfg.input_path));
                break;
            case Command::interval:
                text << detail::interval_report(detail::load_input(cfg.input_path));
                break;
            case Command::transform: {
                const bool relative = cfg.r.has_value();
                const bool absolute = cfg.p_star.has_value() || cfg.pi_star.has_value();
                if (relative == absolute) {
                    errs << "usage: transform needs either --r (relative system) or both "
                            "--p-star and --pi-star (absolute system)\n";
                    return 2;
                }
                const EconomySpec e = detail::load_input(cfg.input_path);
                TransformSolution sol;
                if (relative) {
                    Vector w_rel = cfg.w_rel.value_or(Vector(e.size(), 1.0));
                    if (!cfg.w_rel)
                        errs << "note: no wage structure given; using the uniform vector "
                                "w_rel = 1\n";
                    sol = solve_relative(e, w_rel, *cfg.r);
                } else {
                    if (!cfg.p_star || !cfg.pi_star) {
                        errs << "usage: the absolute system needs both --p-star and --pi-star\n";
                        return 2;
                    }
                    sol = solve_absolute(e, *cfg.p_star, *cfg.pi_star);
                }
                const OperatorSet ops = build_operators(e);
                text << detail::solution_report(sol, exploitation_rates(ops, sol.c_star));
                break;
            }
            case Command::slice:
                text << detail::slice_csv(detail::load_input(cfg.input_path), cfg.r, cfg.w_rel,
                                          errs);
                break;
            case Command::sweep:
                text << detail::sweep_csv(detail::load_input(cfg.input_path),
                                          cfg.points.value_or(20));
                break;
            case Command::gen: {
                if (!cfg.n) {
                    errs << "usage: gen needs --n (sector count)\n";
                    return 2;
                }
                const EconomySpec e = random_economy(*cfg.n, cfg.seed.value_or(0));
                text << detail::economy_report(e);
                break;
            }
        }
        return detail::emit(cfg, text.str(), out, errs);
    } catch (const Error& ex) {
        errs << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        errs << "error: " << ex.what() << "\n";
        return 1;
    }
}

} // namespace valuedom::cli
