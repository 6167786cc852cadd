#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "valuedom/cli.hpp"

namespace {

using valuedom::Vector;
using valuedom::cli::Command;
using valuedom::cli::RunConfig;

/// --w-rel accepts a comma-separated list ("1,1.5,0.8") or a path to a JSON
/// file containing an array of numbers.
Vector parse_wage_flag(const std::string& text) {
    if (text.find(',') != std::string::npos) {
        Vector w;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                w.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--w-rel", "not a number: " + item);
            }
        }
        return w;
    }
    std::ifstream f(text);
    if (!f) throw CLI::ValidationError("--w-rel", "neither a comma list nor a readable file");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& ex) {
        throw CLI::ValidationError("--w-rel", ex.what());
    }
    if (!doc.is_array()) throw CLI::ValidationError("--w-rel", "file must hold a JSON array");
    Vector w;
    for (const auto& v : doc) {
        if (!v.is_number()) throw CLI::ValidationError("--w-rel", "array must be numeric");
        w.push_back(v.get<double>());
    }
    return w;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Input-output toolkit for labor-reproduction operators, value-feasible "
                 "reduction domains, critical profit rates, and macro-equality solutions"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string w_rel_text;
    double r = 0.0, p_star = 0.0, pi_star = 0.0;
    std::uint64_t seed = 0;
    std::size_t n = 0, points = 0;
    std::string output;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input_path, "economy JSON document")->required();
        sub->add_option("-o,--output", output, "write the report here instead of stdout");
    };

    CLI::App* validate = app.add_subcommand("validate", "check the model assumptions");
    add_input(validate);

    CLI::App* analyze =
        app.add_subcommand("analyze", "eigenvalues, profit-rate bounds, and domain geometry");
    add_input(analyze);

    CLI::App* interval = app.add_subcommand("interval", "critical profit-share interval");
    add_input(interval);

    CLI::App* transform =
        app.add_subcommand("transform", "solve the two macro equalities for a reduction vector");
    add_input(transform);
    transform->add_option("-r,--r", r, "profit rate (relative system)");
    transform->add_option("-w,--w-rel", w_rel_text,
                          "relative wages, comma-separated or a JSON-array file");
    transform->add_option("--p-star", p_star, "target total price (absolute system)");
    transform->add_option("--pi-star", pi_star, "target total profit (absolute system)");

    CLI::App* slice = app.add_subcommand("slice", "2-D slice of the feasible domain (3 sectors)");
    add_input(slice);
    slice->add_option("-r,--r", r, "profit rate for the equality-line coefficients");
    slice->add_option("-w,--w-rel", w_rel_text,
                      "relative wages, comma-separated or a JSON-array file");

    CLI::App* sweep = app.add_subcommand("sweep", "rho(M(r)) over a grid up to r*");
    add_input(sweep);
    sweep->add_option("--points", points, "grid intervals (default 20)");

    CLI::App* gen = app.add_subcommand("gen", "generate a random surplus economy");
    gen->add_option("--n", n, "sector count")->required();
    gen->add_option("--seed", seed, "RNG seed (default 0)");
    gen->add_option("-o,--output", output, "write the economy here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (validate->parsed()) cfg.command = Command::validate;
    if (analyze->parsed()) cfg.command = Command::analyze;
    if (interval->parsed()) cfg.command = Command::interval;
    if (transform->parsed()) cfg.command = Command::transform;
    if (slice->parsed()) cfg.command = Command::slice;
    if (sweep->parsed()) cfg.command = Command::sweep;
    if (gen->parsed()) cfg.command = Command::gen;

    if (!output.empty()) cfg.output_path = output;
    if (transform->count("--r") || slice->count("--r")) cfg.r = r;
    if (transform->count("--p-star")) cfg.p_star = p_star;
    if (transform->count("--pi-star")) cfg.pi_star = pi_star;
    if (gen->count("--seed")) cfg.seed = seed;
    if (gen->count("--n")) cfg.n = n;
    if (sweep->count("--points")) cfg.points = points;
    if (!w_rel_text.empty()) {
        try {
            cfg.w_rel = parse_wage_flag(w_rel_text);
        } catch (const CLI::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    return valuedom::cli::run(cfg, std::cout, std::cerr);
}
