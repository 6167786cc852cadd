#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "valuedom/cli.hpp"

using namespace valuedom;
using valuedom::cli::Command;
using valuedom::cli::RunConfig;

namespace {

const std::string kDataFile = std::string(VALUEDOM_DATA_DIR) + "/three_sector.json";

struct RunOutcome {
    int code = 0;
    std::string out;
    std::string err;
};

RunOutcome run_cli(const RunConfig& cfg) {
    std::ostringstream out, err;
    RunOutcome r;
    r.code = valuedom::cli::run(cfg, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

RunConfig base_config(Command cmd) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.input_path = kDataFile;
    return cfg;
}

} // namespace

TEST_CASE("validate emits the full assumption report") {
    const RunOutcome r = run_cli(base_config(Command::validate));
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("hawkins_simon").get<bool>());
    CHECK(doc.at("surplus").get<bool>());
    CHECK(doc.at("reproduction").get<bool>());
    CHECK_THAT(doc.at("rho_m0").get<double>(), Catch::Matchers::WithinAbs(0.7184, 5e-5));
}

TEST_CASE("analyze reports spectra, bounds, and domain geometry") {
    const RunOutcome r = run_cli(base_config(Command::analyze));
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK_THAT(doc.at("r_technical").get<double>(), Catch::Matchers::WithinAbs(0.4477, 5e-4));
    CHECK_THAT(doc.at("r_feasible").get<double>(), Catch::Matchers::WithinAbs(0.1248, 5e-4));
    CHECK(doc.at("y_star").size() == 3);
    CHECK(doc.at("lower_bounds").size() == 3);
}

TEST_CASE("interval reports the critical shares") {
    const RunOutcome r = run_cli(base_config(Command::interval));
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK_THAT(doc.at("gamma_min").get<double>(), Catch::Matchers::WithinAbs(0.1069, 5e-4));
    CHECK_THAT(doc.at("gamma_max").get<double>(), Catch::Matchers::WithinAbs(0.1512, 5e-4));
}

TEST_CASE("transform in relative mode defaults the wage structure with a note") {
    RunConfig cfg = base_config(Command::transform);
    cfg.r = 0.1155;
    const RunOutcome r = run_cli(cfg);
    REQUIRE(r.code == 0);
    CHECK(r.err.find("uniform") != std::string::npos);

    const auto doc = nlohmann::json::parse(r.out);
    for (const char* key : {"c_star", "kappa", "gamma", "F", "S", "P", "Pi", "residual_eq1",
                            "residual_eq2", "mode", "exploitation_rates"})
        CHECK(doc.contains(key));
    CHECK(doc.at("mode").get<std::string>() == "relative");
    CHECK(doc.at("c_star").at(0).get<double>() == 1.0);
    CHECK(doc.at("residual_eq2").get<double>() <= 1e-7);
}

TEST_CASE("transform below the interval exits with a domain error") {
    RunConfig cfg = base_config(Command::transform);
    cfg.r = 0.1052;
    const RunOutcome r = run_cli(cfg);
    CHECK(r.code == 1);
    CHECK(r.err.find("OutsideCompatibilityInterval") != std::string::npos);
}

TEST_CASE("transform refuses mixed mode flags") {
    RunConfig cfg = base_config(Command::transform);
    cfg.r = 0.1155;
    cfg.p_star = 400.0;
    cfg.pi_star = 47.0;
    CHECK(run_cli(cfg).code == 2);

    RunConfig neither = base_config(Command::transform);
    CHECK(run_cli(neither).code == 2);
}

TEST_CASE("transform absolute mode emits mu") {
    RunConfig cfg = base_config(Command::transform);
    cfg.p_star = 401.5959226995597;
    cfg.pi_star = 47.03815372281059;
    const RunOutcome r = run_cli(cfg);
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("mode").get<std::string>() == "absolute");
    CHECK(doc.contains("mu"));
    CHECK(doc.at("residual_eq1").get<double>() <= 1e-8 * 401.6);
}

TEST_CASE("slice emits vertices and the equality line") {
    RunConfig cfg = base_config(Command::slice);
    cfg.r = 0.1155;
    cfg.w_rel = Vector{1.0, 1.0, 1.0};
    const RunOutcome r = run_cli(cfg);
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("vertex,", 0) == 0);
    CHECK(r.out.find("gamma,") != std::string::npos);
    CHECK(r.out.find("line,") != std::string::npos);

    // Without a rate the line rows are omitted.
    const RunOutcome bare = run_cli(base_config(Command::slice));
    REQUIRE(bare.code == 0);
    CHECK(bare.out.find("line,") == std::string::npos);
}

TEST_CASE("sweep emits the documented header and a degenerate last row") {
    const RunOutcome r = run_cli(base_config(Command::sweep));
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "r,rho_Mr,domain_degenerate");
    std::string last;
    std::size_t rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) {
            last = line;
            ++rows;
        }
    CHECK(rows == 21);
    CHECK(last.find(",true") != std::string::npos);
}

TEST_CASE("gen output round-trips through every other command") {
    RunConfig gen;
    gen.command = Command::gen;
    gen.n = 3;
    gen.seed = 11;
    const RunOutcome generated = run_cli(gen);
    REQUIRE(generated.code == 0);

    const auto tmp = std::filesystem::temp_directory_path() / "valuedom_gen_roundtrip.json";
    {
        std::ofstream f(tmp);
        f << generated.out;
    }
    for (Command cmd : {Command::validate, Command::analyze, Command::interval, Command::slice,
                        Command::sweep}) {
        RunConfig cfg;
        cfg.command = cmd;
        cfg.input_path = tmp.string();
        const RunOutcome r = run_cli(cfg);
        INFO("command index " << static_cast<int>(cmd));
        CHECK(r.code == 0);
    }

    // transform needs targets whose share sits inside the generated
    // economy's own interval; the absolute mode makes that direct.
    {
        const EconomySpec e = random_economy(3, 11);
        const CompatibilityInterval ci = critical_shares(build_operators(e), e.x);
        RunConfig cfg;
        cfg.command = Command::transform;
        cfg.input_path = tmp.string();
        cfg.p_star = 100.0;
        cfg.pi_star = 100.0 * 0.5 * (ci.gamma_min + ci.gamma_max);
        CHECK(run_cli(cfg).code == 0);
    }
    std::filesystem::remove(tmp);
}

TEST_CASE("identical requests produce byte-identical documents") {
    for (Command cmd : {Command::validate, Command::analyze, Command::interval, Command::sweep}) {
        const RunOutcome a = run_cli(base_config(cmd));
        const RunOutcome b = run_cli(base_config(cmd));
        CHECK(a.out == b.out);
    }
    RunConfig tf = base_config(Command::transform);
    tf.r = 0.1155;
    CHECK(run_cli(tf).out == run_cli(tf).out);
}

TEST_CASE("missing input file is a domain error, not a crash") {
    RunConfig cfg = base_config(Command::validate);
    cfg.input_path = "/nonexistent/economy.json";
    const RunOutcome r = run_cli(cfg);
    CHECK(r.code == 1);
    CHECK(r.err.find("cannot open") != std::string::npos);
}

TEST_CASE("output file destination is honored") {
    const auto tmp = std::filesystem::temp_directory_path() / "valuedom_out.json";
    RunConfig cfg = base_config(Command::interval);
    cfg.output_path = tmp.string();
    const RunOutcome r = run_cli(cfg);
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(tmp);
    REQUIRE(f.good());
    const auto doc = nlohmann::json::parse(f);
    CHECK(doc.contains("gamma_min"));
    std::filesystem::remove(tmp);
}

#ifdef VALUEDOM_CLI_PATH
TEST_CASE("the installed binary maps usage and domain failures to exit codes") {
    const std::string exe = VALUEDOM_CLI_PATH;
    auto status_of = [](const std::string& command) {
        const int raw = std::system(command.c_str());
        return WEXITSTATUS(raw);
    };
    CHECK(status_of(exe + " analyze " + kDataFile + " > /dev/null 2>&1") == 0);
    CHECK(status_of(exe + " transform " + kDataFile + " --r 0.1052 > /dev/null 2>&1") == 1);
    CHECK(status_of(exe + " bogus-subcommand > /dev/null 2>&1") == 2);
    CHECK(status_of(exe + " transform > /dev/null 2>&1") == 2);  // missing input
    CHECK(status_of(exe + " transform " + kDataFile +
                    " --r 0.1155 --w-rel 1,1,1 > /dev/null 2>&1") == 0);

    // The wage flag also accepts a JSON-array file.
    const auto wages = std::filesystem::temp_directory_path() / "valuedom_wages.json";
    {
        std::ofstream f(wages);
        f << "[1.0, 1.1, 0.9]\n";
    }
    CHECK(status_of(exe + " transform " + kDataFile + " --r 0.1155 --w-rel " + wages.string() +
                    " > /dev/null 2>&1") == 0);
    std::filesystem::remove(wages);
}
#endif
