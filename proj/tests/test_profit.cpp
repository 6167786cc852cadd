#include <catch2/catch_amalgamated.hpp>

#include "valuedom/profit.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace valuedom;

TEST_CASE("profit bounds of the bundled economy match the published values") {
    const ProfitBounds b = profit_bounds(fixtures::three_sector());
    CHECK_THAT(b.r_technical, Catch::Matchers::WithinAbs(0.4477, 5e-4));
    CHECK_THAT(b.r_feasible, Catch::Matchers::WithinAbs(0.1248, 5e-4));
    CHECK_THAT(b.gap(), Catch::Matchers::WithinAbs(0.3229, 1e-3));
    CHECK(b.r_feasible > 0.0);
    CHECK(b.r_feasible < b.r_technical);
}

TEST_CASE("technical rate of a pure-stock economy is one") {
    EconomySpec e;
    e.names = {"a", "b"};
    e.a = Matrix(2, 2);
    e.k = Matrix::identity(2);
    e.delta = {1e-12, 1e-12};  // keep A~ = A + K diag(delta) essentially zero
    e.labor = {1.0, 1.0};
    e.b = Matrix{{0.1, 0.1}, {0.1, 0.1}};
    e.x = {1.0, 1.0};
    // rho(A~ + r I) = r + O(1e-12), so the ceiling sits at 1.
    CHECK_THAT(max_technical_rate(e), Catch::Matchers::WithinAbs(1.0, 1e-6));
}

TEST_CASE("both critical rates satisfy their unit-radius definitions") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const EconomySpec e = random_economy(2 + seed % 5, seed);
        const double r_technical = max_technical_rate(e);
        const Matrix a_tilde = composite_inputs(e).second;
        Matrix at_ceiling = a_tilde + e.k * r_technical;
        INFO("seed " << seed);
        CHECK_THAT(spectral_radius(at_ceiling).radius, Catch::Matchers::WithinAbs(1.0, 1e-9));

        const double r_star = max_feasible_rate(e);
        CHECK_THAT(spectral_radius(parametric_reproduction(e, r_star)).radius,
                   Catch::Matchers::WithinAbs(1.0, 1e-9));
        CHECK(r_star < r_technical);
    }
}

TEST_CASE("rate searches are bit-deterministic") {
    const EconomySpec e = fixtures::three_sector();
    CHECK(max_technical_rate(e) == max_technical_rate(e));
    CHECK(max_feasible_rate(e) == max_feasible_rate(e));
}

TEST_CASE("zero capital stock has no technical ceiling") {
    EconomySpec e = fixtures::three_sector();
    e.k = Matrix(3, 3);
    try {
        max_technical_rate(e);
        FAIL("expected ZeroCapitalStock");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::zero_capital_stock);
    }
}

TEST_CASE("feasible rate requires a surplus") {
    const EconomySpec e = fixtures::boundary_rescaled(fixtures::three_sector());
    try {
        max_feasible_rate(e);
        FAIL("expected SurplusAbsent");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::surplus_absent);
    }
}

TEST_CASE("a vanishing consumption basket closes the gap to the technical rate") {
    double previous_gap = 1e9;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        EconomySpec e = fixtures::three_sector();
        e.b *= eps;
        const ProfitBounds b = profit_bounds(e);
        INFO("eps " << eps);
        CHECK(b.r_feasible < b.r_technical);
        CHECK(b.gap() < previous_gap);
        previous_gap = b.gap();
    }
}

TEST_CASE("wage domain at rate zero coincides with the value domain") {
    const EconomySpec e = fixtures::three_sector();
    const PriceWageDomain wd = price_wage_domain(e, 0.0);
    const ValueFeasibleDomain vd = build_value_domain(build_operators(e));
    CHECK((wd.halfspace_matrix - vd.halfspace_matrix).max_abs() == 0.0);
    CHECK_FALSE(wd.degenerate);
}

TEST_CASE("wage domain degenerates exactly at the feasible ceiling") {
    const EconomySpec e = fixtures::three_sector();
    const double r_star = max_feasible_rate(e);
    const PriceWageDomain d = price_wage_domain(e, r_star);
    CHECK(d.degenerate);
    // The Perron point is the sole member: its slacks vanish.
    const MembershipResult m = contains(d, d.w_star);
    CHECK(m.member);
    CHECK(max_abs(m.slacks) <= 1e-9);
}

TEST_CASE("wage domain at half the ceiling holds its Perron point strictly") {
    const EconomySpec e = fixtures::three_sector();
    const double r_star = max_feasible_rate(e);
    const PriceWageDomain d = price_wage_domain(e, 0.5 * r_star);
    CHECK_FALSE(d.degenerate);
    CHECK(contains(d, d.w_star).strict);
}

TEST_CASE("wage domain rejects rates beyond the feasible ceiling") {
    const EconomySpec e = fixtures::three_sector();
    try {
        price_wage_domain(e, 0.2);
        FAIL("expected RateBeyondFeasibleMax");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::rate_beyond_feasible_max);
    }
}

TEST_CASE("duality probe on the bundled economy") {
    const DualityReport rep = duality_probe(fixtures::three_sector(), 0.0, 0.06, 500, 17);
    CHECK(rep.samples == 500);
    CHECK(rep.included == 500);
    CHECK(rep.inclusion_holds);
    CHECK(rep.witness_excluded);
    CHECK(rep.witness_slack_at_r2 < -kMembershipTol);
}

TEST_CASE("duality probe flags a bad rate order") {
    try {
        duality_probe(fixtures::three_sector(), 0.05, 0.05, 10);
        FAIL("expected BadRateOrder");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::bad_rate_order);
    }
}

TEST_CASE("the degenerate ceiling domain maps into the zero-rate domain") {
    const EconomySpec e = random_economy(4, 99);
    const double r_star = max_feasible_rate(e);
    const PriceWageDomain d2 = price_wage_domain(e, r_star);
    const PriceWageDomain d1 = price_wage_domain(e, 0.0);
    for (const Vector& w : sample_members(d2, 20, 5)) {
        for (std::size_t j = 0; j < w.size(); ++j) CHECK(w[j] == d2.w_star[j]);
        CHECK(contains(d1, w).member);
    }
}

TEST_CASE("wage domains nest monotonically along a rate grid") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const EconomySpec e = random_economy(2 + seed % 4, 200 + seed);
        const double r_star = max_feasible_rate(e);
        std::vector<PriceWageDomain> grid;
        for (int i = 0; i <= 4; ++i)
            grid.push_back(price_wage_domain(e, r_star * static_cast<double>(i) / 4.0));
        for (std::size_t level = 1; level < grid.size(); ++level) {
            for (const Vector& w : sample_members(grid[level], 25, seed * 10 + level)) {
                INFO("seed " << seed << " level " << level);
                CHECK(contains(grid[level - 1], w).member);
            }
        }
    }
}
