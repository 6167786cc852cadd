#include <catch2/catch_amalgamated.hpp>

#include "valuedom/spectral.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace valuedom;

namespace {

double eigen_residual(const SpectralResult& s, const Matrix& m) {
    const Vector ytm = premultiply(s.left_vector, m);
    double r = 0.0;
    for (std::size_t j = 0; j < ytm.size(); ++j)
        r = std::max(r, std::abs(ytm[j] - s.radius * s.left_vector[j]));
    return r;
}

} // namespace

TEST_CASE("spectral_radius on a 1x1 matrix") {
    const SpectralResult s = spectral_radius(Matrix{{0.5}});
    CHECK(s.radius == 0.5);
    CHECK(s.left_vector == Vector{1.0});
    CHECK(s.converged);
}

TEST_CASE("spectral_radius of the three-sector composite input matrix") {
    const Matrix a_tilde = composite_inputs(fixtures::three_sector()).second;
    const SpectralResult s = spectral_radius(a_tilde);
    CHECK_THAT(s.radius, Catch::Matchers::WithinAbs(0.5519, 5e-5));
    CHECK(s.converged);
    CHECK(eigen_residual(s, a_tilde) <= 1e-10 * std::max(1.0, s.radius * max_abs(s.left_vector)));
}

TEST_CASE("spectral_radius agrees with the dense QR oracle on random matrices") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t n = 2 + seed % 5;
        const Matrix m = oracles::random_irreducible_matrix(n, seed);
        const SpectralResult s = spectral_radius(m);
        const double reference = oracles::dominant_eigenvalue(m);
        INFO("seed " << seed);
        CHECK_THAT(s.radius, Catch::Matchers::WithinRel(reference, 1e-9));
        CHECK(eigen_residual(s, m) <=
              1e-10 * std::max(1.0, s.radius * max_abs(s.left_vector)));
    }
}

TEST_CASE("spectral_radius rejects malformed input") {
    CHECK_THROWS_AS(spectral_radius(Matrix(2, 3)), Error);
    Matrix negative{{0.1, -0.2}, {0.3, 0.4}};
    CHECK_THROWS_AS(spectral_radius(negative), Error);
    try {
        spectral_radius(negative);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::negative_entry);
    }
}

TEST_CASE("spectral_radius handles periodic and reducible matrices") {
    // A bare 2-cycle is periodic; the internal shift still recovers rho = 1.
    const SpectralResult cyc = spectral_radius(Matrix{{0.0, 1.0}, {1.0, 0.0}});
    CHECK_THAT(cyc.radius, Catch::Matchers::WithinAbs(1.0, 1e-10));

    const SpectralResult blocks = spectral_radius(Matrix{{0.5, 0.0}, {0.0, 0.2}});
    CHECK_THAT(blocks.radius, Catch::Matchers::WithinAbs(0.5, 1e-10));

    const SpectralResult zero = spectral_radius(Matrix(3, 3));
    CHECK(zero.radius == 0.0);
}

TEST_CASE("positivity propagates to both Perron vectors") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Matrix m = oracles::random_positive_matrix(3 + seed % 4, seed);
        const SpectralResult s = spectral_radius(m);
        CHECK(min_element(s.left_vector) > 0.0);
        CHECK(min_element(s.right_vector) > 0.0);
    }
}

TEST_CASE("perron_left requires strict positivity and normalizes y1 = 1") {
    CHECK(perron_left(Matrix{{3.7}}) == Vector{1.0});

    const Vector y = perron_left(Matrix{{2.0, 1.0}, {1.0, 2.0}});
    CHECK(y[0] == 1.0);
    CHECK_THAT(y[1], Catch::Matchers::WithinAbs(1.0, 1e-10));  // symmetric pair

    CHECK_THROWS_AS(perron_left(Matrix{{1.0, 0.0}, {1.0, 1.0}}), Error);
}

TEST_CASE("perron_left matches the QR oracle's left eigenvector") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        const Matrix m = oracles::random_positive_matrix(4, seed);
        const Vector mine = perron_left(m);
        const Vector reference = oracles::left_perron(m);
        for (std::size_t i = 0; i < mine.size(); ++i)
            CHECK_THAT(mine[i], Catch::Matchers::WithinRel(reference[i], 1e-8));
    }
}

TEST_CASE("is_irreducible classifies small graphs") {
    CHECK(is_irreducible(Matrix{{0.0, 1.0}, {1.0, 0.0}}));
    CHECK_FALSE(is_irreducible(Matrix{{1.0, 1.0}, {0.0, 1.0}}));
    CHECK(is_irreducible(composite_inputs(fixtures::three_sector()).second));
    // Disconnected blocks.
    CHECK_FALSE(is_irreducible(Matrix{{0.5, 0.0}, {0.0, 0.5}}));
}

TEST_CASE("inverse_of_i_minus basics") {
    const Matrix zero(3, 3);
    CHECK((inverse_of_i_minus(zero) - Matrix::identity(3)).max_abs() == 0.0);

    const Matrix geometric = inverse_of_i_minus(Matrix{{0.5}});
    CHECK_THAT(geometric(0, 0), Catch::Matchers::WithinRel(2.0, 1e-14));
}

TEST_CASE("inverse_of_i_minus matches the truncated Neumann sum") {
    const Matrix a_tilde = composite_inputs(fixtures::three_sector()).second;
    const Matrix inv = inverse_of_i_minus(a_tilde);
    const Matrix series = oracles::neumann_inverse(a_tilde, 60);
    CHECK((inv - series).max_abs() <= 1e-10);

    // Strict positivity for irreducible nonnegative input.
    CHECK(inv.min_entry() > 0.0);

    // Residual contract.
    const Matrix residual = (Matrix::identity(3) - a_tilde) * inv - Matrix::identity(3);
    CHECK(residual.max_abs() <= 1e-10);
}

TEST_CASE("inverse_of_i_minus matches the Neumann oracle across random spectra") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t n = 2 + seed % 5;
        Matrix m = oracles::random_irreducible_matrix(n, seed);
        const double rho_raw = spectral_radius(m).radius;
        const double rho = 0.2 + 0.7 * static_cast<double>(seed % 8) / 8.0;  // up to 0.9
        m *= rho / rho_raw;
        // The series tail is of order rho^terms / (1 - rho), so the term
        // count must grow with rho for the oracle itself to reach 1e-10.
        const int terms = std::max(
            60, static_cast<int>(std::ceil(std::log(1e-10 * (1.0 - rho)) / std::log(rho))));
        const Matrix inv = inverse_of_i_minus(m);
        const Matrix series = oracles::neumann_inverse(m, terms);
        INFO("seed " << seed << " rho " << rho << " terms " << terms);
        CHECK((inv - series).max_abs() <= 1e-8);
    }
}

TEST_CASE("inverse_of_i_minus refuses non-productive matrices") {
    CHECK_THROWS_AS(inverse_of_i_minus(Matrix{{1.0}}), Error);
    Matrix hot{{0.9, 0.9}, {0.9, 0.9}};
    try {
        inverse_of_i_minus(hot);
        FAIL("expected SpectralRadiusTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::spectral_radius_too_large);
    }
}
