#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "chiroptica/polarization.hpp"

using namespace chiroptica;

namespace {

// Fixed-seed generator for property checks; keeps every run identical.
struct StateGen {
    std::mt19937_64 rng{0x5eed01};
    std::uniform_real_distribution<double> unit{-1.0, 1.0};

    cplx amplitude() { return {unit(rng), unit(rng)}; }

    PolarizationState state(Basis basis) {
        PolarizationState s{{amplitude(), amplitude()}, basis};
        while (s.norm() < 1e-3) s = {{amplitude(), amplitude()}, basis};
        return normalized(s);
    }

    double angle() { return unit(rng) * pi; }
};

} // namespace

TEST_CASE("linear states are unit vectors at the requested azimuth") {
    const PolarizationState h = horizontal_state();
    CHECK(h.amplitudes.x == cplx(1.0, 0.0));
    CHECK(h.amplitudes.y == cplx(0.0, 0.0));
    const PolarizationState v = vertical_state();
    CHECK(v.amplitudes.x == cplx(0.0, 0.0));
    CHECK(v.amplitudes.y == cplx(1.0, 0.0));

    StateGen gen;
    for (int i = 0; i < 50; ++i) {
        const double a = gen.angle();
        const PolarizationState s = linear_state(a);
        CHECK_THAT(s.norm(), Catch::Matchers::WithinAbs(1.0, 1e-15));
        CHECK_THAT(s.amplitudes.x.real(), Catch::Matchers::WithinAbs(std::cos(a), 1e-15));
        CHECK_THAT(s.amplitudes.y.real(), Catch::Matchers::WithinAbs(std::sin(a), 1e-15));
    }
}

TEST_CASE("overlap of two linear states is the cosine of the angle between them") {
    StateGen gen;
    for (int i = 0; i < 200; ++i) {
        const double a = gen.angle();
        const double b = gen.angle();
        const cplx ov = overlap(linear_state(a), linear_state(b));
        CHECK_THAT(ov.real(), Catch::Matchers::WithinAbs(std::cos(a - b), 1e-14));
        CHECK_THAT(ov.imag(), Catch::Matchers::WithinAbs(0.0, 1e-15));
    }
}

TEST_CASE("basis change matrices are unitary and mutually inverse") {
    const Mat2c c2l = circular_to_linear_matrix();
    const Mat2c l2c = linear_to_circular_matrix();
    CHECK(is_unitary(c2l, 1e-15));
    CHECK(is_unitary(l2c, 1e-15));
    CHECK(max_abs_diff(c2l * l2c, Mat2c::identity()) < 1e-15);
    CHECK(max_abs_diff(l2c * c2l, Mat2c::identity()) < 1e-15);

    // columns of the circular-to-linear map are the circular unit states
    const double s = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(c2l.a - cplx(s, 0.0)) < 1e-15);
    CHECK(std::abs(c2l.c - cplx(0.0, s)) < 1e-15);  // |L> = (1, i)/sqrt(2)
    CHECK(std::abs(c2l.b - cplx(s, 0.0)) < 1e-15);
    CHECK(std::abs(c2l.d - cplx(0.0, -s)) < 1e-15); // |R> = (1, -i)/sqrt(2)
}

TEST_CASE("H splits evenly into the two circular components") {
    const PolarizationState h = to_circular(horizontal_state());
    REQUIRE(h.basis == Basis::Circular);
    const double s = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(h.amplitudes.x - cplx(s, 0.0)) < 1e-15);
    CHECK(std::abs(h.amplitudes.y - cplx(s, 0.0)) < 1e-15);

    const PolarizationState v = to_circular(vertical_state());
    CHECK(std::abs(v.amplitudes.x - cplx(0.0, -s)) < 1e-15);
    CHECK(std::abs(v.amplitudes.y - cplx(0.0, s)) < 1e-15);
}

TEST_CASE("basis conversions round-trip and preserve norm") {
    StateGen gen;
    for (int i = 0; i < 100; ++i) {
        const PolarizationState s = gen.state(Basis::Linear);
        const PolarizationState back = to_linear(to_circular(s));
        CHECK(max_abs_diff(back.amplitudes, s.amplitudes) < 1e-15);
        CHECK_THAT(to_circular(s).norm(), Catch::Matchers::WithinAbs(s.norm(), 1e-14));
    }
}

TEST_CASE("conversion guards reject states already in the target basis") {
    CHECK_THROWS_AS(to_circular(to_circular(horizontal_state())), std::invalid_argument);
    CHECK_THROWS_AS(to_linear(horizontal_state()), std::invalid_argument);
    const PolarizationState same = in_basis(horizontal_state(), Basis::Linear);
    CHECK(same.basis == Basis::Linear);
    CHECK(max_abs_diff(same.amplitudes, horizontal_state().amplitudes) == 0.0);
}

TEST_CASE("overlap does not depend on which basis the arguments arrive in") {
    StateGen gen;
    for (int i = 0; i < 100; ++i) {
        const PolarizationState a = gen.state(Basis::Linear);
        const PolarizationState b = gen.state(Basis::Linear);
        const cplx direct = overlap(a, b);
        const cplx mixed = overlap(to_circular(a), b);
        const cplx circular = overlap(to_circular(a), to_circular(b));
        CHECK(std::abs(direct - mixed) < 1e-14);
        CHECK(std::abs(direct - circular) < 1e-14);
    }
}

TEST_CASE("normalized rejects the zero state and fixes the norm otherwise") {
    CHECK_THROWS_AS(normalized(PolarizationState{{0.0, 0.0}, Basis::Linear}),
                    std::invalid_argument);
    const PolarizationState s = normalized(PolarizationState{{cplx(3.0, 4.0), 0.0}, Basis::Linear});
    CHECK_THAT(s.norm(), Catch::Matchers::WithinAbs(1.0, 1e-15));
}

TEST_CASE("intensity carries non-negative power and scales with the squared norm") {
    CHECK_THROWS_AS(Intensity(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(Intensity(std::nan("")), std::invalid_argument);
    const Intensity source(0.55);
    const PolarizationState half{{cplx(0.5, 0.0), cplx(0.5, 0.0)}, Basis::Linear};
    CHECK_THAT(intensity_of(half, source).milliwatts,
               Catch::Matchers::WithinAbs(0.55 * 0.5, 1e-15));
    CHECK_THAT(intensity_of(horizontal_state(), source).milliwatts,
               Catch::Matchers::WithinAbs(0.55, 1e-15));
}
