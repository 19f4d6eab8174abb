// geometric_phase.hpp
// Pancharatnam relative phase between polarization states and the discrete
// Berry holonomy of spin-1/2 style loops, plus the chiral phase pair picked
// up by the circular components across an optically active medium.

#pragma once

#include <stdexcept>
#include <vector>

#include "chiroptica/angles.hpp"
#include "chiroptica/jones.hpp"
#include "chiroptica/polarization.hpp"

namespace chiroptica {

// Point on the parameter sphere: polar in [0, pi], azimuth reduced to
// [0, 2*pi), frame is the extra reference-frame angle.
struct SpinorParams {
    double polar;
    double azimuth;
    double frame;

    SpinorParams(double polar_angle, double azimuth_angle, double frame_angle = 0.0)
        : polar(polar_angle), azimuth(wrap_two_pi(azimuth_angle)), frame(frame_angle) {
        if (!(polar_angle >= 0.0 && polar_angle <= pi))
            throw std::invalid_argument("polar angle must lie in [0, pi]");
    }
};

// Half-angle spinor for the parameter point. Double-valued in azimuth: a
// 2*pi turn flips the sign, which is what feeds the holonomy below.
inline Vec2c spinor_state(const SpinorParams& p) {
    const cplx up = std::polar(std::cos(0.5 * p.polar), 0.5 * (p.azimuth - p.frame));
    const cplx down = std::polar(std::sin(0.5 * p.polar), -0.5 * (p.azimuth + p.frame));
    return {up, down};
}

// Closed sampled loop on the parameter sphere. The last sample must repeat
// the first one.
struct LoopPath {
    std::vector<SpinorParams> samples;

    // Circle of constant polar angle, azimuth swept through a full turn in
    // equal segments, closed by repeating the first sample.
    static LoopPath constant_polar_circle(double polar, int segments, double frame = 0.0) {
        if (segments < 2) throw std::invalid_argument("a loop needs at least 2 segments");
        LoopPath loop;
        loop.samples.reserve(static_cast<std::size_t>(segments) + 1);
        for (int k = 0; k < segments; ++k)
            loop.samples.emplace_back(polar, two_pi * k / segments, frame);
        loop.samples.push_back(loop.samples.front());
        return loop;
    }
};

// Discrete holonomy of the loop: minus the accumulated argument of the chain
// of successive overlaps. Gauge invariant because every intermediate state
// enters once as bra and once as ket. Returned in [0, 2*pi); the half-angle
// sign flip over one azimuth turn lands here as a pi offset.
inline double berry_phase(const LoopPath& loop) {
    if (loop.samples.size() < 3)
        throw std::invalid_argument("berry_phase needs at least 3 samples");
    const SpinorParams& first = loop.samples.front();
    const SpinorParams& last = loop.samples.back();
    const bool closed = std::abs(first.polar - last.polar) <= 1e-9 &&
                        circular_distance(first.azimuth, last.azimuth) <= 1e-9 &&
                        std::abs(first.frame - last.frame) <= 1e-9;
    if (!closed) throw std::invalid_argument("loop is not closed: last sample must repeat the first");

    cplx product(1.0, 0.0);
    Vec2c bra = spinor_state(loop.samples[0]);
    for (std::size_t k = 1; k < loop.samples.size(); ++k) {
        const Vec2c ket = spinor_state(loop.samples[k]);
        const cplx step = dot(bra, ket);
        const double magnitude = std::abs(step);
        if (magnitude < 1e-12)
            throw std::domain_error("consecutive loop samples are orthogonal; refine the loop");
        product *= step / magnitude;
        bra = ket;
    }
    return wrap_two_pi(-std::arg(product));
}

// Geometric phases of the two circular components through a medium that
// rotates the plane by theta_net. They always recombine to a full turn.
struct ChiralPhasePair {
    double gamma_left;
    double gamma_right;
};

inline ChiralPhasePair chiral_phases(double theta_net) {
    const double gamma_left = pi * (1.0 - std::cos(theta_net));
    return {gamma_left, two_pi - gamma_left};
}

// (gamma_right - gamma_left) / (2*pi); recovers cos(theta_net).
inline double recombination_check(const ChiralPhasePair& pair) {
    return (pair.gamma_right - pair.gamma_left) / two_pi;
}

// Relative phase and magnitude of <a|b>. Undefined for orthogonal states.
struct PancharatnamOverlap {
    double magnitude;
    double phase; // in (-pi, pi]
};

inline PancharatnamOverlap pancharatnam_phase(const PolarizationState& a,
                                              const PolarizationState& b) {
    const cplx ov = overlap(a, b);
    const double magnitude = std::abs(ov);
    if (magnitude < 1e-12)
        throw std::domain_error("Pancharatnam phase is undefined for orthogonal states");
    return {magnitude, wrap_pi(std::arg(ov))};
}

} // namespace chiroptica
