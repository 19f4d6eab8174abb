// polarization.hpp
// Polarization states as Jones vectors, tagged with the basis they are
// expressed in, plus beam intensity bookkeeping.
//
// Basis convention over (H, V):
//   |L> = (1,  i) / sqrt(2)
//   |R> = (1, -i) / sqrt(2)
// A circular-basis state stores the components (l, r) such that the physical
// field is l*|L> + r*|R>.

#pragma once

#include <stdexcept>

#include "chiroptica/angles.hpp"
#include "chiroptica/jones.hpp"

namespace chiroptica {

enum class Basis { Linear, Circular };

struct PolarizationState {
    Vec2c amplitudes{};
    Basis basis = Basis::Linear;

    double norm2() const { return amplitudes.norm2(); }
    double norm() const { return amplitudes.norm(); }
};

// Beam power in milliwatts. Never negative.
struct Intensity {
    double milliwatts = 0.0;

    explicit Intensity(double mw) : milliwatts(mw) {
        if (!(mw >= 0.0)) throw std::invalid_argument("intensity must be a non-negative power in mW");
    }
};

// Unit linear polarization at the given azimuth from H.
inline PolarizationState linear_state(double azimuth_rad) {
    return {{std::cos(azimuth_rad), std::sin(azimuth_rad)}, Basis::Linear};
}

inline PolarizationState horizontal_state() { return linear_state(0.0); }
inline PolarizationState vertical_state() { return {{0.0, 1.0}, Basis::Linear}; }

// Columns are |L> and |R> expressed over (H, V); maps circular components to
// linear ones.
inline Mat2c circular_to_linear_matrix() {
    const double s = 1.0 / std::numbers::sqrt2;
    return {cplx(s, 0.0), cplx(s, 0.0), cplx(0.0, s), cplx(0.0, -s)};
}

inline Mat2c linear_to_circular_matrix() { return circular_to_linear_matrix().adjoint(); }

inline PolarizationState to_circular(const PolarizationState& state) {
    if (state.basis != Basis::Linear)
        throw std::invalid_argument("to_circular expects a linear-basis state");
    return {linear_to_circular_matrix() * state.amplitudes, Basis::Circular};
}

inline PolarizationState to_linear(const PolarizationState& state) {
    if (state.basis != Basis::Circular)
        throw std::invalid_argument("to_linear expects a circular-basis state");
    return {circular_to_linear_matrix() * state.amplitudes, Basis::Linear};
}

// Convert to the requested basis; identity when already there.
inline PolarizationState in_basis(const PolarizationState& state, Basis target) {
    if (state.basis == target) return state;
    return target == Basis::Linear ? to_linear(state) : to_circular(state);
}

// <a|b>, converting b into a's basis first. Both conversions are unitary so
// the value does not depend on which common basis is used.
inline cplx overlap(const PolarizationState& a, const PolarizationState& b) {
    return dot(a.amplitudes, in_basis(b, a.basis).amplitudes);
}

inline PolarizationState normalized(const PolarizationState& state) {
    const double n = state.norm();
    if (n <= 0.0) throw std::invalid_argument("cannot normalize a zero polarization state");
    return {cplx(1.0 / n, 0.0) * state.amplitudes, state.basis};
}

// Power carried by a state relative to a source beam; |amplitudes|^2 acts as
// the transmission fraction.
inline Intensity intensity_of(const PolarizationState& state, Intensity source) {
    return Intensity(source.milliwatts * state.norm2());
}

} // namespace chiroptica
