// elements.hpp
// Optical elements as Jones matrices and the scalar rotation laws for chiral
// media. Element matrices are always stored in the linear (H, V) basis;
// propagate() converts states as needed and hands back the input basis.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

#include "chiroptica/angles.hpp"
#include "chiroptica/jones.hpp"
#include "chiroptica/polarization.hpp"

namespace chiroptica {

enum class ElementKind { Rotator, CircularRetarder, Analyzer, General };

struct OpticalElement {
    Mat2c matrix = Mat2c::identity();
    ElementKind kind = ElementKind::General;
};

// [[cos, -sin], [sin, cos]]: rotates the polarization plane by theta.
inline Mat2c rotation_matrix(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {cplx(c, 0.0), cplx(-s, 0.0), cplx(s, 0.0), cplx(c, 0.0)};
}

inline OpticalElement rotator(double theta) {
    return {rotation_matrix(theta), ElementKind::Rotator};
}

// Delays |L> by phi_left and |R> by phi_right. In the linear basis this is a
// rotation by (phi_left - phi_right)/2 times the global phase
// exp(i (phi_left + phi_right)/2).
inline OpticalElement circular_retarder(double phi_left, double phi_right) {
    const double mean = 0.5 * (phi_left + phi_right);
    const double half_difference = 0.5 * (phi_left - phi_right);
    return {std::polar(1.0, mean) * rotation_matrix(half_difference),
            ElementKind::CircularRetarder};
}

// Ideal linear analyzer: projector onto the axis at angle alpha from H.
inline OpticalElement analyzer(double alpha) {
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    return {{cplx(c * c, 0.0), cplx(s * c, 0.0), cplx(s * c, 0.0), cplx(s * s, 0.0)},
            ElementKind::Analyzer};
}

// The element's matrix re-expressed over the circular (L, R) components.
inline Mat2c matrix_in_circular(const OpticalElement& element) {
    return linear_to_circular_matrix() * element.matrix * circular_to_linear_matrix();
}

// Applies elements in traversal order: the first element of the span acts
// first. Output keeps the basis tag of the input.
inline PolarizationState propagate(std::span<const OpticalElement> elements,
                                   const PolarizationState& input) {
    const Basis original = input.basis;
    Vec2c field = in_basis(input, Basis::Linear).amplitudes;
    for (const OpticalElement& element : elements) field = element.matrix * field;
    return in_basis(PolarizationState{field, Basis::Linear}, original);
}

// H sent through a rotator by theta, written over (L, R): the circular
// components pick up conjugate phases exp(-i theta) and exp(+i theta).
inline PolarizationState rotated_h_state(double theta) {
    const double s = 1.0 / std::numbers::sqrt2;
    return {{std::polar(s, -theta), std::polar(s, theta)}, Basis::Circular};
}

// n identical rotators by theta collapse to one rotator by n*theta.
inline OpticalElement cascade_rotation(int count, double theta) {
    if (count < 1) throw std::invalid_argument("cascade_rotation needs at least one stage");
    return {rotation_matrix(static_cast<double>(count) * theta), ElementKind::Rotator};
}

enum class Handedness { Levo, Dextro };

// One chiral specimen in the polarimeter tube. Concentration is in g/mL,
// path length in dm, wavelength in metres; specific_rotation uses the
// customary deg dm^-1 (g/mL)^-1 unit.
struct ChiralSample {
    double specific_rotation = 0.0;
    double concentration = 0.0;
    double path_length_dm = 1.0;
    double wavelength_m = 589e-9;
    Handedness handedness = Handedness::Dextro;
    std::optional<double> refractive_index_difference{};
};

// Circular birefringence form: theta = pi * (n_L - n_R) * l / lambda, in
// radians. Path length converts from dm to metres.
inline double rotation_from_indices(const ChiralSample& sample) {
    if (!sample.refractive_index_difference)
        throw std::invalid_argument("sample carries no refractive index difference");
    if (sample.wavelength_m <= 0.0) throw std::invalid_argument("wavelength must be positive");
    if (sample.path_length_dm <= 0.0) throw std::invalid_argument("path length must be positive");
    const double length_m = sample.path_length_dm * 0.1;
    return pi * (*sample.refractive_index_difference) * length_m / sample.wavelength_m;
}

// Concentration law: theta = S * l * c, in degrees. The handedness tag, not
// the sign of specific_rotation, fixes the sense: dextro positive, levo
// negative.
inline double rotation_biot(const ChiralSample& sample) {
    if (sample.concentration < 0.0) throw std::invalid_argument("concentration must be non-negative");
    if (sample.path_length_dm <= 0.0) throw std::invalid_argument("path length must be positive");
    const double magnitude =
        std::abs(sample.specific_rotation) * sample.path_length_dm * sample.concentration;
    return sample.handedness == Handedness::Dextro ? magnitude : -magnitude;
}

// Molecular angular momenta of the two circular responses, with the geometry
// factors of the tube.
struct AngularMomentumPair {
    double left = 0.0;
    double right = 0.0;
    double coupling = 1.0;
    double volume = 1.0;
    double tube_radius = 1.0;
};

// theta = f * c * V^2 / r * (1/L_left - 1/L_right), in radians. Equal
// momenta give zero rotation.
inline double rotation_from_angular_momentum(const AngularMomentumPair& pair,
                                             double concentration) {
    if (pair.left == 0.0 || pair.right == 0.0)
        throw std::domain_error("angular momenta must be nonzero");
    if (pair.tube_radius <= 0.0) throw std::invalid_argument("tube radius must be positive");
    return pair.coupling * concentration * pair.volume * pair.volume / pair.tube_radius *
           (1.0 / pair.left - 1.0 / pair.right);
}

// Malus passage through the analyzer at net angle theta_net (radians).
inline Intensity transmitted_intensity(Intensity source, double theta_net) {
    const double c = std::cos(theta_net);
    return Intensity(source.milliwatts * c * c);
}

// Complement of the Malus passage; together with transmitted_intensity this
// accounts for the whole source power.
inline Intensity absorbed_intensity(Intensity source, double theta_net) {
    const double s = std::sin(theta_net);
    return Intensity(source.milliwatts * s * s);
}

// Net rotation per unit path, deg/dm.
inline double rotatory_power(double theta_net_deg, double thickness_dm) {
    if (thickness_dm <= 0.0) throw std::invalid_argument("thickness must be positive");
    return theta_net_deg / thickness_dm;
}

} // namespace chiroptica
