// entanglement.hpp
// Two-qubit description of a molecule spin paired with a photon circular
// polarization. Product basis ordering is (up R, up L, down R, down L):
// molecule factor first, photon second, index = 2*m + p with m in {0: up,
// 1: down} and p in {0: R, 1: L}.

#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include "chiroptica/angles.hpp"
#include "chiroptica/jones.hpp"

namespace chiroptica {

enum class SpinLabel { Up, Down };

// Amplitude the spin component keeps after the circular returns interfere
// across a medium with net rotation theta_net: up keeps cos(theta), down
// picks up -i*sin(theta). The two weights always square-sum to one.
inline cplx qubit_rotation_map(double theta_net, SpinLabel spin) {
    const cplx plus = std::polar(1.0, theta_net);
    const cplx minus = std::polar(1.0, -theta_net);
    return spin == SpinLabel::Up ? 0.5 * (plus + minus) : 0.5 * (minus - plus);
}

struct TwoQubitState {
    std::array<cplx, 4> amplitudes{};

    double norm2() const {
        double sum = 0.0;
        for (const cplx& a : amplitudes) sum += std::norm(a);
        return sum;
    }
    double norm() const { return std::sqrt(norm2()); }
};

// Tensor product of a molecule spinor (up, down) with a photon circular
// state (r, l).
inline TwoQubitState tensor_product(const Vec2c& molecule, const Vec2c& photon) {
    return {{molecule.x * photon.x, molecule.x * photon.y,
             molecule.y * photon.x, molecule.y * photon.y}};
}

// Maximally entangled spin/polarization pair after traversing a medium with
// net rotation theta_net: (e^{2i theta} |up R> + e^{-2i theta} |down L>) / sqrt(2).
inline TwoQubitState singlet_state(double theta_net) {
    const double s = 1.0 / std::numbers::sqrt2;
    return {{std::polar(s, 2.0 * theta_net), cplx(0.0, 0.0), cplx(0.0, 0.0),
             std::polar(s, -2.0 * theta_net)}};
}

// 4x4 density operator, row-major.
struct DensityMatrix {
    std::array<cplx, 16> entries{};

    cplx& at(int row, int col) { return entries[static_cast<std::size_t>(4 * row + col)]; }
    const cplx& at(int row, int col) const {
        return entries[static_cast<std::size_t>(4 * row + col)];
    }

    cplx trace() const { return entries[0] + entries[5] + entries[10] + entries[15]; }
};

// Pure-state projector |psi><psi|. The state must be normalized.
inline DensityMatrix density_of(const TwoQubitState& state) {
    if (std::abs(state.norm2() - 1.0) > 1e-9)
        throw std::invalid_argument("density_of expects a normalized state");
    DensityMatrix rho;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            rho.at(r, c) = state.amplitudes[static_cast<std::size_t>(r)] *
                           std::conj(state.amplitudes[static_cast<std::size_t>(c)]);
    return rho;
}

// Wootters concurrence of a normalized pure state: the spin-flip value
// |<psi| sigma_y x sigma_y |psi*>| collapses to 2 |a0 a3 - a1 a2|.
inline double concurrence(const TwoQubitState& state) {
    if (std::abs(state.norm2() - 1.0) > 1e-9)
        throw std::invalid_argument("concurrence expects a normalized state");
    const auto& a = state.amplitudes;
    const double value = 2.0 * std::abs(a[0] * a[3] - a[1] * a[2]);
    return value > 1.0 ? 1.0 : value;
}

enum class Subsystem { Molecule, Photon };

// Reduced 2x2 state after tracing out the named subsystem. Rejects inputs
// that are visibly not density operators (non-Hermitian or trace far from 1).
inline Mat2c partial_trace(const DensityMatrix& rho, Subsystem traced_out) {
    for (int r = 0; r < 4; ++r)
        for (int c = r; c < 4; ++c)
            if (std::abs(rho.at(r, c) - std::conj(rho.at(c, r))) > 1e-9)
                throw std::invalid_argument("partial_trace expects a Hermitian density matrix");
    if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-9)
        throw std::invalid_argument("partial_trace expects a unit-trace density matrix");

    Mat2c out{};
    if (traced_out == Subsystem::Photon) {
        out.a = rho.at(0, 0) + rho.at(1, 1);
        out.b = rho.at(0, 2) + rho.at(1, 3);
        out.c = rho.at(2, 0) + rho.at(3, 1);
        out.d = rho.at(2, 2) + rho.at(3, 3);
    } else {
        out.a = rho.at(0, 0) + rho.at(2, 2);
        out.b = rho.at(0, 1) + rho.at(2, 3);
        out.c = rho.at(1, 0) + rho.at(3, 2);
        out.d = rho.at(1, 1) + rho.at(3, 3);
    }
    return out;
}

// Tr(m^2) for a reduced state; 1 on pure states, 1 - C^2/2 under the pure
// two-qubit concurrence C.
inline double reduced_purity(const Mat2c& m) {
    return std::real((m * m).trace());
}

} // namespace chiroptica
