#pragma once

#include <Eigen/Dense>

#include <vector>

#include "fqsp/fourier.hpp"

namespace fqsp {

using Unitary2 = Eigen::Matrix2cd;

// Rotation-angle quadruple of one basic gate, order (zeta, eta, phi, kappa):
// R(x, omega, xi) = e^{i(zeta+eta)Z/2} e^{-i phi Y} e^{i(zeta-eta)Z/2}
//                   e^{i omega x Z} e^{-i kappa Y}.
struct GateAngles {
    double zeta = 0.0;
    double eta = 0.0;
    double phi = 0.0;
    double kappa = 0.0;
};

// Gate list for U(x) = R(x, omega_q, xi_q) ... R(x, omega_1, xi_1)
// R(x, omega_0, xi_0); omegas[0] = 0 and |omegas[k]| = 1/2, alternating sign,
// for k >= 1.
struct PulseSequence {
    std::vector<double> omegas;
    std::vector<GateAngles> xis;

    int q() const { return static_cast<int>(omegas.size()) - 1; }
};

// x-independent coefficients of the top row of R:
// R[0][0] = a_plus e^{i omega x} + a_minus e^{-i omega x},
// R[0][1] = b_plus e^{i omega x} + b_minus e^{-i omega x}.
struct GateCoefficients {
    cplx a_plus, a_minus, b_plus, b_minus;
};

GateCoefficients gate_coefficients(const GateAngles& xi);

// SU(2) for every real x.
Unitary2 basic_gate(double x, double omega, const GateAngles& xi);

// e^{i(zeta+eta)Z/2} e^{-i phi Y} e^{i(zeta-eta)Z/2} (the x-independent left
// factor of the basic gate; kappa is ignored).
Unitary2 rotation_zyz(const GateAngles& xi);

// e^{-i(theta/2) Y}; rotation_y(2*kappa) is the right factor of the basic gate.
Unitary2 rotation_y(double theta);

// Peel-off synthesis: given a complementary pair (|g|^2 + |h|^2 = 1 on the
// circle), returns the q+1 = 2*half_order+1 gates whose product carries (g, h)
// in its top row. first_omega = +1/2 is the default convention for omega_1;
// pass -1/2 for the mirrored one.
PulseSequence synthesize_pulses(const FourierSeries& g, const FourierSeries& h,
                                double first_omega = 0.5);

Unitary2 reconstruct(double x, const PulseSequence& pulses);

// max_x |reconstruct(x)[0][0] - g(x)| over a uniform grid on [-pi, pi].
GridReport verify_pulses(const PulseSequence& pulses, const FourierSeries& g,
                         int points);

}  // namespace fqsp
