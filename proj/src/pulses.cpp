#include "fqsp/pulses.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fqsp {

namespace {

constexpr double kPi = std::numbers::pi;

// boundary-coefficient update shared by peeling and residual probing;
// s = sign(2 omega), arrays indexed by (j + k)/2 on the stage-k lattice
struct Stage {
    // gam[i] is the e^{i j x / 2} coefficient of the top-left entry, j = 2i - k
    std::vector<cplx> gam, del;
    int k = 0;

    cplx g(int j) const {
        if ((j + k) % 2 != 0 || j < -k || j > k) return cplx(0.0, 0.0);
        return gam[static_cast<size_t>((j + k) / 2)];
    }
    cplx d(int j) const {
        if ((j + k) % 2 != 0 || j < -k || j > k) return cplx(0.0, 0.0);
        return del[static_cast<size_t>((j + k) / 2)];
    }
};

cplx peel_gamma(const Stage& st, const GateCoefficients& gc, int s, int jp) {
    return std::conj(gc.a_plus) * st.g(jp + s) + std::conj(gc.a_minus) * st.g(jp - s) +
           gc.b_plus * std::conj(st.d(s - jp)) + gc.b_minus * std::conj(st.d(-s - jp));
}

cplx peel_delta(const Stage& st, const GateCoefficients& gc, int s, int jp) {
    return std::conj(gc.a_plus) * st.d(jp + s) + std::conj(gc.a_minus) * st.d(jp - s) -
           gc.b_plus * std::conj(st.g(s - jp)) - gc.b_minus * std::conj(st.g(-s - jp));
}

}  // namespace

GateCoefficients gate_coefficients(const GateAngles& xi) {
    const double cphi = std::cos(xi.phi), sphi = std::sin(xi.phi);
    const double ckap = std::cos(xi.kappa), skap = std::sin(xi.kappa);
    const cplx ez = std::polar(1.0, xi.zeta);
    const cplx ee = std::polar(1.0, xi.eta);
    GateCoefficients gc;
    gc.a_plus = cphi * ckap * ez;
    gc.a_minus = -sphi * skap * ee;
    gc.b_plus = -cphi * skap * ez;
    gc.b_minus = -sphi * ckap * ee;
    return gc;
}

Unitary2 rotation_zyz(const GateAngles& xi) {
    const double c = std::cos(xi.phi), s = std::sin(xi.phi);
    Unitary2 R;
    R << c * std::polar(1.0, xi.zeta), -s * std::polar(1.0, xi.eta),
        s * std::polar(1.0, -xi.eta), c * std::polar(1.0, -xi.zeta);
    return R;
}

Unitary2 rotation_y(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    Unitary2 R;
    R << c, -s, s, c;
    return R;
}

Unitary2 basic_gate(double x, double omega, const GateAngles& xi) {
    const GateCoefficients gc = gate_coefficients(xi);
    const cplx ph = std::polar(1.0, omega * x);
    const cplx u = gc.a_plus * ph + gc.a_minus * std::conj(ph);
    const cplx v = gc.b_plus * ph + gc.b_minus * std::conj(ph);
    Unitary2 R;
    R << u, v, -std::conj(v), std::conj(u);
    return R;
}

PulseSequence synthesize_pulses(const FourierSeries& g, const FourierSeries& h,
                                double first_omega) {
    if (!g.valid() || !h.valid())
        throw std::invalid_argument("synthesize_pulses: invalid series");
    if (g.half_order != h.half_order)
        throw std::invalid_argument("synthesize_pulses: g and h must share half_order");
    if (std::abs(std::abs(first_omega) - 0.5) > 1e-15)
        throw std::invalid_argument("synthesize_pulses: |first_omega| must be 1/2");

    for (int i = 0; i < 101; ++i) {
        const double x = -kPi + 2.0 * kPi * i / 100;
        const double s = std::norm(evaluate(g, x)) + std::norm(evaluate(h, x));
        if (std::abs(s - 1.0) > 1e-6)
            throw std::invalid_argument(
                "synthesize_pulses: |g|^2 + |h|^2 != 1 on the circle (pair not complementary)");
    }

    const int q = 2 * g.half_order;
    PulseSequence seq;
    seq.omegas.assign(static_cast<size_t>(q + 1), 0.0);
    seq.xis.assign(static_cast<size_t>(q + 1), GateAngles{});
    for (int k = 1; k <= q; ++k)
        seq.omegas[static_cast<size_t>(k)] = (k % 2 == 1) ? first_omega : -first_omega;

    Stage st;
    st.k = q;
    st.gam = g.coefficients;  // stage-q lattice j = 2m coincides with series index
    st.del = h.coefficients;

    double worst_residual = 0.0;
    int worst_step = -1;

    for (int k = q; k >= 1; --k) {
        const double omega = seq.omegas[static_cast<size_t>(k)];
        const int s = omega > 0 ? 1 : -1;

        // boundary terms at j' = +-(k+1) vanish iff (conj a_minus-type pairs)
        // align with one of these null vectors; they are parallel by the
        // unitarity invariant gamma_k conj(gamma_{-k}) + delta_k conj(delta_{-k}) = 0
        const cplx n1a = std::conj(st.d(-k)), n1b = -st.g(k);
        const cplx n2a = std::conj(st.g(-k)), n2b = st.d(k);
        const double m1 = std::hypot(std::abs(n1a), std::abs(n1b));
        const double m2 = std::hypot(std::abs(n2a), std::abs(n2b));

        GateAngles xi;
        if (std::max(m1, m2) < 1e-13) {
            xi = GateAngles{0.0, 0.0, 0.0, 0.0};  // R degenerates to e^{i omega x Z}
        } else {
            const cplx na = m1 >= m2 ? n1a : n2a;
            const cplx nb = m1 >= m2 ? n1b : n2b;
            double phi, zeta;
            if (s > 0) {
                phi = std::atan2(std::abs(na), std::abs(nb));
                zeta = (std::arg(nb) - std::arg(na)) / 2.0;
            } else {
                phi = std::atan2(std::abs(nb), std::abs(na));
                zeta = -(kPi + std::arg(na) - std::arg(nb)) / 2.0;
            }
            xi = GateAngles{zeta, zeta, phi, kPi / 4.0};
        }
        seq.xis[static_cast<size_t>(k)] = xi;
        const GateCoefficients gc = gate_coefficients(xi);

        const double res =
            std::max(std::max(std::abs(peel_gamma(st, gc, s, k + 1)),
                              std::abs(peel_gamma(st, gc, s, -k - 1))),
                     std::max(std::abs(peel_delta(st, gc, s, k + 1)),
                              std::abs(peel_delta(st, gc, s, -k - 1))));
        if (res > worst_residual) {
            worst_residual = res;
            worst_step = k;
        }

        Stage nx;
        nx.k = k - 1;
        nx.gam.resize(static_cast<size_t>(k));
        nx.del.resize(static_cast<size_t>(k));
        double norm2 = 0.0;
        for (int i = 0; i < k; ++i) {
            const int jp = 2 * i - (k - 1);
            nx.gam[static_cast<size_t>(i)] = peel_gamma(st, gc, s, jp);
            nx.del[static_cast<size_t>(i)] = peel_delta(st, gc, s, jp);
            norm2 += std::norm(nx.gam[static_cast<size_t>(i)]) +
                     std::norm(nx.del[static_cast<size_t>(i)]);
        }
        const double norm = std::sqrt(norm2);
        if (std::abs(norm - 1.0) > 1e-6) {
            std::ostringstream msg;
            msg << "synthesize_pulses: coefficient norm drifted to " << norm
                << " at step " << k;
            throw NumericalError(msg.str());
        }
        for (cplx& c : nx.gam) c /= norm;
        for (cplx& c : nx.del) c /= norm;
        st = std::move(nx);
    }

    if (worst_residual > 1e-6) {
        std::ostringstream msg;
        msg << "synthesize_pulses: elimination residual " << worst_residual
            << " at step " << worst_step;
        throw NumericalError(msg.str());
    }

    // omega = 0 closer: R(x) must carry (gamma_0, delta_0) in its top row
    const cplx g0 = st.gam[0], d0 = st.del[0];
    seq.xis[0] = GateAngles{std::arg(g0), std::arg(d0),
                            std::atan2(-std::abs(d0), std::abs(g0)), 0.0};
    return seq;
}

Unitary2 reconstruct(double x, const PulseSequence& pulses) {
    if (pulses.omegas.size() != pulses.xis.size() || pulses.omegas.empty())
        throw std::invalid_argument("reconstruct: malformed pulse sequence");
    Unitary2 U = Unitary2::Identity();
    for (size_t k = 0; k < pulses.omegas.size(); ++k)
        U = basic_gate(x, pulses.omegas[k], pulses.xis[k]) * U;
    return U;
}

GridReport verify_pulses(const PulseSequence& pulses, const FourierSeries& g,
                         int points) {
    if (points < 2) throw std::invalid_argument("verify_pulses: need at least 2 points");
    GridReport rep;
    rep.grid_points = points;
    rep.interval_lo = -kPi;
    rep.interval_hi = kPi;
    for (int i = 0; i < points; ++i) {
        const double x = -kPi + 2.0 * kPi * i / (points - 1);
        const double err = std::abs(reconstruct(x, pulses)(0, 0) - evaluate(g, x));
        if (err > rep.max_abs_error) {
            rep.max_abs_error = err;
            rep.argmax_x = x;
        }
    }
    return rep;
}

}  // namespace fqsp
