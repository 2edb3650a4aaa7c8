#include "fqsp/qsim.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>

#include "fqsp/complement.hpp"

namespace fqsp {

namespace {

double max_entry_norm(const Eigen::MatrixXcd& A) {
    double mx = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i) mx = std::max(mx, std::abs(A(i, j)));
    return mx;
}

// joint = system (x) ancilla with ancilla least significant
Eigen::MatrixXcd kron_sys_anc(const Eigen::MatrixXcd& sys, const Unitary2& anc) {
    const Eigen::Index d = sys.rows();
    Eigen::MatrixXcd out(2 * d, 2 * d);
    for (Eigen::Index s = 0; s < d; ++s)
        for (Eigen::Index sp = 0; sp < d; ++sp)
            for (int a = 0; a < 2; ++a)
                for (int ap = 0; ap < 2; ++ap)
                    out(2 * s + a, 2 * sp + ap) = sys(s, sp) * anc(a, ap);
    return out;
}

}  // namespace

EigenDecomposition eigendecompose(const Eigen::MatrixXcd& H) {
    if (H.rows() != H.cols() || H.rows() < 1)
        throw std::invalid_argument("eigendecompose: matrix must be square and nonempty");
    if (H.rows() > 1024)
        throw std::invalid_argument("eigendecompose: dense simulation capped at dim 1024");
    if (!H.allFinite())
        throw std::invalid_argument("eigendecompose: entries must be finite");
    const double hinf = max_entry_norm(H);
    if (max_entry_norm(H - H.adjoint()) > 1e-12 * hinf)
        throw std::invalid_argument("eigendecompose: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigendecompose: eigensolver failed to converge");
    EigenDecomposition dec;
    dec.lambdas = solver.eigenvalues();
    dec.vectors = solver.eigenvectors();
    return dec;
}

Eigen::MatrixXcd oracle_unitary(const Eigen::MatrixXcd& H, double t, double Lambda) {
    const EigenDecomposition dec = eigendecompose(H);
    const Eigen::Index d = H.rows();
    Eigen::VectorXcd phases(d);
    for (Eigen::Index i = 0; i < d; ++i)
        phases[i] = std::polar(1.0, -(t * dec.lambdas[i] + Lambda));
    const Eigen::MatrixXcd evolution =
        dec.vectors * phases.asDiagonal() * dec.vectors.adjoint();

    Eigen::MatrixXcd O = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    for (Eigen::Index s = 0; s < d; ++s) {
        for (Eigen::Index sp = 0; sp < d; ++sp) {
            if (s == sp) O(2 * s, 2 * sp) = 1.0;
            O(2 * s + 1, 2 * sp + 1) = evolution(s, sp);
        }
    }
    return O;
}

Eigen::MatrixXcd assemble_circuit(const Eigen::MatrixXcd& H, double t, double Lambda,
                                  const PulseSequence& pulses) {
    const int q = pulses.q();
    if (q < 0 || pulses.omegas.size() != pulses.xis.size())
        throw std::invalid_argument("assemble_circuit: malformed pulse sequence");
    if (q % 2 != 0)
        throw std::invalid_argument("assemble_circuit: q must be even");

    const Eigen::Index d = H.rows();
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd O = oracle_unitary(H, t, Lambda);
    const Eigen::MatrixXcd Odag = O.adjoint();

    // W_in: the omega = 0 gate has no oracle factor
    Eigen::MatrixXcd V = kron_sys_anc(
        identity, rotation_zyz(pulses.xis[0]) * rotation_y(2.0 * pulses.xis[0].kappa));
    for (int k = 1; k <= q; ++k) {
        const GateAngles& xi = pulses.xis[static_cast<size_t>(k)];
        const Eigen::MatrixXcd& orac = pulses.omegas[static_cast<size_t>(k)] > 0 ? O : Odag;
        V = kron_sys_anc(identity, rotation_zyz(xi)) * orac *
            kron_sys_anc(identity, rotation_y(2.0 * xi.kappa)) * V;
    }
    return V;
}

Eigen::MatrixXcd extract_block(const Eigen::MatrixXcd& U) {
    if (U.rows() != U.cols() || U.rows() % 2 != 0 || U.rows() < 2)
        throw std::invalid_argument("extract_block: expected a 2d x 2d matrix");
    const Eigen::Index d = U.rows() / 2;
    Eigen::MatrixXcd B(d, d);
    for (Eigen::Index s = 0; s < d; ++s)
        for (Eigen::Index sp = 0; sp < d; ++sp) B(s, sp) = U(2 * s, 2 * sp);
    return B;
}

Eigen::MatrixXcd exact_function_of_H(const Eigen::MatrixXcd& H, double t,
                                     double Lambda, const FourierSeries& series) {
    const EigenDecomposition dec = eigendecompose(H);
    Eigen::VectorXcd vals(dec.lambdas.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        vals[i] = evaluate(series, t * dec.lambdas[i] + Lambda);
    return dec.vectors * vals.asDiagonal() * dec.vectors.adjoint();
}

Eigen::MatrixXcd exact_function_of_H(const Eigen::MatrixXcd& H,
                                     const TargetFunction& f, double alpha) {
    const EigenDecomposition dec = eigendecompose(H);
    Eigen::VectorXcd vals(dec.lambdas.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i) vals[i] = alpha * f(dec.lambdas[i]);
    return dec.vectors * vals.asDiagonal() * dec.vectors.adjoint();
}

double success_probability(const Eigen::MatrixXcd& block, const Eigen::VectorXcd& psi) {
    if (block.rows() != block.cols() || block.rows() != psi.size())
        throw std::invalid_argument("success_probability: dimension mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("success_probability: psi must be normalized");
    return (block * psi).squaredNorm();
}

RemapParams remap_interval(double lambda_minus, double lambda_plus, double x0) {
    if (!(lambda_minus < lambda_plus))
        throw std::invalid_argument("remap_interval: need lambda_minus < lambda_plus");
    if (!(x0 > 0.0 && x0 <= std::numbers::pi))
        throw std::invalid_argument("remap_interval: x0 must be in (0, pi]");
    const double dlam = (lambda_plus - lambda_minus) / 2.0;
    const double mean = (lambda_plus + lambda_minus) / 2.0;
    return RemapParams{x0 / dlam, -x0 * mean / dlam};
}

double spectral_norm(const Eigen::MatrixXcd& A) {
    if (A.rows() == 0 || A.cols() == 0) return 0.0;
    Eigen::VectorXcd v(A.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] = cplx(1.0 + static_cast<double>(i) / v.size(), 0.0);
    v.normalize();
    double est = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXcd w = A.adjoint() * (A * v);
        const double n = w.norm();
        if (n < 1e-300) return 0.0;
        const double prev = est;
        est = n;  // ||A^dagger A v|| -> sigma_max^2 for normalized v
        v = w / n;
        if (it > 0 && std::abs(est - prev) <= 1e-10 * std::max(1.0, est)) break;
    }
    return std::sqrt(est);
}

BlockEncodingResult run_pipeline(const Eigen::MatrixXcd& H, const TargetFunction& f,
                                 double eps, ApproxMethod method,
                                 const PipelineOptions& opts) {
    const EigenDecomposition dec = eigendecompose(H);
    const double lam_lo = dec.lambdas[0];
    const double lam_hi = dec.lambdas[dec.lambdas.size() - 1];

    if (opts.remap) {
        if (!(opts.lambda_minus < opts.lambda_plus))
            throw std::invalid_argument("run_pipeline: empty remap interval");
        if (lam_lo < opts.lambda_minus - 1e-9 || lam_hi > opts.lambda_plus + 1e-9)
            throw std::invalid_argument("run_pipeline: spectrum outside the remap interval");
    } else if (std::max(std::abs(lam_lo), std::abs(lam_hi)) > 1.0 + 1e-12) {
        throw std::invalid_argument(
            "run_pipeline: spectrum exceeds [-1, 1]; rescale H or pass remap "
            "parameters (remap_interval)");
    }

    SearchOptions search;
    search.q_max = opts.q_max;
    search.grid_points = opts.grid_points;
    search.quad_points = opts.quad_points;

    ApproxResult ar;
    switch (method) {
        case ApproxMethod::analytic_extension: {
            search.x0 = opts.remap ? opts.x0 : 1.0;
            ar = analytic_extension_series(f, eps, search);
            break;
        }
        case ApproxMethod::taylor_fourier: {
            double delta;
            if (opts.remap) {
                delta = std::numbers::pi / 2.0 - opts.x0;
                if (!(delta > 0.0))
                    throw std::invalid_argument(
                        "run_pipeline: taylor_fourier needs x0 < pi/2");
            } else {
                delta = f.kind == TargetKind::exponential ? fig2_delta(f.beta)
                                                          : std::numbers::pi / 4.0;
            }
            ar = taylor_pipeline(f, eps, delta);
            break;
        }
        case ApproxMethod::linear_extension: {
            double x0 = std::numbers::pi / 2.0;
            if (opts.remap) {
                x0 = opts.x0;
            } else if (f.kind == TargetKind::exponential) {
                x0 = std::numbers::pi / 2.0 - fig2_delta(f.beta);
            }
            search.x0 = x0;
            ar = linear_extension_series(f, x0, eps, search);
            break;
        }
    }

    double t = ar.t, Lambda = 0.0;
    if (opts.remap) {
        const RemapParams rp = remap_interval(opts.lambda_minus, opts.lambda_plus, ar.t);
        t = rp.t;
        Lambda = rp.Lambda;
    }

    // complement with a margin ladder: exact first, then tiny rescales that
    // clear the unit circle when rounding puts roots on it
    const double margins[] = {0.0, 1e-6, 1e-5, 1e-4};
    FourierSeries g_used, h;
    double margin_used = 0.0;
    bool done = false;
    std::string last_error;
    for (double m : margins) {
        try {
            h = complementary_series(ar.series, m);
            g_used = m > 0.0 ? scaled(ar.series, cplx(1.0 / (1.0 + m), 0.0)) : ar.series;
            margin_used = m;
            done = true;
            break;
        } catch (const NumericalError& e) {
            last_error = e.what();
        }
    }
    if (!done)
        throw NumericalError("run_pipeline: complement failed at all margins: " + last_error);

    const PulseSequence pulses = synthesize_pulses(g_used, h);
    const Eigen::MatrixXcd V = assemble_circuit(H, t, Lambda, pulses);

    BlockEncodingResult result;
    result.block = extract_block(V);
    result.q = ar.q;
    result.alpha = ar.alpha / (1.0 + margin_used);
    result.t = t;
    result.Lambda = Lambda;

    const Eigen::MatrixXcd series_exact = exact_function_of_H(H, t, Lambda, g_used);
    result.err_vs_series = spectral_norm(result.block - series_exact);

    Eigen::VectorXcd target_vals(dec.lambdas.size());
    for (Eigen::Index i = 0; i < target_vals.size(); ++i) {
        double mu = dec.lambdas[i];
        if (opts.remap) {
            const double dlam = (opts.lambda_plus - opts.lambda_minus) / 2.0;
            const double mean = (opts.lambda_plus + opts.lambda_minus) / 2.0;
            mu = (dec.lambdas[i] - mean) / dlam;
        }
        target_vals[i] = result.alpha * f(mu);
    }
    const Eigen::MatrixXcd target_exact =
        dec.vectors * target_vals.asDiagonal() * dec.vectors.adjoint();
    result.err_vs_target = spectral_norm(result.block - target_exact);
    return result;
}

Eigen::MatrixXcd diag_hamiltonian(const std::vector<double>& eigenvalues) {
    if (eigenvalues.empty())
        throw std::invalid_argument("diag_hamiltonian: need at least one eigenvalue");
    for (double v : eigenvalues)
        if (!std::isfinite(v))
            throw std::invalid_argument("diag_hamiltonian: eigenvalues must be finite");
    const Eigen::Index d = static_cast<Eigen::Index>(eigenvalues.size());
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) H(i, i) = eigenvalues[static_cast<size_t>(i)];
    return H;
}

Eigen::MatrixXcd random_hermitian(int dim, std::uint64_t seed) {
    if (dim < 1 || dim > 1024)
        throw std::invalid_argument("random_hermitian: dim must be in [1, 1024]");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd G(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) G(i, j) = cplx(gauss(rng), gauss(rng));
    Eigen::MatrixXcd H = (G + G.adjoint()) / 2.0;
    const EigenDecomposition dec = eigendecompose(H);
    const double radius = std::max(std::abs(dec.lambdas[0]),
                                   std::abs(dec.lambdas[dec.lambdas.size() - 1]));
    if (radius > 0.0) H /= radius;
    return H;
}

Eigen::MatrixXcd tfim_hamiltonian(int sites) {
    if (sites < 1 || sites > 10)
        throw std::invalid_argument("tfim_hamiltonian: sites must be in [1, 10]");
    const int d = 1 << sites;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(d, d);
    for (int b = 0; b < d; ++b) {
        double zz = 0.0;
        for (int i = 0; i + 1 < sites; ++i) {
            const int zi = (b >> i) & 1 ? -1 : 1;
            const int zj = (b >> (i + 1)) & 1 ? -1 : 1;
            zz += zi * zj;
        }
        H(b, b) = -zz;
        for (int i = 0; i < sites; ++i) H(b, b ^ (1 << i)) -= 1.0;
    }
    const EigenDecomposition dec = eigendecompose(H);
    const double radius = std::max(std::abs(dec.lambdas[0]),
                                   std::abs(dec.lambdas[dec.lambdas.size() - 1]));
    return H / radius;
}

}  // namespace fqsp
