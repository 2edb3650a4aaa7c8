#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "fqsp/approx.hpp"
#include "fqsp/pulses.hpp"

namespace fqsp {

// Index convention for the 2d-dimensional joint space: ancilla is the
// least-significant factor, joint index = 2*system + ancilla.

struct EigenDecomposition {
    Eigen::VectorXd lambdas;   // ascending
    Eigen::MatrixXcd vectors;  // eigenvectors as columns, unitary
};

// Validates Hermiticity (max-entry norm, relative 1e-12) and dim <= 1024.
EigenDecomposition eigendecompose(const Eigen::MatrixXcd& H);

// O = 1 (x) |0><0| + e^{-i Lambda} e^{-i t H} (x) |1><1|.
Eigen::MatrixXcd oracle_unitary(const Eigen::MatrixXcd& H, double t, double Lambda);

// V_Phi = (Vbar_q V_{q-1} ... Vbar_2 V_1) W_in, where a gate with omega_k > 0
// wraps O and one with omega_k < 0 wraps O^dagger in ancilla rotations:
// V = [1 (x) rotation_zyz(xi)] O [1 (x) rotation_y(2 kappa)]. W_in is the
// x-independent ancilla gate from xi_0. Requires even q.
Eigen::MatrixXcd assemble_circuit(const Eigen::MatrixXcd& H, double t, double Lambda,
                                  const PulseSequence& pulses);

// <0|U|0> in the ancilla convention: block(s, s') = U(2s, 2s').
Eigen::MatrixXcd extract_block(const Eigen::MatrixXcd& U);

// sum_lambda series(lambda t + Lambda) |lambda><lambda|.
Eigen::MatrixXcd exact_function_of_H(const Eigen::MatrixXcd& H, double t,
                                     double Lambda, const FourierSeries& series);

// sum_lambda alpha f(lambda) |lambda><lambda|.
Eigen::MatrixXcd exact_function_of_H(const Eigen::MatrixXcd& H,
                                     const TargetFunction& f, double alpha);

// ||block psi||^2; psi must be normalized to 1e-10.
double success_probability(const Eigen::MatrixXcd& block, const Eigen::VectorXcd& psi);

struct RemapParams {
    double t = 0.0;
    double Lambda = 0.0;
};

// t = x0/dlam, Lambda = -x0*mean/dlam with dlam = (l_plus - l_minus)/2 and
// mean = (l_plus + l_minus)/2; sends [l_minus, l_plus] onto [-x0, x0] via
// x = lambda t + Lambda.
RemapParams remap_interval(double lambda_minus, double lambda_plus, double x0);

// Largest singular value by power iteration on A^dagger A (deterministic
// start, tol 1e-10, at most 10000 iterations).
double spectral_norm(const Eigen::MatrixXcd& A);

struct BlockEncodingResult {
    Eigen::MatrixXcd block;
    double err_vs_series = 0.0;  // spectral distance to the encoded series
    double err_vs_target = 0.0;  // spectral distance to alpha * f[H]
    int q = 0;
    double alpha = 1.0;
    double t = 1.0;
    double Lambda = 0.0;
};

struct PipelineOptions {
    bool remap = false;
    double lambda_minus = 0.0;
    double lambda_plus = 0.0;
    double x0 = 0.0;  // remap target half-width; series argument range
    int q_max = 4096;
    int grid_points = 1001;
    int quad_points = 32768;
};

// approximate -> complement (margin ladder 0, 1e-6, 1e-5, 1e-4) -> synthesize
// -> assemble -> extract, with both error norms measured against exact
// diagonalization. Without remap the spectrum must lie in [-1, 1].
BlockEncodingResult run_pipeline(const Eigen::MatrixXcd& H, const TargetFunction& f,
                                 double eps, ApproxMethod method,
                                 const PipelineOptions& opts = {});

// generators
Eigen::MatrixXcd diag_hamiltonian(const std::vector<double>& eigenvalues);
// GUE-style draw rescaled to spectral radius 1
Eigen::MatrixXcd random_hermitian(int dim, std::uint64_t seed);
// open-chain transverse-field Ising -sum ZZ - sum X on `sites` qubits
// (1 <= sites <= 10), rescaled to spectral radius 1
Eigen::MatrixXcd tfim_hamiltonian(int sites);

}  // namespace fqsp
