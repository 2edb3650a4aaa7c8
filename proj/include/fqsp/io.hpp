#pragma once

#include <string>

#include "fqsp/approx.hpp"
#include "fqsp/pulses.hpp"
#include "fqsp/qsim.hpp"

namespace fqsp {

// JSON/CSV plumbing. All writers produce deterministic byte-stable text
// (sorted keys, shortest round-trip numbers); all readers accept their
// writer's output without loss. Malformed input raises std::invalid_argument.

std::string method_name(ApproxMethod m);
ApproxMethod method_from_name(const std::string& name);

// {"half_order": int, "coefficients": [[re, im], ...]} ascending m
std::string series_to_json(const FourierSeries& s);
FourierSeries series_from_json(const std::string& text);

// {"method", "q", "alpha", "t", "delta" (null when unused), "eps_target",
//  "eps_measured", "series"}
std::string approx_to_json(const ApproxResult& r);
ApproxResult approx_from_json(const std::string& text);

// {"q": int, "omegas": [...], "xis": [{"zeta","eta","phi","kappa"}, ...]}
std::string pulses_to_json(const PulseSequence& p);
PulseSequence pulses_from_json(const std::string& text);

// {"dim": int, "entries": [[[re, im], ...], ...]} row-major
std::string matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const std::string& text);

// {"q","alpha","t","Lambda","err_vs_series","err_vs_target","block"}
std::string block_result_to_json(const BlockEncodingResult& r);
BlockEncodingResult block_result_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace fqsp
