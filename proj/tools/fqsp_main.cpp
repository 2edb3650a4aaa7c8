#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "fqsp/complement.hpp"
#include "fqsp/io.hpp"

namespace {

using namespace fqsp;

struct RunConfig {
    std::string function_kind = "exp";
    double beta = 0.0;
    std::string coeffs_text;
    double eps = 1e-3;
    std::string method_text = "analytic";
    double x0 = -1.0;    // < 0: method default
    double delta = -1.0; // < 0: method default
    double margin = 1e-6;
    int q_max = 4096;
    int q_max_linear = -1;
    int grid_points = 1001;
    double tol = 1e-8;
    std::uint64_t seed = 0;
    std::string hamiltonian;
    std::string remap_text;
    std::string input;
    std::string complement_input;
    std::string pulses_input;
    std::string series_input;
    std::string betas_text;
    std::string eps_list_text;
    std::string output;
    bool verbose = false;
};

double parse_one_double(const std::string& tok, const char* what) {
    try {
        size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument(std::string(what) + ": bad number '" + tok + "'");
        return v;
    } catch (const std::out_of_range&) {
        throw std::invalid_argument(std::string(what) + ": number out of range '" + tok + "'");
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(std::string(what) + ": bad number '" + tok + "'");
    }
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    if (text.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    std::vector<double> out;
    size_t pos = 0;
    while (true) {
        const size_t comma = text.find(',', pos);
        const std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(parse_one_double(tok, what));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int parse_int(const std::string& tok, const char* what) {
    try {
        size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument(std::string(what) + ": bad integer '" + tok + "'");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": bad integer '" + tok + "'");
    }
}

TargetFunction make_function(const RunConfig& c) {
    if (c.function_kind == "exp") {
        if (!(c.beta > 0.0))
            throw std::invalid_argument("--beta must be > 0 with --function exp");
        return TargetFunction::exponential(c.beta);
    }
    if (c.function_kind == "poly") {
        if (c.coeffs_text.empty())
            throw std::invalid_argument("--coeffs required with --function poly");
        std::vector<cplx> coeffs;
        size_t pos = 0;
        while (true) {
            const size_t comma = c.coeffs_text.find(',', pos);
            const std::string tok = c.coeffs_text.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos);
            const size_t colon = tok.find(':');
            if (colon == std::string::npos) {
                coeffs.emplace_back(parse_one_double(tok, "--coeffs"), 0.0);
            } else {
                coeffs.emplace_back(parse_one_double(tok.substr(0, colon), "--coeffs"),
                                    parse_one_double(tok.substr(colon + 1), "--coeffs"));
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return TargetFunction::polynomial(std::move(coeffs));
    }
    throw std::invalid_argument("--function must be exp or poly");
}

ApproxMethod parse_method(const std::string& m) {
    if (m == "taylor" || m == "taylor_fourier") return ApproxMethod::taylor_fourier;
    if (m == "analytic" || m == "analytic_extension") return ApproxMethod::analytic_extension;
    if (m == "linear" || m == "linear_extension") return ApproxMethod::linear_extension;
    throw std::invalid_argument("--method must be taylor, analytic, or linear");
}

Eigen::MatrixXcd make_hamiltonian(const RunConfig& c) {
    const std::string& s = c.hamiltonian;
    if (s.empty()) throw std::invalid_argument("--hamiltonian is required");
    const size_t colon = s.find(':');
    const std::string head = s.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (head == "tfim") return tfim_hamiltonian(parse_int(rest, "--hamiltonian tfim"));
    if (head == "diag") return diag_hamiltonian(parse_list(rest, "--hamiltonian diag"));
    if (head == "random")
        return random_hermitian(parse_int(rest, "--hamiltonian random"), c.seed);
    if (head == "file") return matrix_from_json(read_text_file(rest));
    throw std::invalid_argument(
        "--hamiltonian must be tfim:N, diag:v1,v2,..., random:D, or file:PATH");
}

std::string output_or(const RunConfig& c, const char* fallback) {
    return c.output.empty() ? std::string(fallback) : c.output;
}

// accept either a bare series file or an approx-result file holding one,
// so approx output feeds complement/pulses/verify directly
FourierSeries series_from_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return series_from_json(text);
    } catch (const std::invalid_argument& primary) {
        try {
            return approx_from_json(text).series;
        } catch (const std::invalid_argument&) {
            throw primary;
        }
    }
}

int cmd_approx(const RunConfig& c) {
    const TargetFunction f = make_function(c);
    const ApproxMethod m = parse_method(c.method_text);
    SearchOptions so;
    so.q_max = c.q_max;
    so.grid_points = c.grid_points;

    ApproxResult r;
    if (m == ApproxMethod::taylor_fourier) {
        const double delta = c.delta > 0.0
                                 ? c.delta
                                 : (f.kind == TargetKind::exponential
                                        ? fig2_delta(f.beta)
                                        : std::numbers::pi / 4.0);
        r = taylor_pipeline(f, c.eps, delta);
    } else if (m == ApproxMethod::analytic_extension) {
        so.x0 = c.x0 > 0.0 ? c.x0 : 1.0;
        r = analytic_extension_series(f, c.eps, so);
    } else {
        const double x0 = c.x0 > 0.0 ? c.x0 : std::numbers::pi / 2.0;
        so.x0 = x0;
        r = linear_extension_series(f, x0, c.eps, so);
    }
    write_text_file(output_or(c, "approx_result.json"), approx_to_json(r));
    std::cout << "method=" << method_name(r.method) << " q=" << r.q
              << " alpha=" << format_double(r.alpha)
              << " eps_measured=" << format_double(r.eps_measured) << "\n";
    return r.eps_measured <= c.eps ? 0 : 2;
}

int cmd_complement(const RunConfig& c) {
    if (c.input.empty()) throw std::invalid_argument("--input series file is required");
    const FourierSeries g = series_from_file(c.input);
    const FourierSeries h = complementary_series(g, c.margin);
    write_text_file(output_or(c, "complement.json"), series_to_json(h));

    const FourierSeries gs =
        c.margin > 0.0 ? scaled(g, cplx(1.0 / (1.0 + c.margin), 0.0)) : g;
    double dev = 0.0;
    for (int i = 0; i < 1001; ++i) {
        const double x = -std::numbers::pi + 2.0 * std::numbers::pi * i / 1000;
        dev = std::max(dev, std::abs(std::norm(evaluate(gs, x)) +
                                     std::norm(evaluate(h, x)) - 1.0));
    }
    std::cout << "half_order=" << h.half_order << " unitarity_dev=" << format_double(dev)
              << "\n";
    return 0;
}

int cmd_pulses(const RunConfig& c) {
    if (c.input.empty()) throw std::invalid_argument("--input series file is required");
    const FourierSeries g = series_from_file(c.input);
    FourierSeries g_used = g, h;
    if (!c.complement_input.empty()) {
        h = series_from_json(read_text_file(c.complement_input));
    } else {
        h = complementary_series(g, c.margin);
        if (c.margin > 0.0) g_used = scaled(g, cplx(1.0 / (1.0 + c.margin), 0.0));
    }
    const PulseSequence seq = synthesize_pulses(g_used, h);
    const GridReport rep = verify_pulses(seq, g_used, c.grid_points);
    write_text_file(output_or(c, "pulses.json"), pulses_to_json(seq));
    std::cout << "q=" << seq.q()
              << " verify_max_error=" << format_double(rep.max_abs_error) << "\n";
    if (rep.max_abs_error <= c.tol) return 0;
    std::cerr << "numerical failure: reconstruction error above " << format_double(c.tol)
              << "\n";
    return 2;
}

int cmd_simulate(const RunConfig& c) {
    const Eigen::MatrixXcd H = make_hamiltonian(c);
    const TargetFunction f = make_function(c);
    const ApproxMethod m = parse_method(c.method_text);
    PipelineOptions po;
    po.q_max = c.q_max;
    po.grid_points = c.grid_points;
    if (!c.remap_text.empty()) {
        const std::vector<double> v = parse_list(c.remap_text, "--remap");
        if (v.size() != 3)
            throw std::invalid_argument("--remap needs three values: lo,hi,x0");
        po.remap = true;
        po.lambda_minus = v[0];
        po.lambda_plus = v[1];
        po.x0 = v[2];
    }
    if (c.verbose)
        std::cerr << "simulate: d=" << H.rows() << " method=" << c.method_text
                  << " eps=" << format_double(c.eps) << "\n";
    const BlockEncodingResult r = run_pipeline(H, f, c.eps, m, po);
    write_text_file(output_or(c, "block_result.json"), block_result_to_json(r));
    std::cout << "q=" << r.q << " alpha=" << format_double(r.alpha)
              << " err_vs_series=" << format_double(r.err_vs_series)
              << " err_vs_target=" << format_double(r.err_vs_target) << "\n";
    if (r.err_vs_series <= 1e-8 && r.err_vs_target <= c.eps) return 0;
    std::cerr << "numerical failure: block-encoding errors exceed tolerances\n";
    return 2;
}

int cmd_compare(const RunConfig& c) {
    const std::vector<double> betas = parse_list(c.betas_text, "--betas");
    const std::vector<double> eps_list = parse_list(c.eps_list_text, "--eps-list");
    CompareOptions co;
    co.search.q_max = c.q_max;
    co.search.grid_points = c.grid_points;
    co.q_max_linear = c.q_max_linear;
    const std::vector<CompareRow> rows = compare_methods(betas, eps_list, co);
    write_text_file(output_or(c, "compare.csv"), compare_csv(rows));

    int full = 0;
    for (const CompareRow& r : rows) {
        if (r.q_lemma37 >= 0 && r.q_linear >= 0 && r.q_analytic >= 0) ++full;
        if (!r.linear_note.empty())
            std::cerr << "note (beta=" << format_double(r.beta)
                      << ", eps=" << format_double(r.eps) << ", linear): " << r.linear_note
                      << "\n";
        if (!r.analytic_note.empty())
            std::cerr << "note (beta=" << format_double(r.beta)
                      << ", eps=" << format_double(r.eps)
                      << ", analytic): " << r.analytic_note << "\n";
        if (c.verbose)
            std::cerr << "row beta=" << format_double(r.beta)
                      << " eps=" << format_double(r.eps) << " q=(" << r.q_lemma37 << ","
                      << r.q_linear << "," << r.q_analytic << ")\n";
    }
    std::cout << rows.size() << " rows, " << full << " complete\n";
    if (full == 0) {
        std::cerr << "numerical failure: every row has a failed cell\n";
        return 2;
    }
    return 0;
}

int cmd_verify(const RunConfig& c) {
    if (c.pulses_input.empty() || c.series_input.empty())
        throw std::invalid_argument("--pulses and --series files are required");
    const PulseSequence seq = pulses_from_json(read_text_file(c.pulses_input));
    const FourierSeries g = series_from_file(c.series_input);
    const GridReport rep = verify_pulses(seq, g, c.grid_points);
    std::cout << "max_error=" << format_double(rep.max_abs_error)
              << " at_x=" << format_double(rep.argmax_x) << "\n";
    if (rep.max_abs_error <= c.tol) return 0;
    std::cerr << "numerical failure: reconstruction error above " << format_double(c.tol)
              << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    cfg.verbose = std::getenv("FQSP_LOG") != nullptr;

    CLI::App app{"Fourier-series quantum signal processing toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    auto add_function_opts = [&](CLI::App* sub) {
        sub->add_option("--function", cfg.function_kind, "target kind: exp or poly");
        sub->add_option("--beta", cfg.beta, "inverse temperature for exp");
        sub->add_option("--coeffs", cfg.coeffs_text,
                        "comma list of poly coefficients (re or re:im)");
    };
    auto add_search_opts = [&](CLI::App* sub) {
        sub->add_option("--q-max", cfg.q_max, "search ceiling for q (default 4096)");
        sub->add_option("--grid-points", cfg.grid_points,
                        "verification grid size (default 1001)");
    };

    CLI::App* ap = app.add_subcommand("approx", "Fourier-approximate a target function");
    add_function_opts(ap);
    add_search_opts(ap);
    ap->add_option("--eps", cfg.eps, "target accuracy in (0,1)")->required();
    ap->add_option("--method", cfg.method_text, "taylor, analytic, or linear");
    ap->add_option("--x0", cfg.x0, "encoding half-width (analytic/linear)");
    ap->add_option("--delta", cfg.delta, "interval margin (taylor)");
    ap->add_option("--output", cfg.output, "result path (default approx_result.json)");
    ap->callback([&] { rc = cmd_approx(cfg); });

    CLI::App* cp = app.add_subcommand("complement", "complementary series of a Fourier series");
    cp->add_option("--input", cfg.input, "series JSON file")->required();
    cp->add_option("--margin", cfg.margin, "pre-scale margin (default 1e-6)");
    cp->add_option("--output", cfg.output, "result path (default complement.json)");
    cp->callback([&] { rc = cmd_complement(cfg); });

    CLI::App* pp = app.add_subcommand("pulses", "synthesize the gate sequence for a series");
    pp->add_option("--input", cfg.input, "series JSON file")->required();
    pp->add_option("--complement", cfg.complement_input,
                   "optional complementary-series file (computed when absent)");
    pp->add_option("--margin", cfg.margin, "complement margin (default 1e-6)");
    pp->add_option("--grid-points", cfg.grid_points, "verification grid size");
    pp->add_option("--tol", cfg.tol, "verification tolerance (default 1e-8)");
    pp->add_option("--output", cfg.output, "result path (default pulses.json)");
    pp->callback([&] { rc = cmd_pulses(cfg); });

    CLI::App* sp = app.add_subcommand("simulate", "run the full block-encoding pipeline");
    add_function_opts(sp);
    add_search_opts(sp);
    sp->add_option("--hamiltonian", cfg.hamiltonian,
                   "tfim:N, diag:v1,v2,..., random:D, or file:PATH")
        ->required();
    sp->add_option("--eps", cfg.eps, "target accuracy in (0,1)")->required();
    sp->add_option("--method", cfg.method_text, "taylor, analytic, or linear");
    sp->add_option("--remap", cfg.remap_text, "lo,hi,x0 spectral remap");
    sp->add_option("--seed", cfg.seed, "generator seed (default 0)");
    sp->add_option("--output", cfg.output, "result path (default block_result.json)");
    sp->callback([&] { rc = cmd_simulate(cfg); });

    CLI::App* mp = app.add_subcommand("compare", "tabulate q for the three methods");
    add_search_opts(mp);
    mp->add_option("--betas", cfg.betas_text, "comma list of beta values")->required();
    mp->add_option("--eps-list", cfg.eps_list_text, "comma list of accuracies")->required();
    mp->add_option("--q-max-linear", cfg.q_max_linear,
                   "separate ceiling for the linear baseline");
    mp->add_option("--output", cfg.output, "result path (default compare.csv)");
    mp->callback([&] { rc = cmd_compare(cfg); });

    CLI::App* vp = app.add_subcommand("verify", "re-check a pulse file against a series");
    vp->add_option("--pulses", cfg.pulses_input, "pulses JSON file")->required();
    vp->add_option("--series", cfg.series_input, "series JSON file")->required();
    vp->add_option("--grid-points", cfg.grid_points, "verification grid size");
    vp->add_option("--tol", cfg.tol, "tolerance (default 1e-8)");
    vp->callback([&] { rc = cmd_verify(cfg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const fqsp::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
