#include "fqsp/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace fqsp {

using nlohmann::json;

namespace {

json complex_to_json(const cplx& c) { return json::array({c.real(), c.imag()}); }

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("expected a [re, im] pair");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

json parse(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::invalid_argument(std::string(what) + ": malformed JSON");
    return j;
}

json series_to_tree(const FourierSeries& s) {
    json coeffs = json::array();
    for (const cplx& c : s.coefficients) coeffs.push_back(complex_to_json(c));
    return json{{"half_order", s.half_order}, {"coefficients", std::move(coeffs)}};
}

FourierSeries series_from_tree(const json& j) {
    try {
        FourierSeries s(j.at("half_order").get<int>());
        const json& coeffs = j.at("coefficients");
        if (!coeffs.is_array() || coeffs.size() != s.coefficients.size())
            throw std::invalid_argument("series: coefficient count does not match half_order");
        for (size_t i = 0; i < s.coefficients.size(); ++i)
            s.coefficients[i] = complex_from_json(coeffs[i]);
        if (!s.valid()) throw std::invalid_argument("series: non-finite coefficients");
        return s;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("series: ") + e.what());
    }
}

json matrix_to_tree(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

Eigen::MatrixXcd matrix_from_tree(const json& j) {
    try {
        const Eigen::Index d = j.at("dim").get<Eigen::Index>();
        const json& entries = j.at("entries");
        if (d < 1 || !entries.is_array() || static_cast<Eigen::Index>(entries.size()) != d)
            throw std::invalid_argument("matrix: dim does not match entries");
        Eigen::MatrixXcd m(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const json& row = entries[static_cast<size_t>(i)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
                throw std::invalid_argument("matrix: ragged row");
            for (Eigen::Index k = 0; k < d; ++k)
                m(i, k) = complex_from_json(row[static_cast<size_t>(k)]);
        }
        return m;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("matrix: ") + e.what());
    }
}

}  // namespace

std::string method_name(ApproxMethod m) {
    switch (m) {
        case ApproxMethod::taylor_fourier: return "taylor_fourier";
        case ApproxMethod::analytic_extension: return "analytic_extension";
        case ApproxMethod::linear_extension: return "linear_extension";
    }
    throw std::invalid_argument("method_name: unknown method");
}

ApproxMethod method_from_name(const std::string& name) {
    if (name == "taylor_fourier") return ApproxMethod::taylor_fourier;
    if (name == "analytic_extension") return ApproxMethod::analytic_extension;
    if (name == "linear_extension") return ApproxMethod::linear_extension;
    throw std::invalid_argument("unknown method name: " + name);
}

std::string series_to_json(const FourierSeries& s) {
    return series_to_tree(s).dump(2) + "\n";
}

FourierSeries series_from_json(const std::string& text) {
    return series_from_tree(parse(text, "series"));
}

std::string approx_to_json(const ApproxResult& r) {
    json j{{"method", method_name(r.method)},
           {"q", r.q},
           {"alpha", r.alpha},
           {"t", r.t},
           {"eps_target", r.eps_target},
           {"eps_measured", r.eps_measured},
           {"series", series_to_tree(r.series)}};
    j["delta"] = std::isnan(r.delta) ? json(nullptr) : json(r.delta);
    return j.dump(2) + "\n";
}

ApproxResult approx_from_json(const std::string& text) {
    const json j = parse(text, "approx result");
    try {
        ApproxResult r;
        r.method = method_from_name(j.at("method").get<std::string>());
        r.q = j.at("q").get<int>();
        r.alpha = j.at("alpha").get<double>();
        r.t = j.at("t").get<double>();
        r.eps_target = j.at("eps_target").get<double>();
        r.eps_measured = j.at("eps_measured").get<double>();
        r.series = series_from_tree(j.at("series"));
        const json& d = j.at("delta");
        r.delta = d.is_null() ? std::numeric_limits<double>::quiet_NaN() : d.get<double>();
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("approx result: ") + e.what());
    }
}

std::string pulses_to_json(const PulseSequence& p) {
    json xis = json::array();
    for (const GateAngles& xi : p.xis)
        xis.push_back(json{{"zeta", xi.zeta}, {"eta", xi.eta}, {"phi", xi.phi}, {"kappa", xi.kappa}});
    const json j{{"q", p.q()}, {"omegas", p.omegas}, {"xis", std::move(xis)}};
    return j.dump(2) + "\n";
}

PulseSequence pulses_from_json(const std::string& text) {
    const json j = parse(text, "pulses");
    try {
        PulseSequence p;
        p.omegas = j.at("omegas").get<std::vector<double>>();
        for (const json& x : j.at("xis"))
            p.xis.push_back(GateAngles{x.at("zeta").get<double>(), x.at("eta").get<double>(),
                                       x.at("phi").get<double>(), x.at("kappa").get<double>()});
        if (p.omegas.size() != p.xis.size() || p.omegas.empty())
            throw std::invalid_argument("pulses: omegas/xis size mismatch");
        if (j.at("q").get<int>() != p.q())
            throw std::invalid_argument("pulses: q does not match list length");
        return p;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("pulses: ") + e.what());
    }
}

std::string matrix_to_json(const Eigen::MatrixXcd& m) {
    return matrix_to_tree(m).dump(2) + "\n";
}

Eigen::MatrixXcd matrix_from_json(const std::string& text) {
    return matrix_from_tree(parse(text, "matrix"));
}

std::string block_result_to_json(const BlockEncodingResult& r) {
    const json j{{"q", r.q},
                 {"alpha", r.alpha},
                 {"t", r.t},
                 {"Lambda", r.Lambda},
                 {"err_vs_series", r.err_vs_series},
                 {"err_vs_target", r.err_vs_target},
                 {"block", matrix_to_tree(r.block)}};
    return j.dump(2) + "\n";
}

BlockEncodingResult block_result_from_json(const std::string& text) {
    const json j = parse(text, "block result");
    try {
        BlockEncodingResult r;
        r.q = j.at("q").get<int>();
        r.alpha = j.at("alpha").get<double>();
        r.t = j.at("t").get<double>();
        r.Lambda = j.at("Lambda").get<double>();
        r.err_vs_series = j.at("err_vs_series").get<double>();
        r.err_vs_target = j.at("err_vs_target").get<double>();
        r.block = matrix_from_tree(j.at("block"));
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("block result: ") + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
    if (!out.good()) throw std::invalid_argument("write failed: " + path);
}

}  // namespace fqsp
