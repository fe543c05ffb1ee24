#include "potapov/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace potapov {

namespace {

using nlohmann::json;

json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_to_json(v(i)));
    }
    return out;
}

json network_json(const DelayNetwork& net) {
    json doc;
    doc["n"] = net.internal_size();
    doc["ports"] = net.port_count();
    doc["m1"] = matrix_to_json(net.m1());
    doc["m2"] = matrix_to_json(net.m2());
    doc["m3"] = matrix_to_json(net.m3());
    doc["m4"] = matrix_to_json(net.m4());
    doc["delays"] = net.delays();
    return doc;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedInput, std::string("invalid JSON: ") + e.what());
    }
}

const json& require(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) {
        throw Error(ErrorKind::MalformedInput, std::string("missing key '") + key + "'");
    }
    return doc.at(key);
}

Complex complex_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorKind::MalformedInput, std::string(what) + " entries must be [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols, const char* what) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
        throw Error(ErrorKind::MalformedInput, std::string(what) + " must have " + std::to_string(rows) + " rows");
    }
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw Error(ErrorKind::MalformedInput,
                        std::string(what) + " rows must have " + std::to_string(cols) + " entries");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], what);
        }
    }
    return m;
}

Eigen::Index size_from_json(const json& doc, const char* key, long minimum) {
    const json& j = require(doc, key);
    if (!j.is_number_integer() || j.get<long>() < minimum) {
        throw Error(ErrorKind::MalformedInput, std::string("'") + key + "' must be an integer >= " +
                                                   std::to_string(minimum));
    }
    return static_cast<Eigen::Index>(j.get<long>());
}

}  // namespace

std::string network_to_json(const DelayNetwork& net) {
    return network_json(net).dump(2);
}

std::string roots_to_json(const RootSet& poles) {
    json doc;
    doc["region"] = {{"re_min", poles.region.re_min},
                     {"re_max", poles.region.re_max},
                     {"im_min", poles.region.im_min},
                     {"im_max", poles.region.im_max}};
    json p = json::array();
    json residuals = json::array();
    json zeros = json::array();
    for (const Root& r : poles.roots) {
        p.push_back(complex_to_json(r.location));
        residuals.push_back(r.residual);
    }
    for (const Root& r : zeros_from_poles(poles).roots) {
        zeros.push_back(complex_to_json(r.location));
    }
    doc["count"] = poles.roots.size();
    doc["poles"] = std::move(p);
    doc["residuals"] = std::move(residuals);
    doc["zeros"] = std::move(zeros);
    doc["warnings"] = poles.warnings;
    return doc.dump(2);
}

std::string product_to_json(const PotapovProduct& prod) {
    json doc;
    doc["ports"] = prod.port_count();
    doc["u"] = matrix_to_json(prod.u);
    json factors = json::array();
    for (const BlaschkeFactor& f : prod.factors) {
        factors.push_back({{"pole", complex_to_json(f.pole)}, {"v", vector_to_json(f.v)}});
    }
    doc["factors"] = std::move(factors);
    return doc.dump(2);
}

PotapovProduct parse_product(std::string_view text) {
    const json doc = parse_json(text);
    const Eigen::Index ports = size_from_json(doc, "ports", 1);
    PotapovProduct prod;
    prod.u = matrix_from_json(require(doc, "u"), ports, ports, "u");
    const json& factors = require(doc, "factors");
    if (!factors.is_array()) {
        throw Error(ErrorKind::MalformedInput, "'factors' must be an array");
    }
    for (const json& f : factors) {
        const Complex pole = complex_from_json(require(f, "pole"), "pole");
        const CMatrix v = matrix_from_json(json::array({require(f, "v")}), 1, ports, "v");
        prod.factors.emplace_back(pole, CVector(v.row(0).transpose()));
    }
    return prod;
}

std::string statespace_to_json(const StateSpace& ss) {
    json doc;
    doc["modes"] = ss.modes();
    doc["ports"] = ss.ports();
    doc["a"] = matrix_to_json(ss.a);
    doc["b"] = matrix_to_json(ss.b);
    doc["c"] = matrix_to_json(ss.c);
    doc["d"] = matrix_to_json(ss.d);
    return doc.dump(2);
}

StateSpace parse_statespace(std::string_view text) {
    const json doc = parse_json(text);
    const Eigen::Index m = size_from_json(doc, "modes", 0);
    const Eigen::Index n = size_from_json(doc, "ports", 1);
    StateSpace ss;
    ss.a = matrix_from_json(require(doc, "a"), m, m, "a");
    ss.b = matrix_from_json(require(doc, "b"), m, n, "b");
    ss.c = matrix_from_json(require(doc, "c"), n, m, "c");
    ss.d = matrix_from_json(require(doc, "d"), n, n, "d");
    return ss;
}

std::string separation_to_json(const SeparationResult& sep) {
    json doc;
    doc["core"] = network_json(sep.core);
    json stages = json::array();
    for (const FeedforwardStage& s : sep.feedforward.stages) {
        stages.push_back({{"gain", matrix_to_json(s.gain)}, {"delays", s.delays}});
    }
    doc["stages"] = std::move(stages);
    return doc.dump(2);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", x);
    return buf;
}

std::string signal_to_csv(const Signal& s) {
    std::ostringstream os;
    os << "t";
    const Eigen::Index n = s.values.empty() ? 0 : s.values.front().size();
    for (Eigen::Index i = 0; i < n; ++i) {
        os << ",re_u_" << i << ",im_u_" << i;
    }
    os << "\n";
    for (std::size_t k = 0; k < s.t.size(); ++k) {
        os << format_double(s.t[k]);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Complex v = s.values[k](i);
            os << "," << format_double(v.real()) << "," << format_double(v.imag());
        }
        os << "\n";
    }
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::MalformedInput, "cannot open '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace potapov
