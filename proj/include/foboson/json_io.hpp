#pragma once

// JSON encodings of the library's values.
//   complex        [re, im]
//   rational       "p/q" (or "p")
//   chart          {"tau":[a,b], "points":[[re,im],...], "values":[[re,im],...]}
//   chain          {"dims":[...], "maps":[[["p/q",...],...],...]}
//   exact check    {"check": name, "residual": "0", "pass": bool}
//   numeric check  {"maxResidual": x, "tolerance": t, "pass": bool}

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "foboson/arith.hpp"
#include "foboson/bracket.hpp"
#include "foboson/dgchain.hpp"
#include "foboson/elliptic.hpp"

namespace foboson::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json integer(const Integer& z) {
    if (z <= std::numeric_limits<std::int64_t>::max() && z >= std::numeric_limits<std::int64_t>::min()) {
        return z.convert_to<std::int64_t>();
    }
    return z.str();
}

inline json integers(const std::vector<Integer>& zs) {
    json out = json::array();
    for (const auto& z : zs) out.push_back(integer(z));
    return out;
}

inline json blocks(const PartitionBlocks& part) { return part.blocks; }

inline json complex(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw domain_error("complex numbers must be [re, im] arrays, got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

/// Full report for one (n, k) pair.
inline json arith_report(const ChainInvariants& inv) {
    json slopes = json::array();
    for (const auto& s : inv.slopes) slopes.push_back(to_string(s));
    return json{
        {"n", integer(inv.n)},
        {"k", integer(inv.k)},
        {"expansion", integers(inv.expansion)},
        {"nconv", integers(inv.nconv)},
        {"kconv", integers(inv.kconv)},
        {"subranks", integers(inv.subranks)},
        {"subdegs", integers(inv.subdegs)},
        {"slopes", slopes},
        {"tauBlocks", blocks(tau_partition(inv.expansion))},
        {"slopeBlocks", blocks(slope_classes(inv))},
        {"dimEnd", integer(dim_end(inv))},
        {"detLineDegrees", integers(det_line_degrees(inv))},
        {"lambdaDegrees", integers(lambda_degrees(inv))},
        {"notes", json::array({
            "lambdaDegrees[j-1] = chi(v_{j-1}, v_{j+1}) with v_i = (k(i), n(i)) and v_{p+1} = (-1, 0); it equals n_{p-j+1}",
            "detLineDegrees adds 1 at j = 1 and j = p and 2 in between; for p = 1 the single degree is n",
            "tauBlocks joins i and i+1 when n_{i+1} = 2; slopeBlocks joins equal consecutive slopes and is the mirror image i -> p-i of tauBlocks",
        })},
    };
}

inline json image_report(const ImageDescriptor& img) {
    return json{{"blockSizes", img.block_sizes},
                {"ambientPower", img.ambient_power},
                {"fiberDimension", img.fiber_dimension},
                {"quotientLabel", img.quotient_label}};
}

inline json chart_to_json(const BosonChart& chart, const EllipticContext& ctx) {
    json pts = json::array(), vals = json::array();
    for (auto p : chart.points) pts.push_back(complex(p));
    for (auto v : chart.values) vals.push_back(complex(v));
    return json{{"tau", complex(ctx.tau())}, {"points", pts}, {"values", vals}};
}

struct ChartInput {
    Complex tau;
    BosonChart chart;
};

inline ChartInput chart_from_json(const json& j) {
    if (!j.is_object() || !j.contains("tau") || !j.contains("points") || !j.contains("values")) {
        throw domain_error("chart JSON needs \"tau\", \"points\" and \"values\"");
    }
    ChartInput out{complex_from(j.at("tau")), {}};
    for (const auto& p : j.at("points")) out.chart.points.push_back(complex_from(p));
    for (const auto& v : j.at("values")) out.chart.values.push_back(complex_from(v));
    return out;
}

inline json bivector_to_json(const BivectorMatrix& pi) {
    json order = json::array(), rows = json::array();
    for (const auto& c : pi.order) order.push_back(c.name());
    for (std::size_t r = 0; r < pi.entries.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < pi.entries.cols(); ++c) row.push_back(complex(pi.entries(r, c)));
        rows.push_back(row);
    }
    return json{{"coordinateOrder", order}, {"matrix", rows}};
}

inline json chain_to_json(const FiniteChain& chain) {
    json maps = json::array();
    for (const auto& d : chain.maps) {
        json rows = json::array();
        for (std::size_t r = 0; r < d.rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < d.cols(); ++c) row.push_back(to_string(d(r, c)));
            rows.push_back(row);
        }
        maps.push_back(rows);
    }
    return json{{"dims", chain.dims}, {"maps", maps}};
}

inline FiniteChain chain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("maps")) throw domain_error("chain JSON needs \"dims\" and \"maps\"");
    FiniteChain chain;
    for (const auto& d : j.at("dims")) {
        if (!d.is_number_integer() || d.get<long long>() <= 0) throw shape_error("dims must be positive integers");
        chain.dims.push_back(d.get<std::size_t>());
    }
    for (const auto& m : j.at("maps")) {
        if (!m.is_array() || m.empty() || !m[0].is_array()) throw shape_error("each map must be a nonempty array of rows");
        RationalMatrix mat(m.size(), m[0].size());
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (!m[r].is_array() || m[r].size() != mat.cols()) throw shape_error("ragged map rows");
            for (std::size_t c = 0; c < mat.cols(); ++c) {
                const auto& e = m[r][c];
                try {
                    mat(r, c) = e.is_string() ? parse_rational(e.get<std::string>())
                                              : e.is_number_integer() ? Rational(e.get<long long>())
                                                                      : throw std::invalid_argument("entry " + e.dump());
                } catch (const std::invalid_argument& ex) {
                    throw domain_error(std::string("bad rational entry: ") + ex.what());
                }
            }
        }
        chain.maps.push_back(std::move(mat));
    }
    validate(chain);
    return chain;
}

inline json exact_check(const ExactCheck& c) {
    json parts = json::object();
    for (const auto& [name, r] : c.parts) parts[name] = to_string(r);
    return json{{"check", c.check}, {"residual", to_string(c.residual())}, {"pass", c.pass()}, {"parts", parts}};
}

inline json numeric_check(double max_residual, double tolerance) {
    return json{{"maxResidual", max_residual}, {"tolerance", tolerance}, {"pass", max_residual < tolerance}};
}

}  // namespace foboson::io
