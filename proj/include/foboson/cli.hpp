#pragma once

// Command-line front end. Every subcommand writes one JSON report; the exit
// status is 0 iff every check in the run passes, 1 on a library error
// (reported as {"error": kind, "detail": text}) and 2 on a usage error.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "foboson/arith.hpp"
#include "foboson/bracket.hpp"
#include "foboson/dgchain.hpp"
#include "foboson/elliptic.hpp"
#include "foboson/json_io.hpp"
#include "foboson/random.hpp"

namespace foboson::cli {

using nlohmann::json;

inline constexpr double kJacobiTol = 1e-8;          // relative to jacobiator_scale
inline constexpr double kFdStep = 1e-4;
inline constexpr double kFdAgreementTol = 10 * kFdStep * kFdStep;
inline constexpr double kPrimeTol = 1e-9;
inline constexpr double kLatticeTol = 1e-9;
inline constexpr double kAntisymmetryTol = 1e-12;

/// Parses "a+bi", "bi", "i", "a-bi" or "a".
inline Complex parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto number = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size()) throw domain_error("cannot parse complex number '" + raw + "'");
        return v;
    };
    if (s.empty()) throw domain_error("empty complex number");
    if (s.back() != 'i') return {number(s), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, number(s)};
    return {number(s.substr(0, split)), number(s.substr(split))};
}

/// Tolerance for numeric checks: explicit flag, else FOBOSON_TOL, else default.
inline double resolve_tol(std::optional<double> flag, double fallback) {
    if (flag) return *flag;
    if (const char* env = std::getenv("FOBOSON_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw domain_error(std::string("FOBOSON_TOL is not a number: '") + env + "'");
        }
    }
    return fallback;
}

inline json header(const std::string& command) { return json{{"schemaVersion", io::kSchemaVersion}, {"command", command}}; }

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw domain_error("invalid JSON in '" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the report; "pass" decides the exit code.

inline json run_contfrac(long long n, long long k) {
    const auto inv = chain_invariants(n, k);
    json out = header("contfrac");
    out.update(io::arith_report(inv));
    const auto bad = invariant_violations(inv);
    out["violations"] = bad;
    out["pass"] = bad.empty() && dim_end(inv) == inv.n;
    return out;
}

inline json run_dim_end(long long n, long long k) {
    const auto inv = chain_invariants(n, k);
    const Integer d = dim_end(inv);
    json out = header("dim-end");
    out.update({{"n", n}, {"k", k}, {"p", inv.length()}, {"dimEnd", io::integer(d)}, {"pass", d == inv.n}});
    return out;
}

inline json run_degrees(long long n, long long k) {
    const auto inv = chain_invariants(n, k);
    const auto deg = det_line_degrees(inv);
    const std::size_t p = inv.length();
    Integer total = 0, expansion_total = 0;
    for (const auto& x : deg) total += x;
    for (const auto& x : inv.expansion) expansion_total += x;
    const Integer expected = p == 1 ? inv.n : expansion_total + 2 * static_cast<long long>(p) - 2;
    json out = header("degrees");
    out.update({{"n", n},
                {"k", k},
                {"expansion", io::integers(inv.expansion)},
                {"lambdaDegrees", io::integers(lambda_degrees(inv))},
                {"detLineDegrees", io::integers(deg)},
                {"totalDegree", io::integer(total)},
                {"expectedTotal", io::integer(expected)},
                {"notes", json::array({"lambda degrees are chi(v_{j-1}, v_{j+1}) and equal n_{p-j+1}",
                                       "for p = 1 the single degree is n, without an endpoint increment"})},
                {"pass", total == expected}});
    return out;
}

inline json run_image(long long n, long long k) {
    const auto inv = chain_invariants(n, k);
    const auto img = image_descriptor(inv);
    json out = header("image");
    out.update({{"n", n}, {"k", k}, {"expansion", io::integers(inv.expansion)}, {"tauBlocks", io::blocks(tau_partition(inv.expansion))}});
    out.update(io::image_report(img));
    std::size_t total = 0;
    for (auto s : img.block_sizes) total += s;
    out["pass"] = total == img.ambient_power && img.fiber_dimension + 1 == img.ambient_power;
    return out;
}

struct ChartSource {
    Complex tau;
    BosonChart chart;
    std::size_t rejections = 0;
};

inline ChartSource make_chart(const std::string& chart_path, std::size_t n_points, const std::string& tau_text,
                              std::uint64_t seed, std::uint64_t trial) {
    if (!chart_path.empty()) {
        auto in = io::chart_from_json(read_json_file(chart_path));
        return {in.tau, std::move(in.chart), 0};
    }
    const EllipticContext ctx(parse_complex(tau_text));
    auto rng = trial_engine(seed, trial);
    auto rc = random_chart(rng, n_points, ctx, ctx.min_separation());
    return {ctx.tau(), std::move(rc.chart), rc.rejections};
}

inline json run_bracket(const std::string& chart_path, std::size_t n_points, const std::string& tau_text,
                        std::uint64_t seed, bool emit_matrix, std::optional<double> tol) {
    const auto src = make_chart(chart_path, n_points, tau_text, seed, 0);
    const EllipticContext ctx(src.tau);
    const auto pi = bracket_matrix(src.chart, ctx);
    const double lattice_tol = resolve_tol(tol, kLatticeTol);
    const auto anti = io::numeric_check(antisymmetry_residual(pi), resolve_tol(tol, kAntisymmetryTol));
    const auto lattice = io::numeric_check(lattice_invariance_check(src.chart, ctx), lattice_tol);

    json out = header("bracket");
    out["chart"] = io::chart_to_json(src.chart, ctx);
    out["rejections"] = src.rejections;
    out["antisymmetry"] = anti;
    out["latticeInvariance"] = lattice;
    if (emit_matrix) out["bivector"] = io::bivector_to_json(pi);
    out["pass"] = anti["pass"].get<bool>() && lattice["pass"].get<bool>();
    return out;
}

inline json run_jacobi(std::size_t n_points, const std::string& tau_text, std::size_t trials, std::uint64_t seed,
                       std::optional<double> tol) {
    double worst_rel = 0, worst_abs = 0, worst_fd = 0;
    std::size_t rejections = 0, triples = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto src = make_chart("", n_points, tau_text, seed, t);
        const EllipticContext ctx(src.tau);
        const auto s = jacobi_summary(src.chart, ctx, kFdStep);
        worst_rel = std::max(worst_rel, s.max_analytic / s.scale);
        worst_abs = std::max(worst_abs, s.max_analytic);
        worst_fd = std::max(worst_fd, s.max_disagreement);
        rejections += src.rejections;
        triples += s.triples;
    }
    const double tolerance = resolve_tol(tol, kJacobiTol);
    json out = header("jacobi");
    out.update({{"nPoints", n_points}, {"tau", tau_text}, {"trials", trials}, {"seed", seed},
                {"triplesChecked", triples}, {"rejections", rejections},
                {"maxResidual", worst_rel}, {"maxAbsolute", worst_abs}, {"tolerance", tolerance},
                {"fdAgreement", io::numeric_check(worst_fd, kFdAgreementTol)}});
    out["fdAgreement"]["step"] = kFdStep;
    out["pass"] = worst_rel < tolerance && out["fdAgreement"]["pass"].get<bool>();
    return out;
}

inline json run_prime_check(std::size_t n_points, const std::string& tau_text, std::size_t trials, std::uint64_t seed,
                            std::optional<double> tol) {
    double vv = 0, vu = 0;
    std::size_t rejections = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto src = make_chart("", n_points, tau_text, seed, t);
        const EllipticContext ctx(src.tau);
        const auto r = prime_bracket_check(src.chart, ctx);
        vv = std::max(vv, r.max_vv);
        vu = std::max(vu, r.max_vu);
        rejections += src.rejections;
    }
    const double tolerance = resolve_tol(tol, kPrimeTol);
    json out = header("prime-check");
    out.update({{"nPoints", n_points}, {"tau", tau_text}, {"trials", trials}, {"seed", seed}, {"rejections", rejections},
                {"ratioBrackets", io::numeric_check(vv, tolerance)},
                {"pointBrackets", io::numeric_check(vu, tolerance)}});
    out.update(io::numeric_check(std::max(vv, vu), tolerance));
    return out;
}

/// Runs every chain check on `chain`, folding residuals into `worst`.
inline void accumulate_dg_checks(const FiniteChain& chain, std::map<std::string, ExactCheck>& worst) {
    auto fold = [&](ExactCheck c) {
        auto [it, inserted] = worst.try_emplace(c.check, c);
        if (inserted) return;
        for (std::size_t i = 0; i < c.parts.size() && i < it->second.parts.size(); ++i) {
            it->second.parts[i].second = std::max(it->second.parts[i].second, c.parts[i].second);
        }
    };
    fold(chain_map_check(chain));
    fold(adjointness_check(chain));
    ExactCheck trunc{"truncation", {{"all windows", 0}}};
    for (std::size_t a = 0; a <= chain.length(); ++a)
        for (std::size_t b = a; b <= chain.length(); ++b)
            trunc.parts[0].second = std::max(trunc.parts[0].second, truncation_check(chain, a, b).residual());
    fold(trunc);
    if (chain.length() == 2) {
        fold(alt_representative_check(chain));
        fold(homotopy_h_check(chain));
        fold(diag1_check(chain));
    }
}

inline json run_dg_verify(const std::string& chain_path, const std::vector<std::size_t>& dims, std::size_t trials,
                          std::uint64_t seed) {
    std::map<std::string, ExactCheck> worst;
    std::size_t nonzero_composites = 0;
    json out = header("dg-verify");
    if (!chain_path.empty()) {
        const auto chain = io::chain_from_json(read_json_file(chain_path));
        accumulate_dg_checks(chain, worst);
        nonzero_composites += has_nonzero_composite(chain);
        out["dims"] = chain.dims;
        out["trials"] = 1;
    } else {
        if (dims.size() < 2) throw domain_error("--dims needs at least two dimensions");
        for (std::size_t t = 0; t < trials; ++t) {
            auto rng = trial_engine(seed, t);
            const auto chain = random_chain(rng, dims);
            accumulate_dg_checks(chain, worst);
            nonzero_composites += has_nonzero_composite(chain);
        }
        out["dims"] = dims;
        out["trials"] = trials;
        out["seed"] = seed;
    }
    out["chainsWithNonzeroComposite"] = nonzero_composites;
    json checks = json::array();
    bool pass = true;
    static const char* const kOrder[] = {"chain_map", "adjointness", "truncation", "alt_representative", "homotopy_h", "diag1"};
    for (const char* name : kOrder) {
        auto it = worst.find(name);
        if (it == worst.end()) continue;
        checks.push_back(io::exact_check(it->second));
        pass = pass && it->second.pass();
    }
    out["checks"] = checks;
    out["pass"] = pass;
    return out;
}

inline json run_sweep(long long max_n) {
    if (max_n < 2) throw domain_error("--max-n must be at least 2");
    std::size_t pairs = 0;
    std::vector<std::string> failures;
    auto fail = [&](const std::string& s) {
        if (failures.size() < 20) failures.push_back(s);
    };
    std::size_t failure_count = 0;
    for (long long n = 2; n <= max_n; ++n) {
        for (long long k = 1; k < n; ++k) {
            if (std::gcd(n, k) != 1) continue;
            ++pairs;
            const std::string tag = "(" + std::to_string(n) + "," + std::to_string(k) + "): ";
            const auto inv = chain_invariants(n, k);
            std::vector<std::string> bad = invariant_violations(inv);
            if (dim_end(inv) != inv.n) bad.push_back(tag + "dim_end != n");
            if (tau_partition(inv.expansion).sorted_sizes() != slope_classes(inv).sorted_sizes()) {
                bad.push_back(tag + "block sizes of the two partitions differ");
            }
            if (inv.length() >= 2) {
                Integer lhs = 0, rhs = 2 * static_cast<long long>(inv.length()) - 2;
                for (const auto& x : det_line_degrees(inv)) lhs += x;
                for (const auto& x : inv.expansion) rhs += x;
                if (lhs != rhs) bad.push_back(tag + "sum of line degrees mismatch");
            }
            failure_count += bad.size();
            for (const auto& b : bad) fail(b);
        }
    }
    json out = header("sweep");
    out.update({{"maxN", max_n}, {"pairs", pairs}, {"failureCount", failure_count}, {"failures", failures},
                {"pass", failure_count == 0}});
    return out;
}

// ---------------------------------------------------------------------------

inline json error_object(const std::string& kind, const std::string& detail) {
    json out = header("error");
    out.update({{"error", kind}, {"detail", detail}});
    return out;
}

/// Parses `args` (without the program name), runs the subcommand and writes
/// the JSON report to `out` (or to --output). Returns the exit status.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Continued-fraction, elliptic bracket and chain-bivector verification", "foboson"};
    app.require_subcommand(1);

    long long n = 0, k = 0, max_n = 0;
    std::size_t n_points = 0, trials = 1;
    std::uint64_t seed = 0;
    std::string tau_text = "1.0i", output, chart_path, chain_path;
    std::vector<std::size_t> dims;
    bool emit_matrix = false;
    std::optional<double> tol;

    app.add_option("--output", output, "Write the report to this file instead of standard output");
    app.add_option("--tol", tol, "Override the tolerance of numeric checks");

    auto add_pair = [&](CLI::App* sub) {
        sub->add_option("--n", n, "Degree n")->required();
        sub->add_option("--k", k, "Rank k, coprime to n with 0 < k < n")->required();
    };
    auto* contfrac = app.add_subcommand("contfrac", "Continued fraction and all attached invariants");
    add_pair(contfrac);
    auto* dimend = app.add_subcommand("dim-end", "Endomorphism dimension identity");
    add_pair(dimend);
    auto* degrees = app.add_subcommand("degrees", "Determinant line-bundle degrees");
    add_pair(degrees);
    auto* image = app.add_subcommand("image", "Image descriptor of the bosonization map");
    add_pair(image);

    auto* bracket = app.add_subcommand("bracket", "Bracket matrix on one chart");
    bracket->add_option("--n-points", n_points, "Number of points")->check(CLI::Range(2, 64));
    bracket->add_option("--tau", tau_text, "Modular parameter as a+bi");
    bracket->add_option("--seed", seed, "Random seed");
    bracket->add_option("--chart", chart_path, "Read the chart from a JSON file instead")->check(CLI::ExistingFile);
    bracket->add_flag("--emit-matrix", emit_matrix, "Include the bivector matrix in the report");

    auto* jacobi = app.add_subcommand("jacobi", "Jacobi identity on random charts");
    auto* prime = app.add_subcommand("prime-check", "Log-canonical form after rescaling the y variables");
    for (auto* sub : {jacobi, prime}) {
        sub->add_option("--n-points", n_points, "Number of points")->required()->check(CLI::Range(2, 64));
        sub->add_option("--tau", tau_text, "Modular parameter as a+bi");
        sub->add_option("--trials", trials, "Number of random charts");
        sub->add_option("--seed", seed, "Random seed");
    }

    auto* dg = app.add_subcommand("dg-verify", "Exact checks of the chain-level bivector");
    dg->add_option("--dims", dims, "Dimensions of V_0..V_m, comma separated")->delimiter(',')->check(CLI::PositiveNumber);
    dg->add_option("--trials", trials, "Number of random chains");
    dg->add_option("--seed", seed, "Random seed");
    dg->add_option("--chain", chain_path, "Read the chain from a JSON file instead")->check(CLI::ExistingFile);

    auto* sweep = app.add_subcommand("sweep", "Arithmetic identities over all coprime pairs up to --max-n");
    sweep->add_option("--max-n", max_n, "Largest n")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        out << error_object("usage", e.what()).dump(2) << "\n";
        return 2;
    }
    if (bracket->parsed() && chart_path.empty() && n_points == 0) {
        err << "bracket needs --n-points or --chart\n";
        out << error_object("usage", "bracket needs --n-points or --chart").dump(2) << "\n";
        return 2;
    }
    if (dg->parsed() && chain_path.empty() && dims.empty()) {
        err << "dg-verify needs --dims or --chain\n";
        out << error_object("usage", "dg-verify needs --dims or --chain").dump(2) << "\n";
        return 2;
    }

    json report;
    try {
        if (contfrac->parsed()) report = run_contfrac(n, k);
        else if (dimend->parsed()) report = run_dim_end(n, k);
        else if (degrees->parsed()) report = run_degrees(n, k);
        else if (image->parsed()) report = run_image(n, k);
        else if (bracket->parsed()) report = run_bracket(chart_path, n_points, tau_text, seed, emit_matrix, tol);
        else if (jacobi->parsed()) report = run_jacobi(n_points, tau_text, trials, seed, tol);
        else if (prime->parsed()) report = run_prime_check(n_points, tau_text, trials, seed, tol);
        else if (dg->parsed()) report = run_dg_verify(chain_path, dims, trials, seed);
        else report = run_sweep(max_n);
    } catch (const foboson::error& e) {
        out << error_object(e.kind(), e.what()).dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        out << error_object("internal", e.what()).dump(2) << "\n";
        return 1;
    }

    const std::string text = report.dump(2) + "\n";
    if (output.empty()) {
        out << text;
    } else {
        std::ofstream file(output, std::ios::binary);
        if (!file) {
            out << error_object("io", "cannot write '" + output + "'").dump(2) << "\n";
            return 1;
        }
        file << text;
    }
    return report.value("pass", false) ? 0 : 1;
}

}  // namespace foboson::cli
