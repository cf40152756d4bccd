#pragma once

// The bosonization Poisson bracket in the chart (u_1..u_n, v_2..v_n), where
// u_i are lattice coordinates of the points and v_j = log(y_j / y_1):
//
//   {u_a, u_b} = 0
//   {v_j, u_k} = delta_{jk} - delta_{1k}
//   {v_j, v_k} = 2[zeta(u_1 - u_k) + zeta(u_k - u_j) + zeta(u_j - u_1)]
//
// Pi depends on u only, so every Jacobiator reduces to u-derivatives.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "foboson/elliptic.hpp"
#include "foboson/errors.hpp"
#include "foboson/matrix.hpp"

namespace foboson {

using ComplexMatrix = Matrix<Complex>;

struct BosonChart {
    std::vector<Complex> points;  // u_1 .. u_n
    std::vector<Complex> values;  // y_1 .. y_n

    std::size_t size() const noexcept { return points.size(); }
};

/// A coordinate of the chart: u_index or v_index, 1-based as in the formulas.
struct Coord {
    enum class Kind { u, v };
    Kind kind;
    std::size_t index;

    static Coord u(std::size_t i) { return {Kind::u, i}; }
    static Coord v(std::size_t i) { return {Kind::v, i}; }

    std::string name() const { return (kind == Kind::u ? "u" : "v") + std::to_string(index); }
    friend bool operator==(const Coord&, const Coord&) = default;
};

/// Position of a coordinate in the order (u_1..u_n, v_2..v_n).
inline std::size_t coordinate_position(const Coord& c, std::size_t n) {
    if (c.kind == Coord::Kind::u) {
        if (c.index < 1 || c.index > n) throw domain_error("no coordinate " + c.name());
        return c.index - 1;
    }
    if (c.index < 2 || c.index > n) throw domain_error("no coordinate " + c.name());
    return n + c.index - 2;
}

inline std::vector<Coord> coordinate_order(std::size_t n) {
    std::vector<Coord> order;
    for (std::size_t i = 1; i <= n; ++i) order.push_back(Coord::u(i));
    for (std::size_t j = 2; j <= n; ++j) order.push_back(Coord::v(j));
    return order;
}

struct BivectorMatrix {
    std::vector<Coord> order;
    ComplexMatrix entries;  // entries(a, b) = {z_a, z_b}

    std::size_t dimension() const noexcept { return order.size(); }
};

/// Rejects charts with fewer than two points, coincident points (modulo the
/// lattice) or vanishing values.
inline void validate(const BosonChart& chart, const EllipticContext& ctx) {
    const std::size_t n = chart.size();
    if (n < 2) throw domain_error("chart needs at least two points");
    if (chart.values.size() != n) throw domain_error("chart has " + std::to_string(n) + " points but " + std::to_string(chart.values.size()) + " values");
    for (std::size_t i = 0; i < n; ++i) {
        const Complex y = chart.values[i];
        if (!std::isfinite(y.real()) || !std::isfinite(y.imag()) || std::abs(y) == 0.0) {
            throw domain_error("value y_" + std::to_string(i + 1) + " must be finite and nonzero");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dist = lattice_distance(reduce(chart.points[i] - chart.points[j], ctx).z0, ctx);
            if (dist < ctx.min_separation()) {
                throw domain_error("points u_" + std::to_string(i + 1) + " and u_" + std::to_string(j + 1) +
                                   " coincide modulo the lattice (distance " + std::to_string(dist) + ")");
            }
        }
    }
}

namespace detail {

inline std::size_t vpos(std::size_t j, std::size_t n) { return n + j - 2; }

// Table of f(u_a - u_b) over ordered pairs a != b (0-based).
template <class F>
std::vector<std::vector<Complex>> pair_table(const BosonChart& chart, F f) {
    const std::size_t n = chart.size();
    std::vector<std::vector<Complex>> t(n, std::vector<Complex>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b) t[a][b] = f(chart.points[a] - chart.points[b]);
    return t;
}

}  // namespace detail

inline BivectorMatrix bracket_matrix(const BosonChart& chart, const EllipticContext& ctx) {
    validate(chart, ctx);
    const std::size_t n = chart.size();
    BivectorMatrix pi{coordinate_order(n), ComplexMatrix(2 * n - 1, 2 * n - 1)};
    auto& m = pi.entries;

    for (std::size_t j = 2; j <= n; ++j) {
        for (std::size_t k = 1; k <= n; ++k) {
            const double val = double(j == k) - double(k == 1);
            m(detail::vpos(j, n), k - 1) = val;
            m(k - 1, detail::vpos(j, n)) = 0.0 - val;
        }
    }
    const auto& u = chart.points;
    for (std::size_t j = 2; j <= n; ++j) {
        for (std::size_t k = j + 1; k <= n; ++k) {
            const Complex c = cyclic_coeff(u[0] - u[k - 1], u[k - 1] - u[j - 1], u[j - 1] - u[0], ctx);
            m(detail::vpos(j, n), detail::vpos(k, n)) = c;
            m(detail::vpos(k, n), detail::vpos(j, n)) = -c;
        }
    }
    return pi;
}

/// Derivatives of Pi with respect to u_1..u_n (one matrix per point).
/// Derivatives in v vanish identically and are not stored.
using BracketGradient = std::vector<ComplexMatrix>;

inline BracketGradient bracket_gradient(const BosonChart& chart, const EllipticContext& ctx) {
    validate(chart, ctx);
    const std::size_t n = chart.size();
    const auto zp = detail::pair_table(chart, [&](Complex z) { return zeta_d1(z, ctx); });
    BracketGradient grad(n, ComplexMatrix(2 * n - 1, 2 * n - 1));
    auto delta = [](std::size_t a, std::size_t b) { return double(a == b); };
    for (std::size_t j = 2; j <= n; ++j) {
        for (std::size_t k = j + 1; k <= n; ++k) {
            const std::size_t a = detail::vpos(j, n), b = detail::vpos(k, n);
            for (std::size_t mm = 1; mm <= n; ++mm) {
                const Complex d = 2.0 * (zp[0][k - 1] * (delta(mm, 1) - delta(mm, k)) +
                                         zp[k - 1][j - 1] * (delta(mm, k) - delta(mm, j)) +
                                         zp[j - 1][0] * (delta(mm, j) - delta(mm, 1)));
                grad[mm - 1](a, b) = d;
                grad[mm - 1](b, a) = -d;
            }
        }
    }
    return grad;
}

/// Same derivatives by central differences of bracket_matrix with a real step.
inline BracketGradient bracket_gradient_fd(const BosonChart& chart, const EllipticContext& ctx, double step) {
    if (!(step >= 1e-6 && step <= 1e-3)) throw domain_error("finite-difference step must lie in [1e-6, 1e-3]");
    validate(chart, ctx);
    BracketGradient grad;
    for (std::size_t mm = 0; mm < chart.size(); ++mm) {
        BosonChart plus = chart, minus = chart;
        plus.points[mm] += step;
        minus.points[mm] -= step;
        grad.push_back((bracket_matrix(plus, ctx).entries - bracket_matrix(minus, ctx).entries) * Complex(1.0 / (2 * step)));
    }
    return grad;
}

/// J(a,b,c) = sum_d [Pi_{da} d_d Pi_{bc} + Pi_{db} d_d Pi_{ca} + Pi_{dc} d_d Pi_{ab}],
/// with d running over the u-coordinates (the only ones Pi depends on).
inline Complex contract_jacobiator(const BivectorMatrix& pi, const BracketGradient& grad, std::size_t a, std::size_t b, std::size_t c) {
    Complex sum{};
    const auto& p = pi.entries;
    for (std::size_t d = 0; d < grad.size(); ++d) {
        const auto& g = grad[d];
        sum += p(d, a) * g(b, c) + p(d, b) * g(c, a) + p(d, c) * g(a, b);
    }
    return sum;
}

namespace detail {

inline std::array<std::size_t, 3> triple_positions(const std::array<Coord, 3>& t, std::size_t n) {
    std::array<std::size_t, 3> pos{};
    for (int i = 0; i < 3; ++i) pos[i] = coordinate_position(t[i], n);
    if (pos[0] == pos[1] || pos[1] == pos[2] || pos[0] == pos[2]) throw domain_error("Jacobiator labels must be distinct");
    return pos;
}

}  // namespace detail

inline Complex jacobiator(const BosonChart& chart, const std::array<Coord, 3>& triple, const EllipticContext& ctx) {
    const auto pos = detail::triple_positions(triple, chart.size());
    return contract_jacobiator(bracket_matrix(chart, ctx), bracket_gradient(chart, ctx), pos[0], pos[1], pos[2]);
}

inline Complex jacobiator_fd(const BosonChart& chart, const std::array<Coord, 3>& triple, const EllipticContext& ctx, double step) {
    const auto pos = detail::triple_positions(triple, chart.size());
    return contract_jacobiator(bracket_matrix(chart, ctx), bracket_gradient_fd(chart, ctx, step), pos[0], pos[1], pos[2]);
}

/// Largest |zeta'(u_a - u_b)| over the chart; the natural scale of the
/// Jacobiator, floored at 1.
inline double jacobiator_scale(const BosonChart& chart, const EllipticContext& ctx) {
    double scale = 1.0;
    for (std::size_t a = 0; a < chart.size(); ++a)
        for (std::size_t b = 0; b < chart.size(); ++b)
            if (a != b) scale = std::max(scale, std::abs(zeta_d1(chart.points[a] - chart.points[b], ctx)));
    return scale;
}

struct JacobiSummary {
    double max_analytic = 0;     // max |J| over all triples
    double max_fd = 0;           // same, finite-difference route
    double max_disagreement = 0; // max |J - J_fd|
    double scale = 1;            // jacobiator_scale
    std::size_t triples = 0;
};

/// Jacobiator over every triple of distinct coordinates, by both routes.
/// Pass step = 0 to skip the finite-difference route.
inline JacobiSummary jacobi_summary(const BosonChart& chart, const EllipticContext& ctx, double step) {
    const auto pi = bracket_matrix(chart, ctx);
    const auto grad = bracket_gradient(chart, ctx);
    BracketGradient grad_fd;
    if (step > 0) grad_fd = bracket_gradient_fd(chart, ctx, step);
    JacobiSummary s;
    s.scale = jacobiator_scale(chart, ctx);
    const std::size_t dim = pi.dimension();
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = a + 1; b < dim; ++b)
            for (std::size_t c = b + 1; c < dim; ++c) {
                const Complex j = contract_jacobiator(pi, grad, a, b, c);
                s.max_analytic = std::max(s.max_analytic, std::abs(j));
                if (step > 0) {
                    const Complex jf = contract_jacobiator(pi, grad_fd, a, b, c);
                    s.max_fd = std::max(s.max_fd, std::abs(jf));
                    s.max_disagreement = std::max(s.max_disagreement, std::abs(j - jf));
                }
                ++s.triples;
            }
    return s;
}

struct PrimeBracketResiduals {
    double max_vv = 0;  // max |{w_j, w_k}|
    double max_vu = 0;  // max |{w_j, u_k} - (delta_jk - delta_1k)|
};

/// Brackets of w_j = v_j + f_j(u) with
///   f_j = sum_{m != j} log theta(u_m - u_j) - sum_{m != 1} log theta(u_m - u_1),
/// which are the logarithms of the ratios y'_j / y'_1 after the change of
/// variables y'_i = y_i prod_{m != i} theta(u_m - u_i). The derivatives of
/// f are sums of zeta values, so no logarithm is ever evaluated.
inline PrimeBracketResiduals prime_bracket_check(const BosonChart& chart, const EllipticContext& ctx) {
    const auto pi = bracket_matrix(chart, ctx);
    const std::size_t n = chart.size();
    const auto z = detail::pair_table(chart, [&](Complex w) { return zeta(w, ctx); });

    // df[k][m] = d f_k / d u_m, 0-based m, k in 1..n-1 (k = 0 unused).
    std::vector<std::vector<Complex>> df(n, std::vector<Complex>(n));
    auto log_theta_sum_grad = [&](std::size_t base, std::size_t m) {
        // d/du_m of sum_{m' != base} log theta(u_{m'} - u_base)
        if (m != base) return z[m][base];
        Complex s{};
        for (std::size_t mp = 0; mp < n; ++mp)
            if (mp != base) s -= z[mp][base];
        return s;
    };
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) df[k][m] = log_theta_sum_grad(k, m) - log_theta_sum_grad(0, m);

    // {v_j, f_k(u)} = sum_m d_m f_k * {v_j, u_m} = d_j f_k - d_1 f_k
    auto v_on_f = [&](std::size_t j, std::size_t k) { return df[k][j] - df[k][0]; };

    PrimeBracketResiduals r;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            const Complex vv = pi.entries(detail::vpos(j + 1, n), detail::vpos(k + 1, n));
            const Complex w = vv + v_on_f(j, k) - v_on_f(k, j);
            r.max_vv = std::max(r.max_vv, std::abs(w));
        }
        for (std::size_t k = 0; k < n; ++k) {
            // f depends on u only, so {w_j, u_k} = {v_j, u_k}.
            const Complex wu = pi.entries(detail::vpos(j + 1, n), k);
            r.max_vu = std::max(r.max_vu, std::abs(wu - (double(j == k) - double(k == 0))));
        }
    }
    return r;
}

/// max over points i and shifts s of ||Pi(u_i -> u_i + s) - Pi||_inf.
inline double lattice_invariance_check(const BosonChart& chart, const EllipticContext& ctx, const std::vector<Complex>& shifts) {
    const auto base = bracket_matrix(chart, ctx).entries;
    double worst = 0;
    for (std::size_t i = 0; i < chart.size(); ++i) {
        for (const Complex s : shifts) {
            BosonChart moved = chart;
            moved.points[i] += s;
            const auto diff = bracket_matrix(moved, ctx).entries - base;
            for (std::size_t r = 0; r < diff.rows(); ++r)
                for (std::size_t c = 0; c < diff.cols(); ++c) worst = std::max(worst, std::abs(diff(r, c)));
        }
    }
    return worst;
}

inline double lattice_invariance_check(const BosonChart& chart, const EllipticContext& ctx) {
    return lattice_invariance_check(chart, ctx, {Complex(1, 0), ctx.tau()});
}

/// max |Pi + Pi^T| entry.
inline double antisymmetry_residual(const BivectorMatrix& pi) {
    double worst = 0;
    const auto& m = pi.entries;
    for (std::size_t a = 0; a < m.rows(); ++a)
        for (std::size_t b = 0; b < m.cols(); ++b) worst = std::max(worst, std::abs(m(a, b) + m(b, a)));
    return worst;
}

}  // namespace foboson
