#pragma once

// Exact verification of the chain-level Poisson bivector on the moduli of
// chains V_0 -> V_1 -> ... -> V_m of finite-dimensional spaces.
//
// Notation: E_ij = Hom(V_i, V_j) is the space of dim V_j x dim V_i matrices.
// The tangent complex is  (+)E_ii --dh--> (+)E_{i,i+1}  and the cotangent
// complex is  (+)E_{i+1,i} --dh_vee--> (+)E_ii.  The bivector is a pair of
// maps (top, bottom) between them, and each check below evaluates one
// identity between compositions of such maps on a basis, returning the
// largest absolute entry of the defect. No identity uses d_{i+1} d_i = 0.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "foboson/errors.hpp"
#include "foboson/matrix.hpp"
#include "foboson/number.hpp"

namespace foboson {

using RationalMatrix = Matrix<Rational>;

struct FiniteChain {
    std::vector<std::size_t> dims;     // dim V_0 .. dim V_m
    std::vector<RationalMatrix> maps;  // d_i : V_i -> V_{i+1}, shape dims[i+1] x dims[i]

    /// Number of arrows m.
    std::size_t length() const noexcept { return maps.size(); }
    const RationalMatrix& d(std::size_t i) const { return maps.at(i); }
};

inline void validate(const FiniteChain& chain) {
    if (chain.dims.empty()) throw shape_error("chain has no spaces");
    if (chain.maps.size() + 1 != chain.dims.size()) {
        throw shape_error("chain with " + std::to_string(chain.dims.size()) + " spaces needs " +
                          std::to_string(chain.dims.size() - 1) + " maps, got " + std::to_string(chain.maps.size()));
    }
    for (auto dim : chain.dims) {
        if (dim == 0) throw shape_error("chain spaces must have positive dimension");
    }
    for (std::size_t i = 0; i < chain.maps.size(); ++i) {
        const auto& d = chain.maps[i];
        if (d.rows() != chain.dims[i + 1] || d.cols() != chain.dims[i]) {
            throw shape_error("d_" + std::to_string(i) + " has shape " + d.shape_string() + ", expected " +
                              std::to_string(chain.dims[i + 1]) + "x" + std::to_string(chain.dims[i]));
        }
    }
}

/// An element a_ij of E_ij = Hom(V_i, V_j).
struct HomElement {
    std::size_t source;
    std::size_t target;
    RationalMatrix map;
};

/// A tuple of hom-elements, one per component of a direct sum.
using HomTuple = std::vector<HomElement>;

inline HomElement zero_hom(const FiniteChain& chain, std::size_t source, std::size_t target) {
    return {source, target, RationalMatrix(chain.dims.at(target), chain.dims.at(source))};
}

/// Index pairs of the three kinds of direct sums.
enum class SumKind {
    diagonal,  // (+)_{i=0..m}   E_ii
    up,        // (+)_{i=0..m-1} E_{i,i+1}
    down       // (+)_{i=0..m-1} E_{i+1,i}
};

inline std::vector<std::pair<std::size_t, std::size_t>> sum_components(const FiniteChain& chain, SumKind kind) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t m = chain.length();
    switch (kind) {
        case SumKind::diagonal:
            for (std::size_t i = 0; i <= m; ++i) out.emplace_back(i, i);
            break;
        case SumKind::up:
            for (std::size_t i = 0; i < m; ++i) out.emplace_back(i, i + 1);
            break;
        case SumKind::down:
            for (std::size_t i = 0; i < m; ++i) out.emplace_back(i + 1, i);
            break;
    }
    return out;
}

inline HomTuple zero_tuple(const FiniteChain& chain, SumKind kind) {
    HomTuple t;
    for (auto [s, tg] : sum_components(chain, kind)) t.push_back(zero_hom(chain, s, tg));
    return t;
}

/// Elementary-matrix basis of a direct sum.
inline std::vector<HomTuple> basis(const FiniteChain& chain, SumKind kind) {
    std::vector<HomTuple> out;
    const auto zero = zero_tuple(chain, kind);
    for (std::size_t c = 0; c < zero.size(); ++c) {
        const auto& z = zero[c].map;
        for (std::size_t r = 0; r < z.rows(); ++r)
            for (std::size_t col = 0; col < z.cols(); ++col) {
                auto t = zero;
                t[c].map = RationalMatrix::unit(z.rows(), z.cols(), r, col);
                out.push_back(std::move(t));
            }
    }
    return out;
}

namespace detail {

inline void require_tuple(const FiniteChain& chain, const HomTuple& t, SumKind kind, const char* what) {
    validate(chain);
    const auto comps = sum_components(chain, kind);
    if (t.size() != comps.size()) {
        throw shape_error(std::string(what) + ": expected " + std::to_string(comps.size()) + " components, got " + std::to_string(t.size()));
    }
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto [s, tg] = comps[c];
        if (t[c].source != s || t[c].target != tg) {
            throw shape_error(std::string(what) + ": component " + std::to_string(c) + " must lie in E_" + std::to_string(s) + std::to_string(tg));
        }
        if (t[c].map.rows() != chain.dims[tg] || t[c].map.cols() != chain.dims[s]) {
            throw shape_error(std::string(what) + ": component " + std::to_string(c) + " has shape " + t[c].map.shape_string());
        }
    }
}

inline void require_two_arrows(const FiniteChain& chain, const char* what) {
    validate(chain);
    if (chain.length() != 2) throw domain_error(std::string(what) + " needs a chain with exactly two arrows");
}

}  // namespace detail

/// (b_ii) -> (d_i b_ii - b_{i+1,i+1} d_i)_i
inline HomTuple dh(const FiniteChain& chain, const HomTuple& b) {
    detail::require_tuple(chain, b, SumKind::diagonal, "dh");
    HomTuple out;
    for (std::size_t i = 0; i < chain.length(); ++i) {
        out.push_back({i, i + 1, chain.d(i) * b[i].map - b[i + 1].map * chain.d(i)});
    }
    return out;
}

/// (a_{i+1,i}) -> (-a_10 d_0, ..., d_{i-1} a_{i,i-1} - a_{i+1,i} d_i, ..., d_{m-1} a_{m,m-1})
inline HomTuple dh_vee(const FiniteChain& chain, const HomTuple& a) {
    detail::require_tuple(chain, a, SumKind::down, "dh_vee");
    const std::size_t m = chain.length();
    HomTuple out = zero_tuple(chain, SumKind::diagonal);
    for (std::size_t i = 0; i < m; ++i) {
        out[i].map -= a[i].map * chain.d(i);
        out[i + 1].map += chain.d(i) * a[i].map;
    }
    return out;
}

/// (a_{i+1,i}) -> (a_10 d_0, d_0 a_10, d_1 a_21, ..., d_{m-1} a_{m,m-1})
inline HomTuple bivector_top(const FiniteChain& chain, const HomTuple& a) {
    detail::require_tuple(chain, a, SumKind::down, "bivector_top");
    HomTuple out = zero_tuple(chain, SumKind::diagonal);
    if (chain.length() == 0) return out;
    out[0].map = a[0].map * chain.d(0);
    for (std::size_t i = 1; i <= chain.length(); ++i) out[i].map = chain.d(i - 1) * a[i - 1].map;
    return out;
}

/// (b_ii) -> (0, d_1 b_11, ..., d_{m-1} b_{m-1,m-1})
inline HomTuple bivector_bottom(const FiniteChain& chain, const HomTuple& b) {
    detail::require_tuple(chain, b, SumKind::diagonal, "bivector_bottom");
    HomTuple out = zero_tuple(chain, SumKind::up);
    for (std::size_t i = 1; i < chain.length(); ++i) out[i].map = chain.d(i) * b[i].map;
    return out;
}

/// Alternative representative for two arrows: (a_10, a_21) -> (a_10 d_0, a_21 d_1, d_1 a_21).
inline HomTuple bivector_top_alt(const FiniteChain& chain, const HomTuple& a) {
    detail::require_two_arrows(chain, "bivector_top_alt");
    detail::require_tuple(chain, a, SumKind::down, "bivector_top_alt");
    HomTuple out = zero_tuple(chain, SumKind::diagonal);
    out[0].map = a[0].map * chain.d(0);
    out[1].map = a[1].map * chain.d(1);
    out[2].map = chain.d(1) * a[1].map;
    return out;
}

/// Alternative representative for two arrows: (b_00, b_11, b_22) -> (b_11 d_0, 0).
inline HomTuple bivector_bottom_alt(const FiniteChain& chain, const HomTuple& b) {
    detail::require_two_arrows(chain, "bivector_bottom_alt");
    detail::require_tuple(chain, b, SumKind::diagonal, "bivector_bottom_alt");
    HomTuple out = zero_tuple(chain, SumKind::up);
    out[0].map = b[1].map * chain.d(0);
    return out;
}

/// Truncation-compatible form of the bivector's top map on mixed complexes:
/// (a_{i+1,i}) -> (d_{i-1} a_{i,i-1} + a_{i+1,i} d_i)_i, i.e. d o ? + ? o d.
inline HomTuple mixed_bivector_top(const FiniteChain& chain, const HomTuple& a) {
    detail::require_tuple(chain, a, SumKind::down, "mixed_bivector_top");
    HomTuple out = zero_tuple(chain, SumKind::diagonal);
    for (std::size_t i = 0; i < chain.length(); ++i) {
        out[i].map += a[i].map * chain.d(i);
        out[i + 1].map += chain.d(i) * a[i].map;
    }
    return out;
}

/// Sub-chain V_a -> ... -> V_b.
inline FiniteChain truncate(const FiniteChain& chain, std::size_t a, std::size_t b) {
    validate(chain);
    if (a > b || b > chain.length()) {
        throw domain_error("truncation window [" + std::to_string(a) + "," + std::to_string(b) + "] outside [0," + std::to_string(chain.length()) + "]");
    }
    FiniteChain out;
    out.dims.assign(chain.dims.begin() + static_cast<std::ptrdiff_t>(a), chain.dims.begin() + static_cast<std::ptrdiff_t>(b) + 1);
    out.maps.assign(chain.maps.begin() + static_cast<std::ptrdiff_t>(a), chain.maps.begin() + static_cast<std::ptrdiff_t>(b));
    return out;
}

// ---------------------------------------------------------------------------
// Residual bookkeeping.

inline Rational max_abs_entry(const RationalMatrix& m) {
    Rational best = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) best = std::max(best, Rational(abs(m(r, c))));
    return best;
}

/// Largest entry of the componentwise difference of two tuples of equal layout.
inline Rational tuple_distance(const HomTuple& x, const HomTuple& y) {
    if (x.size() != y.size()) throw shape_error("tuple lengths differ");
    Rational best = 0;
    for (std::size_t c = 0; c < x.size(); ++c) best = std::max(best, max_abs_entry(x[c].map - y[c].map));
    return best;
}

inline Rational tuple_norm(const HomTuple& x) {
    Rational best = 0;
    for (const auto& h : x) best = std::max(best, max_abs_entry(h.map));
    return best;
}

struct ExactCheck {
    std::string check;
    std::vector<std::pair<std::string, Rational>> parts;  // named sub-identities

    Rational residual() const {
        Rational best = 0;
        for (const auto& [name, r] : parts) best = std::max(best, r);
        return best;
    }
    bool pass() const { return residual() == 0; }
};

/// Maximum over a basis of `kind` of lhs(x) - rhs(x).
inline Rational residual_on_basis(const FiniteChain& chain, SumKind kind,
                                  const std::function<HomTuple(const HomTuple&)>& lhs,
                                  const std::function<HomTuple(const HomTuple&)>& rhs) {
    Rational worst = 0;
    for (const auto& x : basis(chain, kind)) worst = std::max(worst, tuple_distance(lhs(x), rhs(x)));
    return worst;
}

/// bivector_bottom o dh_vee == dh o bivector_top on (+)E_{i+1,i}.
inline ExactCheck chain_map_check(const FiniteChain& chain) {
    validate(chain);
    if (chain.length() < 1) throw domain_error("chain_map_check needs at least one arrow");
    ExactCheck out{"chain_map", {}};
    out.parts.emplace_back("bottom*dh_vee - dh*top", residual_on_basis(
        chain, SumKind::down,
        [&](const HomTuple& a) { return bivector_bottom(chain, dh_vee(chain, a)); },
        [&](const HomTuple& a) { return dh(chain, bivector_top(chain, a)); }));
    return out;
}

/// Projection of (+)E_ii onto its E_11 component; the homotopy between the
/// two representatives.
inline HomTuple project_middle(const FiniteChain& chain, const HomTuple& b) {
    HomTuple out = zero_tuple(chain, SumKind::diagonal);
    out[1].map = b[1].map;
    return out;
}

inline HomTuple add(HomTuple x, const HomTuple& y) {
    if (x.size() != y.size()) throw shape_error("tuple lengths differ");
    for (std::size_t c = 0; c < x.size(); ++c) x[c].map += y[c].map;
    return x;
}

inline HomTuple subtract(HomTuple x, const HomTuple& y) {
    if (x.size() != y.size()) throw shape_error("tuple lengths differ");
    for (std::size_t c = 0; c < x.size(); ++c) x[c].map -= y[c].map;
    return x;
}

/// The primed pair is a chain map, and it differs from (top, bottom) by the
/// homotopy H = projection onto E_11.
inline ExactCheck alt_representative_check(const FiniteChain& chain) {
    detail::require_two_arrows(chain, "alt_representative_check");
    ExactCheck out{"alt_representative", {}};
    out.parts.emplace_back("bottom'*dh_vee - dh*top'", residual_on_basis(
        chain, SumKind::down,
        [&](const HomTuple& a) { return bivector_bottom_alt(chain, dh_vee(chain, a)); },
        [&](const HomTuple& a) { return dh(chain, bivector_top_alt(chain, a)); }));
    out.parts.emplace_back("top - top' - H*dh_vee", residual_on_basis(
        chain, SumKind::down,
        [&](const HomTuple& a) { return subtract(bivector_top(chain, a), bivector_top_alt(chain, a)); },
        [&](const HomTuple& a) { return project_middle(chain, dh_vee(chain, a)); }));
    out.parts.emplace_back("bottom - bottom' - dh*H", residual_on_basis(
        chain, SumKind::diagonal,
        [&](const HomTuple& b) { return subtract(bivector_bottom(chain, b), bivector_bottom_alt(chain, b)); },
        [&](const HomTuple& b) { return dh(chain, project_middle(chain, b)); }));
    return out;
}

// ---------------------------------------------------------------------------
// Product complex of the two one-arrow pieces V_0 -> V_1 and V_1 -> V_2.
// Its degree -1 term is (E_00 + E_11) + (E_11 + E_22), stored as
// (b_00, b_11, b'_11, b_22).

struct ProductTerm {
    RationalMatrix b00, b11, b11p, b22;
};

namespace product {

inline ProductTerm zero(const FiniteChain& c) {
    return {RationalMatrix(c.dims[0], c.dims[0]), RationalMatrix(c.dims[1], c.dims[1]),
            RationalMatrix(c.dims[1], c.dims[1]), RationalMatrix(c.dims[2], c.dims[2])};
}

inline std::vector<ProductTerm> basis(const FiniteChain& c) {
    std::vector<ProductTerm> out;
    const auto z = zero(c);
    for (int slot = 0; slot < 4; ++slot) {
        const RationalMatrix& shape = slot == 0 ? z.b00 : slot == 1 ? z.b11 : slot == 2 ? z.b11p : z.b22;
        for (std::size_t r = 0; r < shape.rows(); ++r)
            for (std::size_t col = 0; col < shape.cols(); ++col) {
                ProductTerm t = z;
                RationalMatrix& target = slot == 0 ? t.b00 : slot == 1 ? t.b11 : slot == 2 ? t.b11p : t.b22;
                target(r, col) = 1;
                out.push_back(std::move(t));
            }
    }
    return out;
}

inline Rational distance(const ProductTerm& x, const ProductTerm& y) {
    return std::max({max_abs_entry(x.b00 - y.b00), max_abs_entry(x.b11 - y.b11),
                     max_abs_entry(x.b11p - y.b11p), max_abs_entry(x.b22 - y.b22)});
}

/// ((a_10 d, d a_10), (a_21 d, d a_21)); both the left vertical map phi and
/// the top differential of the product diagram have this form.
inline ProductTerm phi(const FiniteChain& c, const HomTuple& a) {
    return {a[0].map * c.d(0), c.d(0) * a[0].map, a[1].map * c.d(1), c.d(1) * a[1].map};
}

/// Same shape with the one-arrow cotangent differential (-a d, d a) in each factor.
inline ProductTerm signed_codifferential(const FiniteChain& c, const HomTuple& a) {
    return {-(a[0].map * c.d(0)), c.d(0) * a[0].map, -(a[1].map * c.d(1)), c.d(1) * a[1].map};
}

/// ((b_00, b_11), (b'_11, b_22)) -> (d b_00 - b_11 d, d b'_11 - b_22 d)
inline HomTuple differential(const FiniteChain& c, const ProductTerm& t) {
    return {{0, 1, c.d(0) * t.b00 - t.b11 * c.d(0)}, {1, 2, c.d(1) * t.b11p - t.b22 * c.d(1)}};
}

inline ProductTerm diagonal(const HomTuple& b) { return {b[0].map, b[1].map, b[1].map, b[2].map}; }

inline HomTuple collapse(const ProductTerm& t) { return {{0, 0, t.b00}, {1, 1, t.b11 - t.b11p}, {2, 2, t.b22}}; }

/// ((b_00, b_11), (b'_11, b_22)) -> ((0, 0), (b_11 - b'_11, 0))
inline ProductTerm homotopy(const FiniteChain& c, const ProductTerm& t) {
    ProductTerm out = zero(c);
    out.b11p = t.b11 - t.b11p;
    return out;
}

inline ProductTerm sum(ProductTerm x, const ProductTerm& y) {
    x.b00 += y.b00;
    x.b11 += y.b11;
    x.b11p += y.b11p;
    x.b22 += y.b22;
    return x;
}

}  // namespace product

/// The homotopy h relating the product bivector to the chain bivector:
///   phi + h o codiff = Diagonal o top   and   differential o h = bottom o collapse.
/// `codiff` defaults to the top differential as drawn in the product diagram.
inline ExactCheck homotopy_h_check(
    const FiniteChain& chain,
    const std::function<ProductTerm(const FiniteChain&, const HomTuple&)>& codiff = product::phi) {
    detail::require_two_arrows(chain, "homotopy_h_check");
    ExactCheck out{"homotopy_h", {}};

    Rational first = 0;
    for (const auto& a : basis(chain, SumKind::down)) {
        const auto lhs = product::sum(product::phi(chain, a), product::homotopy(chain, codiff(chain, a)));
        const auto rhs = product::diagonal(bivector_top(chain, a));
        first = std::max(first, product::distance(lhs, rhs));
    }
    out.parts.emplace_back("phi + h*codiff - Delta*top", first);

    Rational second = 0;
    Rational square = 0;
    for (const auto& t : product::basis(chain)) {
        second = std::max(second, tuple_distance(product::differential(chain, product::homotopy(chain, t)),
                                                 bivector_bottom(chain, product::collapse(t))));
    }
    for (const auto& a : basis(chain, SumKind::down)) {
        square = std::max(square, tuple_norm(product::differential(chain, product::phi(chain, a))));
    }
    out.parts.emplace_back("differential*h - bottom*collapse", second);
    out.parts.emplace_back("differential*phi", square);
    return out;
}

/// Compatibility of the bivector with the composition V_0 -> V_2.
/// Left column: a_20 -> (a_20 d_1, d_0 a_20) -> top -> (E_00, E_22) must equal
/// (a_20 d_1 d_0, d_1 d_0 a_20). Right column: (b_00, b_22) -> (b_00, 0, b_22)
/// -> bottom -> (c_01, c_12) -> d_1 c_01 + c_12 d_0 must vanish.
inline ExactCheck diag1_check(const FiniteChain& chain) {
    detail::require_two_arrows(chain, "diag1_check");
    const auto& d0 = chain.d(0);
    const auto& d1 = chain.d(1);
    const RationalMatrix dd = d1 * d0;
    ExactCheck out{"diag1", {}};

    Rational left = 0;
    const std::size_t r0 = chain.dims[0], r2 = chain.dims[2];
    for (std::size_t r = 0; r < r0; ++r)
        for (std::size_t c = 0; c < r2; ++c) {
            const auto a20 = RationalMatrix::unit(r0, r2, r, c);
            const HomTuple mu{{1, 0, a20 * d1}, {2, 1, d0 * a20}};
            const auto top = bivector_top(chain, mu);
            left = std::max({left, max_abs_entry(top[0].map - a20 * dd), max_abs_entry(top[2].map - dd * a20)});
        }
    out.parts.emplace_back("left column - (a20 d^2, d^2 a20)", left);

    Rational right = 0;
    auto push_right = [&](const RationalMatrix& b00, const RationalMatrix& b22) {
        const HomTuple included{{0, 0, b00}, {1, 1, RationalMatrix(chain.dims[1], chain.dims[1])}, {2, 2, b22}};
        const auto c = bivector_bottom(chain, included);
        right = std::max(right, max_abs_entry(d1 * c[0].map + c[1].map * d0));
    };
    const RationalMatrix z00(r0, r0), z22(r2, r2);
    for (std::size_t r = 0; r < r0; ++r)
        for (std::size_t c = 0; c < r0; ++c) push_right(RationalMatrix::unit(r0, r0, r, c), z22);
    for (std::size_t r = 0; r < r2; ++r)
        for (std::size_t c = 0; c < r2; ++c) push_right(z00, RationalMatrix::unit(r2, r2, r, c));
    out.parts.emplace_back("right column", right);
    return out;
}

/// `top_map` applied to the window V_a..V_b agrees with the full chain's map
/// restricted to inputs a_{i,i-1} (a < i <= b) and outputs E_ii (a <= i <= b).
inline Rational truncation_residual(const FiniteChain& chain, std::size_t a, std::size_t b,
                                    const std::function<HomTuple(const FiniteChain&, const HomTuple&)>& top_map) {
    const FiniteChain window = truncate(chain, a, b);
    Rational worst = 0;
    for (const auto& x : basis(window, SumKind::down)) {
        HomTuple full = zero_tuple(chain, SumKind::down);
        for (std::size_t c = 0; c < x.size(); ++c) full[a + c] = {x[c].source + a, x[c].target + a, x[c].map};
        const auto big = top_map(chain, full);
        const auto small = top_map(window, x);
        for (std::size_t i = a; i <= b; ++i) worst = std::max(worst, max_abs_entry(big[i].map - small[i - a].map));
    }
    return worst;
}

inline ExactCheck truncation_check(const FiniteChain& chain, std::size_t a, std::size_t b) {
    validate(chain);
    if (a > b || b > chain.length()) {
        throw domain_error("truncation window [" + std::to_string(a) + "," + std::to_string(b) + "] outside [0," + std::to_string(chain.length()) + "]");
    }
    ExactCheck out{"truncation", {}};
    out.parts.emplace_back("window [" + std::to_string(a) + "," + std::to_string(b) + "]",
                           truncation_residual(chain, a, b, mixed_bivector_top));
    return out;
}

/// Trace pairing between E_ij and E_ji: tr(x y).
inline Rational trace_pairing(const RationalMatrix& x, const RationalMatrix& y) {
    if (x.rows() != y.cols() || x.cols() != y.rows()) throw shape_error("trace pairing of " + x.shape_string() + " and " + y.shape_string());
    Rational t = 0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (x(i, j) != 0 && y(j, i) != 0) t += x(i, j) * y(j, i);
    return t;
}

inline Rational tuple_pairing(const HomTuple& x, const HomTuple& y) {
    Rational total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) total += trace_pairing(x[i].map, y[i].map);
    return total;
}

/// <dh_vee(a), b> + <a, dh(b)> for a in (+)E_{i+1,i}, b in (+)E_ii.
inline Rational adjointness_defect(const FiniteChain& chain, const HomTuple& a, const HomTuple& b) {
    return tuple_pairing(dh_vee(chain, a), b) + tuple_pairing(a, dh(chain, b));
}

/// On elementary bases <x, E_rc> is the single entry x(c, r), so the defect
/// of every basis pair is read off the images without forming products.
inline ExactCheck adjointness_check(const FiniteChain& chain) {
    validate(chain);
    struct Unit {
        std::size_t component, row, col;
    };
    auto units = [&](SumKind kind) {
        std::vector<Unit> out;
        const auto zero = zero_tuple(chain, kind);
        for (std::size_t c = 0; c < zero.size(); ++c)
            for (std::size_t r = 0; r < zero[c].map.rows(); ++r)
                for (std::size_t col = 0; col < zero[c].map.cols(); ++col) out.push_back({c, r, col});
        return out;
    };
    const auto ua = units(SumKind::down), ub = units(SumKind::diagonal);
    const auto as = basis(chain, SumKind::down), bs = basis(chain, SumKind::diagonal);
    std::vector<HomTuple> dv, db;
    for (const auto& a : as) dv.push_back(dh_vee(chain, a));
    for (const auto& b : bs) db.push_back(dh(chain, b));
    Rational worst = 0;
    for (std::size_t x = 0; x < as.size(); ++x)
        for (std::size_t y = 0; y < bs.size(); ++y) {
            const Rational defect = dv[x][ub[y].component].map(ub[y].col, ub[y].row) +
                                    db[y][ua[x].component].map(ua[x].col, ua[x].row);
            worst = std::max(worst, Rational(abs(defect)));
        }
    ExactCheck out{"adjointness", {}};
    out.parts.emplace_back("<dh_vee a, b> + <a, dh b>", worst);
    return out;
}

/// True when some consecutive composite d_{i+1} d_i is nonzero.
inline bool has_nonzero_composite(const FiniteChain& chain) {
    for (std::size_t i = 0; i + 1 < chain.length(); ++i)
        if (!(chain.d(i + 1) * chain.d(i)).is_zero()) return true;
    return false;
}

}  // namespace foboson
