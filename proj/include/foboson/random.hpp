#pragma once

// Seeded generators for randomized sweeps. Every sweep derives one engine
// per trial from (seed, trial index), so trials are independent of the order
// they run in.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "foboson/bracket.hpp"
#include "foboson/dgchain.hpp"
#include "foboson/elliptic.hpp"

namespace foboson {

using Engine = std::mt19937_64;

inline Engine trial_engine(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return Engine(seq);
}

/// p/q with p in [lo, hi] and q in [1, max_den].
inline Rational random_rational(Engine& rng, int lo = -5, int hi = 5, int max_den = 5) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, max_den);
    const int p = num(rng);
    return Rational(p, den(rng));
}

inline RationalMatrix random_matrix(Engine& rng, std::size_t rows, std::size_t cols) {
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_rational(rng);
    return m;
}

inline FiniteChain random_chain(Engine& rng, const std::vector<std::size_t>& dims) {
    FiniteChain chain{dims, {}};
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) chain.maps.push_back(random_matrix(rng, dims[i + 1], dims[i]));
    validate(chain);
    return chain;
}

inline HomTuple random_tuple(Engine& rng, const FiniteChain& chain, SumKind kind) {
    HomTuple t = zero_tuple(chain, kind);
    for (auto& h : t) h.map = random_matrix(rng, h.map.rows(), h.map.cols());
    return t;
}

struct RandomChart {
    BosonChart chart;
    std::size_t rejections = 0;  // candidate points discarded by the pole guard
};

/// n points uniform in the fundamental cell {s + t tau : s, t in [0, 1)},
/// redrawing any point closer than `separation` to an earlier one modulo the
/// lattice; values y_i have modulus in [0.5, 2] and uniform phase.
inline RandomChart random_chart(Engine& rng, std::size_t n, const EllipticContext& ctx, double separation) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RandomChart out;
    while (out.chart.points.size() < n) {
        const Complex u = unit(rng) + unit(rng) * ctx.tau();
        bool ok = true;
        for (const Complex& w : out.chart.points) {
            if (lattice_distance(reduce(u - w, ctx).z0, ctx) < separation) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            ++out.rejections;
            continue;
        }
        out.chart.points.push_back(u);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double modulus = 0.5 + 1.5 * unit(rng);
        out.chart.values.push_back(std::polar(modulus, 2 * std::numbers::pi * unit(rng)));
    }
    return out;
}

}  // namespace foboson
