#pragma once

// Exact integer/rational calculus attached to a coprime pair n > k > 0:
// the negative continued fraction of n/k, its convergents, the ranks and
// degrees of the successive kernels, their slopes, the two index partitions,
// the endomorphism-dimension identity and the determinant line degrees.
//
// Everything here is exact; there is no floating point in this header.

#include <algorithm>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "foboson/errors.hpp"
#include "foboson/number.hpp"

namespace foboson {

/// A K-theory class on an elliptic curve: (rank, degree).
struct KClass {
    Integer rank;
    Integer degree;

    friend bool operator==(const KClass&, const KClass&) = default;
};

/// Euler pairing chi(v, w) = deg(w) rk(v) - deg(v) rk(w). Antisymmetric.
inline Integer euler_form(const KClass& v, const KClass& w) {
    return w.degree * v.rank - v.degree * w.rank;
}

struct ChainInvariants {
    Integer n;
    Integer k;
    std::vector<Integer> expansion;  // n_1 .. n_p
    std::vector<Integer> nconv;      // n(0) .. n(p)
    std::vector<Integer> kconv;      // k(0) .. k(p)
    std::vector<Integer> subranks;   // r(0) .. r(p)
    std::vector<Integer> subdegs;    // d(0) .. d(p)
    std::vector<Rational> slopes;    // s(0) .. s(p)

    /// Length p of the expansion.
    std::size_t length() const noexcept { return expansion.size(); }
};

/// Ordered partition of {0, ..., p} into consecutive runs.
struct PartitionBlocks {
    std::vector<std::vector<std::size_t>> blocks;

    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> out;
        out.reserve(blocks.size());
        for (const auto& b : blocks) out.push_back(b.size());
        return out;
    }

    std::vector<std::size_t> sorted_sizes() const {
        auto s = sizes();
        std::sort(s.begin(), s.end());
        return s;
    }

    friend bool operator==(const PartitionBlocks&, const PartitionBlocks&) = default;
};

struct ImageDescriptor {
    std::vector<std::size_t> block_sizes;  // sorted ascending
    std::size_t ambient_power = 0;         // p + 1
    std::size_t fiber_dimension = 0;       // p
    std::string quotient_label;
};

namespace detail {

inline void require_coprime_pair(const Integer& n, const Integer& k) {
    if (k <= 0) throw domain_error("k must be positive, got " + k.str());
    if (k >= n) throw domain_error("k must be smaller than n, got n=" + n.str() + " k=" + k.str());
    if (boost::multiprecision::gcd(n, k) != 1) {
        throw domain_error("n and k must be coprime, got n=" + n.str() + " k=" + k.str());
    }
}

// Grow runs over {0..p}: i and i+1 share a block iff joined(i) holds.
template <class Pred>
PartitionBlocks runs(std::size_t p, Pred joined) {
    PartitionBlocks out;
    out.blocks.push_back({0});
    for (std::size_t i = 0; i < p; ++i) {
        if (joined(i)) {
            out.blocks.back().push_back(i + 1);
        } else {
            out.blocks.push_back({i + 1});
        }
    }
    return out;
}

}  // namespace detail

/// Negative continued fraction n/k = n_1 - 1/(n_2 - 1/(... - 1/n_p)), all n_i >= 2.
/// Requires 0 < k < n with gcd(n, k) = 1.
inline std::vector<Integer> negative_cf(const Integer& n, const Integer& k) {
    detail::require_coprime_pair(n, k);
    std::vector<Integer> out;
    Integer num = n;
    Integer den = k;
    while (den != 0) {
        const Integer q = (num + den - 1) / den;  // ceil, both positive
        out.push_back(q);
        const Integer rem = q * den - num;
        num = den;
        den = rem;
    }
    return out;
}

/// Determinant of the tridiagonal matrix with diagonal `seq` and -1 off the
/// diagonal. D() = 1, D(a) = a.
inline Integer tridiag_det(std::span<const Integer> seq) {
    Integer prev = 0;  // D of the prefix two entries shorter
    Integer cur = 1;   // D of the prefix one entry shorter
    for (std::size_t i = 0; i < seq.size(); ++i) {
        Integer next = seq[i] * cur - prev;
        prev = cur;
        cur = std::move(next);
    }
    return cur;
}

inline Integer tridiag_det(const std::vector<Integer>& seq) {
    return tridiag_det(std::span<const Integer>(seq));
}

/// Value of the negative continued fraction n_1 - 1/(n_2 - ...), exactly.
inline Rational evaluate_negative_cf(std::span<const Integer> expansion) {
    if (expansion.empty()) throw domain_error("empty continued fraction");
    Rational acc(expansion.back());
    for (std::size_t i = expansion.size() - 1; i-- > 0;) {
        if (acc == 0) throw domain_error("continued fraction hits a zero denominator");
        acc = Rational(expansion[i]) - 1 / acc;
    }
    return acc;
}

/// All convergent and kernel data of (n, k). The convergents come from the
/// three-term recursion; every entry is cross-checked against the closed
/// determinant formulas before returning.
inline ChainInvariants chain_invariants(const Integer& n, const Integer& k) {
    ChainInvariants inv;
    inv.n = n;
    inv.k = k;
    inv.expansion = negative_cf(n, k);
    const std::size_t p = inv.length();
    const auto& e = inv.expansion;

    // n(p+1) = 0 and k(p+1) = -1 extend the recursion one step past the end.
    std::vector<Integer> nc(p + 2), kc(p + 2);
    nc[p + 1] = 0;
    kc[p + 1] = -1;
    nc[p] = 1;
    kc[p] = 0;
    for (std::size_t i = p; i-- > 0;) {
        const Integer& a = e[p - i - 1];  // n_{p-i}
        nc[i] = a * nc[i + 1] - nc[i + 2];
        kc[i] = a * kc[i + 1] - kc[i + 2];
    }
    nc.resize(p + 1);
    kc.resize(p + 1);
    inv.nconv = nc;
    inv.kconv = kc;

    inv.subranks.resize(p + 1);
    inv.subdegs.resize(p + 1);
    inv.slopes.resize(p + 1);
    for (std::size_t i = 0; i < p; ++i) {
        inv.subranks[i] = kc[i] - kc[i + 1];
        inv.subdegs[i] = nc[i] - nc[i + 1];
    }
    inv.subranks[p] = 1;
    inv.subdegs[p] = 1;
    for (std::size_t i = 0; i <= p; ++i) inv.slopes[i] = Rational(inv.subdegs[i], inv.subranks[i]);

    // Cross-check against the determinant formulas.
    const std::span<const Integer> all(e);
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t top = p - i;  // entries n_1 .. n_top
        std::vector<Integer> head(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(top));
        std::vector<Integer> tail(all.begin() + 1, all.begin() + static_cast<std::ptrdiff_t>(top));
        bool ok = tridiag_det(head) == nc[i] && tridiag_det(tail) == kc[i];
        head.back() -= 1;
        if (!tail.empty()) tail.back() -= 1;
        ok = ok && tridiag_det(head) == inv.subdegs[i] && tridiag_det(tail) == inv.subranks[i];
        if (!ok) {
            throw std::logic_error("convergent recursion disagrees with determinant formula at i=" + std::to_string(i));
        }
    }
    return inv;
}

/// Human-readable list of every violated structural identity (empty when the
/// invariants are consistent). Used by the sweep and the tests.
inline std::vector<std::string> invariant_violations(const ChainInvariants& inv) {
    std::vector<std::string> bad;
    const std::size_t p = inv.length();
    auto fail = [&](const std::string& what) { bad.push_back("(" + inv.n.str() + "," + inv.k.str() + "): " + what); };

    if (p == 0) {
        fail("empty expansion");
        return bad;
    }
    for (const auto& a : inv.expansion) {
        if (a < 2) fail("expansion entry below 2");
    }
    if (evaluate_negative_cf(inv.expansion) != Rational(inv.n, inv.k)) fail("expansion does not reconstruct n/k");
    if (inv.nconv.size() != p + 1 || inv.kconv.size() != p + 1 || inv.subranks.size() != p + 1 ||
        inv.subdegs.size() != p + 1 || inv.slopes.size() != p + 1) {
        fail("list lengths differ from p+1");
        return bad;
    }
    if (inv.nconv[0] != inv.n || inv.kconv[0] != inv.k) fail("n(0), k(0) differ from n, k");
    if (inv.nconv[p] != 1 || inv.kconv[p] != 0) fail("n(p), k(p) differ from 1, 0");
    for (std::size_t i = 0; i < p; ++i) {
        if (inv.nconv[i + 1] * inv.kconv[i] - inv.nconv[i] * inv.kconv[i + 1] != 1) {
            fail("n(i+1)k(i) - n(i)k(i+1) != 1 at i=" + std::to_string(i));
        }
        if (!(inv.nconv[i] > inv.nconv[i + 1]) || !(inv.kconv[i] > inv.kconv[i + 1])) {
            fail("convergents not strictly decreasing at i=" + std::to_string(i));
        }
        if (inv.subranks[i] != inv.kconv[i] - inv.kconv[i + 1] || inv.subdegs[i] != inv.nconv[i] - inv.nconv[i + 1]) {
            fail("subquotient differs from convergent difference at i=" + std::to_string(i));
        }
    }
    for (std::size_t i = 0; i + 2 <= p; ++i) {
        const Integer& a = inv.expansion[p - i - 1];
        if (inv.nconv[i] != a * inv.nconv[i + 1] - inv.nconv[i + 2] || inv.kconv[i] != a * inv.kconv[i + 1] - inv.kconv[i + 2]) {
            fail("three-term recursion fails at i=" + std::to_string(i));
        }
    }
    if (inv.subranks[p] != 1 || inv.subdegs[p] != 1) fail("r(p), d(p) differ from 1");
    for (std::size_t i = 0; i <= p; ++i) {
        if (inv.subranks[i] <= 0 || inv.subdegs[i] <= 0) fail("non-positive subquotient at i=" + std::to_string(i));
        if (inv.slopes[i] != Rational(inv.subdegs[i], inv.subranks[i])) fail("slope is not d/r at i=" + std::to_string(i));
    }
    if (!(Rational(inv.n, inv.k) > inv.slopes[0])) fail("n/k does not exceed s(0)");
    for (std::size_t i = 0; i < p; ++i) {
        if (inv.slopes[i] < inv.slopes[i + 1]) fail("slopes increase at i=" + std::to_string(i));
    }
    if (inv.slopes[p] != 1) fail("s(p) != 1");
    return bad;
}

/// Partition of {0..p}: i ~ i+1 iff n_{i+1} = 2.
inline PartitionBlocks tau_partition(std::span<const Integer> expansion) {
    return detail::runs(expansion.size(), [&](std::size_t i) { return expansion[i] == 2; });
}

inline PartitionBlocks tau_partition(const std::vector<Integer>& expansion) {
    return tau_partition(std::span<const Integer>(expansion));
}

/// Maximal runs of equal consecutive slopes s(0..p).
inline PartitionBlocks slope_classes(const ChainInvariants& inv) {
    return detail::runs(inv.length(), [&](std::size_t i) { return inv.slopes[i] == inv.slopes[i + 1]; });
}

/// Image of a partition of {0..p} under i -> p - i, blocks re-listed in order.
inline PartitionBlocks mirror(const PartitionBlocks& part) {
    std::size_t p = 0;
    for (const auto& b : part.blocks)
        for (auto i : b) p = std::max(p, i);
    PartitionBlocks out;
    for (auto it = part.blocks.rbegin(); it != part.blocks.rend(); ++it) {
        std::vector<std::size_t> block;
        for (auto j = it->rbegin(); j != it->rend(); ++j) block.push_back(p - *j);
        out.blocks.push_back(std::move(block));
    }
    return out;
}

/// p + 1 + sum_{i1 < i2} [d(i1) r(i2) - d(i2) r(i1)]. Equals n for every valid pair.
inline Integer dim_end(const ChainInvariants& inv) {
    const std::size_t p = inv.length();
    Integer total = static_cast<unsigned long long>(p + 1);
    for (std::size_t a = 0; a <= p; ++a)
        for (std::size_t b = a + 1; b <= p; ++b) {
            total += inv.subdegs[a] * inv.subranks[b] - inv.subdegs[b] * inv.subranks[a];
        }
    return total;
}

inline Integer dim_end(const Integer& n, const Integer& k) { return dim_end(chain_invariants(n, k)); }

inline std::string render_blocks(const PartitionBlocks& part) {
    std::ostringstream os;
    for (const auto& b : part.blocks) {
        os << '{';
        for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
        os << '}';
    }
    return os.str();
}

inline ImageDescriptor image_descriptor(const ChainInvariants& inv) {
    const auto tau = tau_partition(inv.expansion);
    ImageDescriptor out;
    out.block_sizes = tau.sorted_sizes();
    out.ambient_power = inv.length() + 1;
    out.fiber_dimension = inv.length();
    const std::string power = std::to_string(out.ambient_power);
    out.quotient_label = "X^" + power + "/S^tau_" + power + " with tau = " + render_blocks(tau) +
                         "; image is a fiber of the addition map X^" + power + "/S^tau_" + power +
                         " -> X, of dimension " + std::to_string(out.fiber_dimension);
    return out;
}

inline ImageDescriptor image_descriptor(const Integer& n, const Integer& k) {
    return image_descriptor(chain_invariants(n, k));
}

/// Classes v_0 .. v_{p+1} with v_i = (k(i), n(i)) and v_{p+1} = (-1, 0).
inline std::vector<KClass> chain_classes(const ChainInvariants& inv) {
    std::vector<KClass> v;
    for (std::size_t i = 0; i <= inv.length(); ++i) v.push_back({inv.kconv[i], inv.nconv[i]});
    v.push_back({-1, 0});
    return v;
}

/// Degrees of the twisting line bundles Lambda_1 .. Lambda_p, each computed as
/// chi(v_{j-1}, v_{j+1}). The result must reproduce n_{p-j+1}; a mismatch is
/// a logic error.
inline std::vector<Integer> lambda_degrees(const ChainInvariants& inv) {
    const std::size_t p = inv.length();
    const auto v = chain_classes(inv);
    std::vector<Integer> out;
    for (std::size_t j = 1; j <= p; ++j) {
        Integer deg = euler_form(v[j - 1], v[j + 1]);
        if (deg != inv.expansion[p - j]) {
            throw std::logic_error("Euler form chi(v_" + std::to_string(j - 1) + ", v_" + std::to_string(j + 1) +
                                   ") = " + deg.str() + " differs from n_" + std::to_string(p - j + 1));
        }
        out.push_back(std::move(deg));
    }
    return out;
}

/// Degrees of L_1 .. L_p. For p = 1 this is the single degree n; otherwise
/// deg L_j = deg Lambda_j + 1 at the two ends and + 2 in the interior.
inline std::vector<Integer> det_line_degrees(const ChainInvariants& inv) {
    const std::size_t p = inv.length();
    auto out = lambda_degrees(inv);
    if (p == 1) return out;
    for (std::size_t j = 1; j <= p; ++j) out[j - 1] += (j == 1 || j == p) ? 1 : 2;
    return out;
}

inline std::vector<Integer> det_line_degrees(const Integer& n, const Integer& k) {
    return det_line_degrees(chain_invariants(n, k));
}

}  // namespace foboson
