#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "foboson/arith.hpp"

namespace {

using foboson::Integer;
using foboson::Rational;

std::vector<Integer> ints(std::initializer_list<long long> xs) { return {xs.begin(), xs.end()}; }

// --- test-only oracles, independent of the library code paths ------------

// Fraction-free Gaussian elimination with row pivoting (Bareiss).
Integer bareiss_det(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

Integer tridiag_oracle(const std::vector<Integer>& seq) {
    const std::size_t n = seq.size();
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = seq[i];
        if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = -1;
    }
    return bareiss_det(m);
}

// n_1 - 1/(n_2 - ... ) evaluated from the front with explicit numerator and
// denominator bookkeeping (no library helper).
Rational cf_oracle(const std::vector<Integer>& e) {
    Rational value = e.back();
    for (std::size_t i = e.size() - 1; i-- > 0;) value = Rational(e[i]) - Rational(1) / value;
    return value;
}

}  // namespace

TEST(NegativeCf, TwentySevenOverEight) { EXPECT_EQ(foboson::negative_cf(27, 8), ints({4, 2, 3, 2})); }

TEST(NegativeCf, SingleTerm) { EXPECT_EQ(foboson::negative_cf(5, 1), ints({5})); }

TEST(NegativeCf, SevenThirds) {
    const auto e = foboson::negative_cf(7, 3);
    EXPECT_EQ(e, ints({3, 2, 2}));
    EXPECT_EQ(cf_oracle(e), Rational(7, 3));
}

TEST(NegativeCf, RejectsBadInput) {
    EXPECT_THROW(foboson::negative_cf(4, 2), foboson::domain_error);
    EXPECT_THROW(foboson::negative_cf(5, 0), foboson::domain_error);
    EXPECT_THROW(foboson::negative_cf(5, -2), foboson::domain_error);
    EXPECT_THROW(foboson::negative_cf(5, 5), foboson::domain_error);
    EXPECT_THROW(foboson::negative_cf(5, 7), foboson::domain_error);
}

TEST(NegativeCf, ReconstructsEveryPairUpTo60) {
    for (int n = 2; n <= 60; ++n)
        for (int k = 1; k < n; ++k) {
            if (std::gcd(n, k) != 1) continue;
            const auto e = foboson::negative_cf(n, k);
            ASSERT_GE(e.size(), 1u);
            for (const auto& a : e) ASSERT_GE(a, 2);
            ASSERT_EQ(cf_oracle(e), Rational(n, k)) << n << "/" << k;
        }
}

TEST(TridiagDet, Examples) {
    EXPECT_EQ(foboson::tridiag_det(ints({4, 2, 3, 2})), 27);
    EXPECT_EQ(tridiag_oracle(ints({4, 2, 3, 2})), 27);
    EXPECT_EQ(foboson::tridiag_det(std::vector<Integer>{}), 1);
    EXPECT_EQ(foboson::tridiag_det(ints({9})), 9);
}

// Small-integer cofactor expansion for the exhaustive sweep.
long long cofactor_det_ll(const std::vector<std::vector<long long>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    long long total = 0;
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col] == 0) continue;
        std::vector<std::vector<long long>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<long long> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != col) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        total += (col % 2 == 0 ? 1 : -1) * m[0][col] * cofactor_det_ll(minor);
    }
    return total;
}

TEST(TridiagDet, MatchesCofactorOracleOnAllShortSequences) {
    std::size_t checked = 0;
    for (int len = 0; len <= 6; ++len) {
        std::vector<long long> seq(len, -3);
        while (true) {
            std::vector<std::vector<long long>> m(len, std::vector<long long>(len, 0));
            for (int i = 0; i < len; ++i) {
                m[i][i] = seq[i];
                if (i + 1 < len) m[i][i + 1] = m[i + 1][i] = -1;
            }
            const std::vector<Integer> big(seq.begin(), seq.end());
            ASSERT_EQ(foboson::tridiag_det(big), cofactor_det_ll(m));
            ++checked;
            int i = 0;
            while (i < len && seq[i] == 5) seq[i++] = -3;
            if (i == len) break;
            seq[i] += 1;
        }
    }
    EXPECT_EQ(checked, 597871u);  // sum of 9^len for len = 0..6
}

TEST(ChainInvariants, TwentySevenEighths) {
    const auto inv = foboson::chain_invariants(27, 8);
    EXPECT_EQ(inv.nconv, ints({27, 17, 7, 4, 1}));
    EXPECT_EQ(inv.kconv, ints({8, 5, 2, 1, 0}));
    EXPECT_EQ(inv.subranks, ints({3, 3, 1, 1, 1}));
    EXPECT_EQ(inv.subdegs, ints({10, 10, 3, 3, 1}));
    const std::vector<Rational> slopes{Rational(10, 3), Rational(10, 3), 3, 3, 1};
    EXPECT_EQ(inv.slopes, slopes);
    EXPECT_TRUE(foboson::invariant_violations(inv).empty());
}

TEST(ChainInvariants, FiveHalves) {
    const auto inv = foboson::chain_invariants(5, 2);
    EXPECT_EQ(inv.nconv, ints({5, 3, 1}));
    EXPECT_EQ(inv.kconv, ints({2, 1, 0}));
    EXPECT_EQ(inv.subranks, ints({1, 1, 1}));
    EXPECT_EQ(inv.subdegs, ints({2, 2, 1}));
    EXPECT_EQ(inv.slopes, (std::vector<Rational>{2, 2, 1}));
}

TEST(ChainInvariants, LineBundleCase) {
    for (int n = 2; n <= 12; ++n) {
        const auto inv = foboson::chain_invariants(n, 1);
        EXPECT_EQ(inv.subranks, ints({1, 1}));
        EXPECT_EQ(inv.subdegs, ints({n - 1, 1}));
    }
}

// Convergents against D(n_1..n_{p-i}) and D(n_2..n_{p-i}) from the elimination
// oracle, plus the difference formulas.
TEST(ChainInvariants, ConvergentsMatchDeterminantOracle) {
    for (int n = 2; n <= 40; ++n)
        for (int k = 1; k < n; ++k) {
            if (std::gcd(n, k) != 1) continue;
            const auto inv = foboson::chain_invariants(n, k);
            const std::size_t p = inv.length();
            for (std::size_t i = 0; i < p; ++i) {
                std::vector<Integer> head(inv.expansion.begin(), inv.expansion.begin() + (p - i));
                std::vector<Integer> tail(inv.expansion.begin() + 1, inv.expansion.begin() + (p - i));
                ASSERT_EQ(inv.nconv[i], tridiag_oracle(head));
                ASSERT_EQ(inv.kconv[i], tridiag_oracle(tail));
                ASSERT_EQ(inv.subranks[i], inv.kconv[i] - inv.kconv[i + 1]);
                ASSERT_EQ(inv.subdegs[i], inv.nconv[i] - inv.nconv[i + 1]);
            }
            ASSERT_TRUE(foboson::invariant_violations(inv).empty()) << foboson::invariant_violations(inv).front();
        }
}

TEST(ChainInvariants, ViolationsAreDetected) {
    auto inv = foboson::chain_invariants(27, 8);
    inv.subdegs[1] += 1;
    inv.slopes[4] = 2;
    EXPECT_GE(foboson::invariant_violations(inv).size(), 2u);
}

TEST(EulerForm, Basics) {
    EXPECT_EQ(foboson::euler_form({1, 0}, {0, 1}), 1);
    const foboson::KClass v{3, -7}, w{-2, 5};
    EXPECT_EQ(foboson::euler_form(v, w), -foboson::euler_form(w, v));
    EXPECT_EQ(foboson::euler_form(v, v), 0);
}

TEST(EulerForm, ConsecutiveConvergentsPairToOne) {
    for (int n = 2; n <= 50; ++n)
        for (int k = 1; k < n; ++k) {
            if (std::gcd(n, k) != 1) continue;
            const auto inv = foboson::chain_invariants(n, k);
            for (std::size_t i = 0; i < inv.length(); ++i) {
                ASSERT_EQ(foboson::euler_form({inv.kconv[i], inv.nconv[i]}, {inv.kconv[i + 1], inv.nconv[i + 1]}), 1);
            }
        }
}

TEST(EulerForm, SkipOnePairingsForTwentySevenEighths) {
    const auto v = foboson::chain_classes(foboson::chain_invariants(27, 8));
    EXPECT_EQ(foboson::euler_form(v[0], v[2]), 2);
    EXPECT_EQ(foboson::euler_form(v[1], v[3]), 3);
    EXPECT_EQ(foboson::euler_form(v[2], v[4]), 2);
}

TEST(Partitions, TauExamples) {
    using Blocks = std::vector<std::vector<std::size_t>>;
    EXPECT_EQ(foboson::tau_partition(ints({4, 2, 3, 2})).blocks, (Blocks{{0}, {1, 2}, {3, 4}}));
    EXPECT_EQ(foboson::tau_partition(ints({5})).blocks, (Blocks{{0}, {1}}));
    EXPECT_EQ(foboson::tau_partition(ints({2, 2})).blocks, (Blocks{{0, 1, 2}}));
}

TEST(Partitions, SlopeClassExamples) {
    using Blocks = std::vector<std::vector<std::size_t>>;
    EXPECT_EQ(foboson::slope_classes(foboson::chain_invariants(27, 8)).blocks, (Blocks{{0, 1}, {2, 3}, {4}}));
    EXPECT_EQ(foboson::slope_classes(foboson::chain_invariants(5, 2)).blocks, (Blocks{{0, 1}, {2}}));
    EXPECT_EQ(foboson::slope_classes(foboson::chain_invariants(9, 1)).blocks, (Blocks{{0}, {1}}));
}

// Equal consecutive slopes are governed by the reversed expansion: the
// slope classes are the tau partition of (n_p, ..., n_1) on the same labels,
// equivalently the mirror image of the tau partition.
TEST(Partitions, SlopeClassesAreMirroredTau) {
    for (int n = 2; n <= 80; ++n)
        for (int k = 1; k < n; ++k) {
            if (std::gcd(n, k) != 1) continue;
            const auto inv = foboson::chain_invariants(n, k);
            std::vector<Integer> rev(inv.expansion.rbegin(), inv.expansion.rend());
            const auto slopes = foboson::slope_classes(inv);
            ASSERT_EQ(slopes, foboson::tau_partition(rev));
            ASSERT_EQ(slopes, foboson::mirror(foboson::tau_partition(inv.expansion)));
            ASSERT_EQ(slopes.sorted_sizes(), foboson::tau_partition(inv.expansion).sorted_sizes());
        }
}

TEST(DimEnd, Examples) {
    EXPECT_EQ(foboson::dim_end(27, 8), 27);
    EXPECT_EQ(foboson::dim_end(5, 2), 5);
    for (int n = 2; n <= 30; ++n) EXPECT_EQ(foboson::dim_end(n, 1), n);
}

// Direct summation oracle over the pairs (i1 < i2) with the ranks and
// degrees rebuilt from convergent differences.
TEST(DimEnd, SummationOracle) {
    for (int n = 2; n <= 60; ++n)
        for (int k = 1; k < n; ++k) {
            if (std::gcd(n, k) != 1) continue;
            const auto inv = foboson::chain_invariants(n, k);
            const std::size_t p = inv.length();
            std::vector<Integer> r(p + 1, 1), d(p + 1, 1);
            for (std::size_t i = 0; i < p; ++i) {
                r[i] = inv.kconv[i] - inv.kconv[i + 1];
                d[i] = inv.nconv[i] - inv.nconv[i + 1];
            }
            Integer total = static_cast<long long>(p + 1);
            for (std::size_t a = 0; a <= p; ++a)
                for (std::size_t b = a + 1; b <= p; ++b) total += d[a] * r[b] - d[b] * r[a];
            ASSERT_EQ(total, n);
            ASSERT_EQ(foboson::dim_end(inv), total);
        }
}

TEST(ImageDescriptor, Examples) {
    auto img = foboson::image_descriptor(27, 8);
    EXPECT_EQ(img.block_sizes, (std::vector<std::size_t>{1, 2, 2}));
    EXPECT_EQ(img.ambient_power, 5u);
    EXPECT_EQ(img.fiber_dimension, 4u);
    EXPECT_NE(img.quotient_label.find("X^5/S^tau_5"), std::string::npos);
    EXPECT_NE(img.quotient_label.find("fiber of the addition map"), std::string::npos);

    img = foboson::image_descriptor(7, 1);
    EXPECT_EQ(img.block_sizes, (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(img.fiber_dimension, 1u);

    img = foboson::image_descriptor(3, 2);
    EXPECT_EQ(img.block_sizes, (std::vector<std::size_t>{3}));
    EXPECT_EQ(img.fiber_dimension, 2u);
}

TEST(LineDegrees, Examples) {
    EXPECT_EQ(foboson::lambda_degrees(foboson::chain_invariants(27, 8)), ints({2, 3, 2, 4}));
    EXPECT_EQ(foboson::det_line_degrees(27, 8), ints({3, 5, 4, 5}));
    EXPECT_EQ(foboson::lambda_degrees(foboson::chain_invariants(5, 2)), ints({2, 3}));
    EXPECT_EQ(foboson::det_line_degrees(5, 2), ints({3, 4}));
    for (int n = 2; n <= 20; ++n) EXPECT_EQ(foboson::det_line_degrees(n, 1), ints({n}));
}

TEST(LineDegrees, TotalDegreeIdentity) {
    for (int n = 2; n <= 80; ++n)
        for (int k = 1; k < n; ++k) {
            if (std::gcd(n, k) != 1) continue;
            const auto inv = foboson::chain_invariants(n, k);
            const std::size_t p = inv.length();
            if (p < 2) continue;
            const auto deg = foboson::det_line_degrees(inv);
            const Integer lhs = std::accumulate(deg.begin(), deg.end(), Integer(0));
            const Integer rhs = std::accumulate(inv.expansion.begin(), inv.expansion.end(), Integer(0)) + 2 * Integer(p) - 2;
            ASSERT_EQ(lhs, rhs);
        }
}
