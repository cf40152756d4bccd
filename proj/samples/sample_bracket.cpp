// Builds the bracket on a three-point chart, prints it, and confirms that
// rescaling the y variables by theta products makes it log-canonical.

#include <cstdio>

#include "foboson/arith.hpp"
#include "foboson/bracket.hpp"

int main() {
    using foboson::Complex;

    const auto inv = foboson::chain_invariants(27, 8);
    std::printf("27/8 = [");
    for (std::size_t i = 0; i < inv.expansion.size(); ++i) std::printf("%s%s", i ? ", " : "", inv.expansion[i].str().c_str());
    std::printf("], dim End = %s\n", foboson::dim_end(inv).str().c_str());

    const foboson::EllipticContext ctx(Complex(0.3, 1.1));
    const foboson::BosonChart chart{{{0.1, 0.2}, {0.45, 0.7}, {-0.2, 0.35}}, {{1, 0}, {0.5, 0.5}, {-1.2, 0.3}}};
    const auto pi = foboson::bracket_matrix(chart, ctx);
    for (std::size_t r = 0; r < pi.dimension(); ++r) {
        std::printf("%4s ", pi.order[r].name().c_str());
        for (std::size_t c = 0; c < pi.dimension(); ++c) std::printf(" (%8.4f,%8.4f)", pi.entries(r, c).real(), pi.entries(r, c).imag());
        std::printf("\n");
    }
    const auto res = foboson::prime_bracket_check(chart, ctx);
    std::printf("after rescaling: max |{w_j, w_k}| = %.3e, max Kronecker defect = %.3e\n", res.max_vv, res.max_vu);
    return 0;
}
