#pragma once

// Odd Jacobi theta function on C / (Z + Z tau) and its logarithmic
// derivative zeta = theta'/theta.
//
//   theta(z) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z),  q = e^{i pi tau}
//
// with theta(z + 1) = -theta(z) and theta(z + tau) = -q^{-1} e^{-2 pi i z} theta(z).
// Consequently zeta(z + 1) = zeta(z) and zeta(z + tau) = zeta(z) - 2 pi i.
//
// Every evaluation first reduces z to the cell |Re z0| <= 1/2,
// |Im z0| <= Im(tau)/2, sums the series there, and then reapplies the
// quasi-periodicity factors exactly.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "foboson/errors.hpp"

namespace foboson {

using Complex = std::complex<double>;

class EllipticContext {
public:
    static constexpr double kMinImagTau = 0.1;
    static constexpr double kDefaultTruncationTol = 1e-14;
    static constexpr double kDefaultMinSeparation = 1e-6;
    static constexpr int kMaxTerms = 500;

    explicit EllipticContext(Complex tau, double truncation_tol = kDefaultTruncationTol,
                             double min_separation = kDefaultMinSeparation)
        : tau_(tau), truncation_tol_(truncation_tol), min_separation_(min_separation) {
        if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()) || tau.imag() < kMinImagTau) {
            throw domain_error("tau must satisfy Im(tau) >= 0.1, got " + std::to_string(tau.real()) + "+" +
                               std::to_string(tau.imag()) + "i");
        }
        if (!(truncation_tol > 0) || !(min_separation > 0)) {
            throw domain_error("truncation tolerance and pole guard must be positive");
        }
        nome_ = std::exp(Complex(0, std::numbers::pi) * tau_);
    }

    Complex tau() const noexcept { return tau_; }
    Complex nome() const noexcept { return nome_; }
    double truncation_tol() const noexcept { return truncation_tol_; }
    double min_separation() const noexcept { return min_separation_; }

private:
    Complex tau_;
    Complex nome_;
    double truncation_tol_;
    double min_separation_;
};

/// z = z0 + m + n_shift * tau with z0 in the reduced cell.
struct LatticeReduced {
    Complex z0;
    std::int64_t m = 0;
    std::int64_t n_shift = 0;
};

inline LatticeReduced reduce(Complex z, const EllipticContext& ctx) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw domain_error("non-finite argument");
    const Complex tau = ctx.tau();
    LatticeReduced r;
    r.n_shift = std::llround(z.imag() / tau.imag());
    const Complex w = z - static_cast<double>(r.n_shift) * tau;
    r.m = static_cast<std::int64_t>(std::floor(w.real() + 0.5));
    r.z0 = w - static_cast<double>(r.m);
    return r;
}

/// Distance from a reduced point to the nearest lattice point.
inline double lattice_distance(Complex z0, const EllipticContext& ctx) {
    double best = std::numeric_limits<double>::infinity();
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) best = std::min(best, std::abs(z0 - (double(a) + double(b) * ctx.tau())));
    return best;
}

namespace detail {

// theta and its first two z-derivatives at a reduced argument.
struct ThetaJet {
    Complex value;
    Complex d1;
    Complex d2;
};

inline ThetaJet theta_series(Complex z0, const EllipticContext& ctx, int order) {
    using std::numbers::pi;
    const Complex ipi_tau = Complex(0, pi) * ctx.tau();
    const double tol = ctx.truncation_tol();
    ThetaJet acc{};
    for (int n = 0;; ++n) {
        if (n >= EllipticContext::kMaxTerms) {
            throw convergence_error("theta series did not converge within " + std::to_string(EllipticContext::kMaxTerms) + " terms");
        }
        const double half = n + 0.5;
        const double freq = (2 * n + 1) * pi;
        const Complex coeff = (n % 2 ? -2.0 : 2.0) * std::exp(ipi_tau * (half * half));
        const Complex s = std::sin(freq * z0);
        const Complex term0 = coeff * s;
        Complex term1{}, term2{};
        if (order >= 1) term1 = coeff * freq * std::cos(freq * z0);
        if (order >= 2) term2 = -coeff * (freq * freq) * s;

        const bool small0 = std::abs(term0) < tol * std::max(1.0, std::abs(acc.value));
        const bool small1 = order < 1 || std::abs(term1) < tol * std::max(1.0, std::abs(acc.d1));
        const bool small2 = order < 2 || std::abs(term2) < tol * std::max(1.0, std::abs(acc.d2));
        // The n = 0 term is never dropped; a zero sine there (z0 = 0) is exact.
        if (n > 0 && small0 && small1 && small2) break;
        acc.value += term0;
        acc.d1 += term1;
        acc.d2 += term2;
    }
    return acc;
}

inline LatticeReduced reduce_away_from_pole(Complex z, const EllipticContext& ctx) {
    const LatticeReduced r = reduce(z, ctx);
    const double dist = lattice_distance(r.z0, ctx);
    if (dist < ctx.min_separation()) {
        throw pole_error("argument within " + std::to_string(ctx.min_separation()) + " of a lattice point", dist);
    }
    return r;
}

}  // namespace detail

/// theta(z | tau). Entire; no pole guard.
inline Complex theta(Complex z, const EllipticContext& ctx) {
    using std::numbers::pi;
    const LatticeReduced r = reduce(z, ctx);
    const Complex base = detail::theta_series(r.z0, ctx, 0).value;
    if (r.m == 0 && r.n_shift == 0) return base;
    // theta(z0 + m + n tau) = (-1)^{m+n} q^{-n^2} e^{-2 pi i n z0} theta(z0)
    const double n = static_cast<double>(r.n_shift);
    const Complex log_factor = -Complex(0, pi) * ctx.tau() * (n * n) - Complex(0, 2 * pi * n) * r.z0;
    const double sign = ((r.m + r.n_shift) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(log_factor) * base;
}

/// zeta(z) = theta'(z)/theta(z). Throws pole_error near lattice points.
inline Complex zeta(Complex z, const EllipticContext& ctx) {
    using std::numbers::pi;
    const LatticeReduced r = detail::reduce_away_from_pole(z, ctx);
    const auto jet = detail::theta_series(r.z0, ctx, 1);
    return jet.d1 / jet.value - Complex(0, 2 * pi) * static_cast<double>(r.n_shift);
}

/// zeta'(z). Even and fully lattice-periodic.
inline Complex zeta_d1(Complex z, const EllipticContext& ctx) {
    const LatticeReduced r = detail::reduce_away_from_pole(z, ctx);
    const auto jet = detail::theta_series(r.z0, ctx, 2);
    const Complex ratio = jet.d1 / jet.value;
    return jet.d2 / jet.value - ratio * ratio;
}

/// 2[zeta(a) + zeta(b) + zeta(c)] for a + b + c congruent to 0 modulo the
/// lattice. The value depends only on the classes of a, b, c: when the
/// arguments sum to a nonzero lattice vector M + N tau, the quasi-period
/// constant 2 pi i N of the sum is restored so the result matches the
/// representative with a + b + c = 0.
inline Complex cyclic_coeff(Complex a, Complex b, Complex c, const EllipticContext& ctx) {
    using std::numbers::pi;
    const LatticeReduced sum = reduce(a + b + c, ctx);
    const double off = lattice_distance(sum.z0, ctx);
    if (off > 1e-9) {
        throw domain_error("cyclic_coeff arguments do not sum to a lattice point (offset " + std::to_string(off) + ")");
    }
    // sum.z0 is within 1e-9 of 0 or of one of the eight neighbouring lattice
    // points; fold that neighbour into the shift count.
    const std::int64_t n_extra = std::llround(sum.z0.imag() / ctx.tau().imag());
    const double n_total = static_cast<double>(sum.n_shift + n_extra);
    const Complex raw = zeta(a, ctx) + zeta(b, ctx) + zeta(c, ctx);
    return 2.0 * (raw + Complex(0, 2 * pi) * n_total);
}

}  // namespace foboson
