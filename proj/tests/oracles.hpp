#pragma once

// Independent oracles for the test suite. Nothing here calls library code:
// quadrature is plain adaptive Simpson, special values come from closed forms,
// and the slit-plane inverse is the explicit branch formula.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// adaptive Simpson with interval bisection; plenty for smooth integrands
inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, double tol,
                          int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// standard weight (alpha+1)(1-r^2)^alpha
inline double std_weight(double alpha, double r) {
    return (alpha + 1.0) * std::pow(1.0 - r * r, alpha);
}

// tail integral of the standard weight: closed form via the substitution u = 1-r^2
// is awkward for odd powers, so integrate numerically at tight tolerance
inline double std_tail(double alpha, double r) {
    return integrate([alpha](double s) { return std_weight(alpha, s); }, r, 1.0, 1e-14);
}

// int_r^1 s w(s) log(s/r) ds for alpha = 0 has the closed form
// (1/2) log(1/r) - (1-r^2)/4
inline double star_alpha0(double r) { return 0.5 * std::log(1.0 / r) - 0.25 * (1.0 - r * r); }

// monomial moments 2 int_0^1 r^(2n+1) w(r) dr = Gamma(n+1) Gamma(alpha+2) / Gamma(n+alpha+2)
inline double std_moment(double alpha, double n) {
    return std::exp(std::lgamma(n + 1.0) + std::lgamma(alpha + 2.0) -
                    std::lgamma(n + alpha + 2.0));
}

// inverse of the slit-plane map w = z/(1-z)^2, principal branch, w = 0 -> 0
inline cplx koebe_inverse(cplx w) {
    if (std::abs(w) < 1e-300) return {0.0, 0.0};
    return (2.0 * w + 1.0 - std::sqrt(1.0 + 4.0 * w)) / (2.0 * w);
}

// pseudohyperbolic distance
inline double pseudo_dist(cplx a, cplx z) {
    return std::abs((a - z) / (1.0 - std::conj(a) * z));
}

// Euclidean parameters of the metric disk: center a(1-r^2)/(1-r^2|a|^2),
// radius r(1-|a|^2)/(1-r^2|a|^2)
inline cplx metric_disk_center(cplx a, double r) {
    return a * (1.0 - r * r) / (1.0 - r * r * std::norm(a));
}
inline double metric_disk_radius(cplx a, double r) {
    return r * (1.0 - std::norm(a)) / (1.0 - r * r * std::norm(a));
}

// deterministic uniform samples in the open disk
inline std::vector<cplx> disk_samples(int n, unsigned seed, double r_max = 0.999) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<cplx> out;
    out.reserve(n);
    while (static_cast<int>(out.size()) < n) {
        const cplx z{2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0};
        if (std::abs(z) < r_max) out.push_back(z);
    }
    return out;
}

// random polynomial with coefficients uniform in the unit square, degree deg
inline std::vector<cplx> random_poly(int deg, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> c(deg + 1);
    for (auto& x : c) x = {u(rng), u(rng)};
    return c;
}

}  // namespace oracle
