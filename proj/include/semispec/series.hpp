#pragma once

#include <complex>
#include <string>
#include <vector>

namespace semispec {

using cplx = std::complex<double>;

// Truncated Taylor series at the origin with a certified geometric tail:
// for n > degree(), |a_n| <= tail_bound * radius_hint^{-n}, so evaluation at
// |z| = r < radius_hint carries absolute error at most
//     tail_bound * (r/radius_hint)^{N+1} / (1 - r/radius_hint).
// Polynomials have tail_bound = 0. Factory-built series carry rigorous bounds;
// results of division/log/exp carry fitted bounds and set tail_rigorous=false.
struct AnalyticSeries {
    std::vector<cplx> c;
    double radius_hint = 1.0;
    double tail_bound = 0.0;
    bool tail_rigorous = true;

    AnalyticSeries() = default;
    explicit AnalyticSeries(std::vector<cplx> coeffs, double rh = 1.0, double tb = 0.0,
                            bool rigorous = true)
        : c(std::move(coeffs)), radius_hint(rh), tail_bound(tb), tail_rigorous(rigorous) {}

    int length() const { return static_cast<int>(c.size()); }
    cplx coeff(int n) const { return n < length() ? c[n] : cplx{0.0, 0.0}; }

    // bound on |f(z) - horner(z)| for |z| = r; +inf when r >= radius_hint
    double eval_error_bound(double r) const;
};

// --- evaluation ---------------------------------------------------------
cplx eval(const AnalyticSeries& f, cplx z);            // Horner
cplx eval_derivative(const AnalyticSeries& f, cplx z);
cplx eval_second_derivative(const AnalyticSeries& f, cplx z);

// Values of f on the circle |z|=r at M equispaced angles 2*pi*k/M (M a power of two),
// computed by folding the scaled coefficients mod M and one FFT: O(N + M log M).
std::vector<cplx> circle_values(const AnalyticSeries& f, double r, int M);

// In-place radix-2 FFT, n a power of two; inverse=true applies 1/n scaling.
void fft(std::vector<cplx>& a, bool inverse);

// --- arithmetic (coefficients exact; tail metadata propagated conservatively) ---
AnalyticSeries add(const AnalyticSeries& a, const AnalyticSeries& b);
AnalyticSeries sub(const AnalyticSeries& a, const AnalyticSeries& b);
AnalyticSeries scale(const AnalyticSeries& a, cplx s);
// full Cauchy product, optionally truncated to out_len coefficients (0 = full)
AnalyticSeries mul(const AnalyticSeries& a, const AnalyticSeries& b, int out_len = 0);
// a / b with b(0) != 0, triangular recurrence, out_len coefficients
AnalyticSeries div(const AnalyticSeries& a, const AnalyticSeries& b, int out_len);
AnalyticSeries derivative(const AnalyticSeries& a);
AnalyticSeries antiderivative(const AnalyticSeries& a);  // constant term 0
// log(a) with a(0) != 0, principal branch at a(0)
AnalyticSeries series_log(const AnalyticSeries& a, int out_len);
AnalyticSeries series_exp(const AnalyticSeries& a, int out_len);
// a^q = exp(q*log(a)), a(0) != 0
AnalyticSeries series_pow(const AnalyticSeries& a, cplx q, int out_len);
// a^k for integer k >= 0 by repeated products, truncated to out_len (0 = full)
AnalyticSeries pow_int(const AnalyticSeries& a, int k, int out_len = 0);
AnalyticSeries truncated(const AnalyticSeries& a, int len);
// divide by z (drops the constant term, which must vanish)
AnalyticSeries shift_down(const AnalyticSeries& a);
// multiply by z
AnalyticSeries shift_up(const AnalyticSeries& a);

double sup_coeff_diff(const AnalyticSeries& a, const AnalyticSeries& b, int upto);

// --- named series -------------------------------------------------------
// "z"                      identity
// "log(1/(1-z))"           coefficients 1/n
// "log((1+z)/(1-z))"       2/n on odd n
// "z/(1-z)"                coefficients 1
// "z/(1-z)^2"              coefficients n (Koebe)
AnalyticSeries named_series(const std::string& name, int n_terms);

// minimal truncation length that puts the geometric tail of a bounded-coefficient
// series below tol at radius r (coefficient bound B, |a_n| <= B)
int required_length(double r, double tol, double coeff_bound = 1.0);

}  // namespace semispec
