#pragma once

// A^p norms, integral means, membership of Koenigs powers, test functions.

#include <string>
#include <vector>

#include "semispec/semigroup.hpp"
#include "semispec/series.hpp"
#include "semispec/weights.hpp"

namespace semispec {

// M_p(r,f); pass p = infinity for the sup over the circle.
// Trapezoid with node doubling (spectral accuracy for analytic integrands);
// the sup case polishes the best node by a few Newton steps on |f|^2.
double integral_mean(const AnalyticSeries& f, double p, double r);

struct RadialIntegral {
    double value = 0.0;          // accumulated integral over [0, r_max]
    double discarded_tail = 0.0; // projected mass beyond r_max (trend extrapolation)
    double r_max = 0.0;
    int levels = 0;              // dyadic levels consumed
    std::vector<double> increments;
};

struct BergmanNorm {
    double value = 0.0;       // the norm itself
    double power_value = 0.0; // integral of |f|^p against the weight
    RadialIntegral detail;
};

// integral of M_p^p(r,f) w(r) 2r dr, marched over dyadic radial levels until the
// projected remainder drops below rel_tol. Truncated representations of
// non-polynomial functions are only trusted while the series tail bound stays
// small next to the coefficient-sum envelope; levels past that point are not
// entered. Non-decaying level increments raise divergence_error with a fitted
// growth exponent.
BergmanNorm bergman_norm(const AnalyticSeries& f, double p, const RadialWeight& w,
                         double rel_tol = 1e-10, int j_max = 40);

// comparability-class surrogate for univalent f:
//   integral of M_inf^p(r,f) * (integral of  w(t) t dt over [r,1])  dr.
// Same marching and divergence reporting as bergman_norm. The value is a class
// representative, not the norm.
BergmanNorm univalent_norm(const AnalyticSeries& f, double p, const RadialWeight& w,
                           double rel_tol = 1e-9, int j_max = 40);

enum class Membership { in, out, inconclusive };
std::string to_string(Membership m);

struct MembershipVerdict {
    Membership verdict = Membership::inconclusive;
    enum class Method { closed_form_classifier, truncated_integral_growth } method =
        Method::closed_form_classifier;
    // classifier: exponent margin (negative means integrable, positive divergent);
    // growth analysis: the stabilized integral, or the fitted divergence exponent.
    double witness = 0.0;
    std::string note;
};

// h^k in A^p_w, decided through the opening eta of h(D): exponent
// e = k p eta cos^2(arg mu)/pi against the weight. Standard weights get the
// closed-form exponent comparison; everything else runs a dyadic growth scan of
// the tail-weighted integral.
MembershipVerdict membership_test(const AnalyticSeries& h, int k, double p,
                                  const RadialWeight& w, const SpiralGeometry& geo);

// comparability-class representative of the point-evaluation functional norm:
// ((1-|z|) what(|z|))^{-1/p}.
double point_eval_norm_estimate(cplx z, double p, const RadialWeight& w);

// ((1-|a|^2)/(1 - conj(a) z))^{(gamma+1)/p} as a series; truncation grows with |a|.
AnalyticSeries test_function(cplx a, double p, double gamma, int n_max = 1 << 16);

// closed-form path for the p-th power of the test function norm: the angular
// mean of |1 - s e^{i t}|^{-g} is a Gauss hypergeometric series in s^2, leaving
// a single radial quadrature. Used by the gamma calibration, where the series
// route would need five-digit truncations.
double test_function_norm_power(cplx a, double p, double gamma, const RadialWeight& w,
                                double rel_tol = 1e-8);

// sum over m of binom(m+g/2-1, m)^2 s^(2m): the angular mean above.
double angular_kernel_mean(double s, double g);

}  // namespace semispec
