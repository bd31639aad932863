#pragma once

// Coefficient-level integral operators tied to a Koenigs function h, the
// resolvent of the semigroup generator, and the compact-resolvent tests.

#include <string>
#include <vector>

#include "semispec/report.hpp"
#include "semispec/semigroup.hpp"
#include "semispec/series.hpp"
#include "semispec/weights.hpp"

namespace semispec {

// z^c * sum a_n z^n with a complex offset c; antiderivatives track the offset
// exactly: the primitive of z^(c-1+n) is z^(c+n)/(c+n) for Re c > 0.
struct FractionalSeries {
    cplx offset{0.0, 0.0};
    AnalyticSeries part;
};

FractionalSeries fractional_antiderivative(const FractionalSeries& f);

// R_h f = (1/h) int_0^z f h' ; requires h(0) = 0, h'(0) != 0
AnalyticSeries apply_R_h(const AnalyticSeries& h, const AnalyticSeries& f);
// P_h f = (1/(z h)) int_0^z f zeta h'
AnalyticSeries apply_P_h(const AnalyticSeries& h, const AnalyticSeries& f);
// Q_h f = (1/z) int_0^z f (zeta h'/h)
AnalyticSeries apply_Q_h(const AnalyticSeries& h, const AnalyticSeries& f);
// L_h f = (1/z) int_0^z f (log(h/zeta))'
AnalyticSeries apply_L_h(const AnalyticSeries& h, const AnalyticSeries& f);
// J f = (1/z) int_0^z f
AnalyticSeries apply_J(const AnalyticSeries& f);
// M_z f = z f
AnalyticSeries apply_M_z(const AnalyticSeries& f);

// (lambda - generator)^-1 applied to f, via the fractional power h^c with
// c = lambda/mu; requires the fixed point at 0 and Re c > 0
AnalyticSeries apply_resolvent(const SemigroupSpec& spec, cplx lambda, const AnalyticSeries& f);

enum class BlochVerdict { little_o, bounded, inconclusive };
std::string to_string(BlochVerdict v);

struct BlochProfile {
    BlochVerdict verdict = BlochVerdict::inconclusive;
    std::vector<double> radii;
    std::vector<double> values;  // max over angles of (1-r^2)|g'(r e^{i theta})|
};

// dyadic radial profile of (1-r^2)|g'| with a trend classification; this is the
// compact-resolvent criterion applied to g = log(h/z)
BlochProfile bloch_little_o_test(const AnalyticSeries& g, int j_max = 11, int angles = 64);

// the profile kernel alone (parallel; ref::bloch_profile is the serial twin)
std::vector<double> bloch_profile(const AnalyticSeries& g, const std::vector<double>& radii,
                                  int angles);

enum class BoundaryVerdict { divergent_everywhere, not_divergent, mixed };
std::string to_string(BoundaryVerdict v);

struct BoundaryTestResult {
    BoundaryVerdict verdict = BoundaryVerdict::mixed;
    std::vector<double> zeta_angles;
    std::vector<std::vector<double>> ratios;  // per angle: |G(r z)/(r z - z)| over the radii
    std::vector<double> radii;
};

// |G(r zeta)/(r zeta - zeta)| growth scan over the boundary grid; divergence at
// every zeta is the compact-resolvent criterion seen from the generator side
BoundaryTestResult generator_boundary_test(const SemigroupSpec& spec, int zeta_count = 16,
                                           int j_max = 10);

// {1/(k+1) : h^k accepted} plus {0}; refuses when log(h/z) is not little-Bloch.
// At p = 2 the point set is cross-checked against the finite section of R_h.
SpectrumReport r_h_spectrum(const AnalyticSeries& h, cplx mu, double p, const RadialWeight& w,
                            const SpiralGeometry& geo, int k_max = 64);

}  // namespace semispec
