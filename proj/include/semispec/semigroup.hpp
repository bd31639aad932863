#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "semispec/series.hpp"

namespace semispec {

// One-parameter composition semigroup with attractive fixed point b inside the
// disk, described by its Koenigs data: h(phi_t(z)) = exp(gprime_b * t) * h(z),
// h(b) = 0, h'(b) = 1. A closed form for phi_t is optional; without one,
// evaluation inverts h by damped Newton with path continuation in t.
struct SemigroupSpec {
    AnalyticSeries h;
    cplx b{0.0, 0.0};
    cplx gprime_b{-1.0, 0.0};
    std::function<cplx(double, cplx)> closed_form;  // may be empty
    bool is_automorphism_group = false;
    std::string name = "custom";
    std::string series_name;  // non-empty when h can be regenerated at any length
    cplx series_scale{1.0, 0.0};

    cplx mu() const { return -gprime_b; }  // spiral parameter, Re mu >= 0

    AnalyticSeries regenerate_h(int n_terms) const;
};

// Built-in groups/semigroups (t >= 0 everywhere):
//   "rotation(a)"   phi_t = exp(i a t) z
//   "dilation(s)"   phi_t = exp(-s t) z
//   "example2"      h = log(1/(1-z)),        phi_t = 1-(1-z)^{exp(-t)}
//   "example3"      h = log((1+z)/(1-z))/2,  phi_t = Cayley-power form
//   "koebe"         h = z/(1-z)^2,           phi_t by the explicit inverse
SemigroupSpec make_semigroup(const std::string& name, int n_terms = 2048);

SemigroupSpec semigroup_from_json(const nlohmann::ordered_json& j, int n_terms = 2048);
nlohmann::ordered_json semigroup_to_json(const SemigroupSpec& spec);

// phi_t(z); closed form when available, otherwise Newton path continuation on
// h(w) = exp(gprime_b*t) h(z) with step doubling/halving.
cplx evaluate_phi(const SemigroupSpec& spec, double t, cplx z, double tol = 1e-12);

// generator G(z) = gprime_b * h(z)/h'(z); G(b) = 0
cplx generator_eval(const SemigroupSpec& spec, cplx z);

struct FixedPointCheck {
    double fixed_point_residual;  // max_t |phi_t(b) - b|
    double multiplier_residual;   // max_t |phi_t'(b) - exp(gprime_b t)| (central difference)
};
FixedPointCheck fixed_point_check(const SemigroupSpec& spec,
                                  const std::vector<double>& ts = {0.1, 1.0, 5.0});

struct KoenigsEstimate {
    cplx value;
    int iterations;
    double last_increment;
    bool converged;
};
// Pointwise Koenigs limit phi_n(z)/lambda^n for a single map with phi(0)=0,
// lambda = phi'(0), 0 < |lambda| < 1.
KoenigsEstimate koenigs_estimate(const std::function<cplx(cplx)>& phi, cplx lambda, cplx z,
                                 double tol = 1e-12, int n_max = 200);

// angle coordinate constant along spiral lines w -> exp(-t*mu) w;  Re mu > 0
double spiral_angle(cplx w, cplx mu);

struct SpiralGeometry {
    cplx mu{1.0, 0.0};
    double eta = 0.0;     // maximal angular opening of a spiral sector inside h(D)
    double theta0 = 0.0;  // center of the widest open arc
    enum class Status { exact_user_supplied, estimated } status = Status::estimated;
    double band_lo = 0.0, band_hi = 0.0;  // estimates at eps and eps/2
};

struct OpeningOptions {
    int boundary_samples = 4096;  // polyline resolution (power of two)
    double eps = 1e-3;            // polyline at |z| = 1-eps; second pass at eps/2
    double t_min = -12.0, t_max = 12.0;
    int t_samples = 121;
    int theta_samples = 512;
    double tol = 0.0;  // arc shrink; 0 = two grid steps
};

// Estimate of the maximal opening by sampling spiral lines against the
// polyline h((1-eps)*T), winding-number membership. A sector counts as open
// only when every sampled point of every line in the arc lies inside; lines
// that leave the truncated range are closed, so shrinking t_range can only
// widen the estimate. Requires Re mu > 0.
SpiralGeometry maximal_opening(const SemigroupSpec& spec, OpeningOptions opt = {});

// --- kernels shared with the serial reference / benchmark -----------------
int winding_number(const std::vector<cplx>& poly, cplx q);

// flags[i] = 1 iff the whole sampled spiral line through exp(i*theta_i) stays
// inside the polyline; parallel over theta
std::vector<std::uint8_t> open_angle_flags(const std::vector<cplx>& poly, cplx mu,
                                           const std::vector<double>& thetas,
                                           const std::vector<double>& ts);

// true when some pair of non-adjacent polyline segments crosses
bool polyline_self_intersects(const std::vector<cplx>& poly);

}  // namespace semispec
