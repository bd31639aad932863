#pragma once

// Norm estimation for differences of composition operators and the eventual
// norm-continuity / eventual compactness tests for semigroups.

#include <functional>
#include <string>
#include <vector>

#include "semispec/semigroup.hpp"
#include "semispec/weights.hpp"

namespace semispec {

using DiskMap = std::function<cplx(cplx)>;

// pseudohyperbolic distance between the two images of z
double sigma_field(const DiskMap& phi, const DiskMap& psi, cplx z);

// smallest gamma on the dyadic grid {1,2,4,8} whose test-function norm ratio
// ||f_{a,p,gamma}||^p / (what(a)(1-|a|)) stays within a x4 band over
// a = 1-2^-j, j = 3..12; +infinity when none qualifies. Cached per (weight, p).
double gamma0_calibrate(const RadialWeight& w, double p);

struct DifferenceEstimate {
    double value = 0.0;  // p-th power scale
    cplx argmax_a{0.0, 0.0};
    double sigma_sup = 0.0;  // largest sampled pseudo-hyperbolic separation
    std::string grid_meta;
    double gamma = 0.0;
    // "comparable" when the weight passes both doubling tests,
    // "upper_bound_only" when only the upper one holds
    std::string interpretation;
};

struct DifferenceOptions {
    int a_radius_levels = 12;  // a-grid radii 1-2^-j, j = 1..levels
    int a_angles = 32;
    int z_levels = 14;  // radial cells down to 1-2^-z_levels
    int z_angles = 64;
};

// sup over the a-grid of
//   (1-|a|)^gamma / what(a) *
//   integral of sigma^p(z) (|1-conj(a)phi|^-(gamma+1) + |1-conj(a)psi|^-(gamma+1)) w dA
DifferenceEstimate difference_functional(const DiskMap& phi, const DiskMap& psi, double p,
                                         const RadialWeight& w, double gamma,
                                         const DifferenceOptions& opt = {});

// the a-scan kernel: value of the bracketed functional for every a-point.
// sigma_pw holds sigma^p(z) already folded with the quadrature weight and w(z).
std::vector<double> difference_scan(const std::vector<cplx>& a_points, double gamma,
                                    const RadialWeight& w, const std::vector<cplx>& phi_vals,
                                    const std::vector<cplx>& psi_vals,
                                    const std::vector<double>& sigma_pw);

struct ContinuityEvidence {
    enum class Status { passed, failed, inconclusive };
    Status status = Status::inconclusive;
    double passed_at = 0.0;  // the accepted t0
    double decay_rate = 0.0; // fitted dyadic slope of the functional curve
    // (s, functional value) pairs for CSV export, all candidates concatenated
    std::vector<std::pair<double, double>> curve;
    std::vector<std::string> notes;
    bool passed() const { return status == Status::passed; }
};

// evaluates the difference functional along s = t(1 +- 2^-j), j = 3..10, for
// t in {1.1 t0, 2 t0}; a curve decays when its fitted dyadic slope is >= 0.5
// and the last value is below a tenth of the first. gamma <= 0 auto-calibrates
// to gamma0 + 1.
ContinuityEvidence eventual_norm_continuity_test(const SemigroupSpec& spec, double p,
                                                 const RadialWeight& w,
                                                 const std::vector<double>& t0_candidates,
                                                 double gamma,
                                                 const DifferenceOptions& opt = {});

struct CompactnessVerdict {
    double t = 0.0;
    enum class Status { compact, not_compact, inconclusive };
    Status status = Status::inconclusive;
    std::vector<double> radii;
    std::vector<double> profile;  // max over angles of wstar(r)/wstar(|phi_t|)
    double band_lo = 0.0, band_hi = 0.0;
};

// trend classification of the wstar ratio profile toward the boundary
std::vector<CompactnessVerdict> eventual_compactness_test(const SemigroupSpec& spec,
                                                          const RadialWeight& w,
                                                          const std::vector<double>& t_list,
                                                          int j_max = 10, int angles = 32);

}  // namespace semispec
