#pragma once

// Finite sections, eigenvalues, essential-radius estimation, and assembly of
// generator / composition-operator spectra.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "semispec/difference.hpp"
#include "semispec/report.hpp"
#include "semispec/semigroup.hpp"
#include "semispec/series.hpp"
#include "semispec/weights.hpp"

namespace semispec {

// m_{2n+1} = 2 int_0^1 r^(2n+1) w(r) dr for n = 0..N; closed form for standard
// weights, clustered quadrature otherwise
std::vector<double> weight_moments(const RadialWeight& w, int N);

struct FiniteSection {
    int dim = 0;
    Eigen::MatrixXcd entries;
    std::string operator_tag;
    std::vector<double> moments;  // the basis normalization data
    bool lower_triangular() const;
};

// section of C_phi on the first N orthonormalized monomials; phi(0) must be 0
// (conjugate the fixed point to the origin first)
FiniteSection composition_section(const AnalyticSeries& phi, const RadialWeight& w, int N);

// section of a generic coefficient-level operator, column n = op(z^n)
FiniteSection operator_section(const std::function<AnalyticSeries(const AnalyticSeries&)>& op,
                               const RadialWeight& w, int N, const std::string& tag);

// triangular sections read the diagonal; otherwise a dense solve with a
// backward-error check. Sorted by descending modulus, then by argument.
std::vector<cplx> section_eigenvalues(const FiniteSection& T);

// max over the angle grid of wstar(r)/wstar(|map(r e^{i theta})|), one entry per
// radius. Parallel kernel; ref::star_ratio_profile is the serial twin.
std::vector<double> star_ratio_profile(const DiskMap& map, const RadialWeight& w,
                                       const std::vector<double>& radii, int angles);

struct EssentialRadiusOptions {
    int n_max = 6;   // deepest iterate
    int j_max = 14;  // radii 1-2^-j
    int angles = 32;
};

struct RadiusProfile {
    int n = 0;  // iterate order
    std::vector<double> radii;
    std::vector<double> ratios;
};

struct EssentialRadius {
    double value = 0.0;  // estimate for the requested p
    double band_lo = 0.0, band_hi = 0.0;
    double r_e2 = 0.0;  // the p = 2 estimate the value is derived from
    std::vector<RadiusProfile> profiles;
    std::vector<std::string> notes;
};

// r_e estimate from the wstar ratio asymptotics of the iterates phi_n:
// r_{e,2} = min_n Q_n^(1/2n) at the deepest radius level, band from the spread
// of the last three levels, then r_{e,p} = r_{e,2}^(2/p). phi must be univalent
// (caller-asserted; semigroup elements always are).
EssentialRadius essential_radius(const DiskMap& phi, const RadialWeight& w, double p,
                                 const EssentialRadiusOptions& opt = {});
EssentialRadius essential_radius(const SemigroupSpec& spec, double t, const RadialWeight& w,
                                 double p, const EssentialRadiusOptions& opt = {});

// {k G'(b) : h^k accepted by the membership test}, k = 0..k_max
SpectrumReport point_spectrum(const SemigroupSpec& spec, double p, const RadialWeight& w,
                              const SpiralGeometry& geo, int k_max = 64);

struct CphiOptions {
    int k_max = 64;
    int section_dim = 24;
    EssentialRadiusOptions radius;
};

// open disk of the essential radius plus the eigenvalue ladder phi'(0)^n, for a
// univalent non-automorphism fixing 0; cross-validated against the finite section
SpectrumReport cphi_spectrum(const AnalyticSeries& phi, double p, const RadialWeight& w,
                             const CphiOptions& opt = {});

// the generator spectrum assembled from one time sample: half-plane from the
// essential radius of C_{phi_t} plus the points k G'(b). The non-automorphism
// branch demands p = 2 or a passed continuity evidence handle.
SpectrumReport generator_spectrum(const SemigroupSpec& spec, double p, const RadialWeight& w,
                                  double t, const ContinuityEvidence& evidence,
                                  const SpiralGeometry& geo, int k_max = 64);

}  // namespace semispec
