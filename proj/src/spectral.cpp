#include "semispec/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "semispec/bergman.hpp"
#include "semispec/errors.hpp"
#include "semispec/quadrature.hpp"

namespace semispec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

DiskMap time_slice(const SemigroupSpec& spec, double t) {
    if (spec.closed_form) {
        auto cf = spec.closed_form;
        return [cf, t](cplx z) { return cf(t, z); };
    }
    return [&spec, t](cplx z) { return evaluate_phi(spec, t, z); };
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::vector<double> weight_moments(const RadialWeight& w, int N) {
    if (N < 0) throw domain_error("weight_moments: N must be nonnegative");
    std::vector<double> m(static_cast<size_t>(N) + 1);
    if (w.kind() == RadialWeight::Kind::standard) {
        // Beta-function recurrence: m_0 = 1, m_{n+1} = m_n (n+1)/(n+alpha+2)
        const double alpha = w.alpha();
        m[0] = 1.0;
        for (int n = 0; n < N; ++n)
            m[static_cast<size_t>(n) + 1] =
                m[static_cast<size_t>(n)] * (double(n) + 1.0) / (double(n) + alpha + 2.0);
        return m;
    }
    for (int n = 0; n <= N; ++n) {
        const double k = 2.0 * n + 1.0;
        m[static_cast<size_t>(n)] =
            integrate_clustered([&](double r) { return 2.0 * std::pow(r, k) * w(r); }, 0.0, 1.0,
                                1e-13)
                .value;
        if (!(m[static_cast<size_t>(n)] > 0.0))
            throw precision_error("weight_moments: nonpositive moment", m[static_cast<size_t>(n)],
                                  double(n));
        if (n > 0 && m[static_cast<size_t>(n)] >= m[static_cast<size_t>(n) - 1])
            throw precision_error("weight_moments: moments must decrease strictly",
                                  m[static_cast<size_t>(n)], double(n));
    }
    return m;
}

bool FiniteSection::lower_triangular() const {
    double scale = 0.0;
    for (int j = 0; j < dim; ++j)
        for (int n = 0; n < dim; ++n) scale = std::max(scale, std::abs(entries(j, n)));
    for (int j = 0; j < dim; ++j)
        for (int n = j + 1; n < dim; ++n)
            if (std::abs(entries(j, n)) > 1e-14 * scale) return false;
    return true;
}

FiniteSection composition_section(const AnalyticSeries& phi, const RadialWeight& w, int N) {
    if (N < 1) throw domain_error("composition_section: N must be positive");
    if (phi.c.empty() || std::abs(phi.c[0]) > 1e-12)
        throw domain_error("composition_section: phi(0) must be 0 (conjugate the fixed point "
                           "to the origin first)");
    FiniteSection sec;
    sec.dim = N;
    sec.operator_tag = "composition";
    sec.moments = weight_moments(w, N - 1);
    sec.entries = Eigen::MatrixXcd::Zero(N, N);

    AnalyticSeries pw({cplx{1.0, 0.0}}, 1.0, 0.0, true);  // phi^0
    for (int n = 0; n < N; ++n) {
        for (int j = 0; j < N; ++j) {
            const cplx coeff = j < static_cast<int>(pw.c.size()) ? pw.c[static_cast<size_t>(j)]
                                                                 : cplx{0.0, 0.0};
            sec.entries(j, n) = coeff * std::sqrt(sec.moments[static_cast<size_t>(j)] /
                                                  sec.moments[static_cast<size_t>(n)]);
        }
        if (n + 1 < N) pw = mul(pw, phi, N);
    }
    return sec;
}

FiniteSection operator_section(const std::function<AnalyticSeries(const AnalyticSeries&)>& op,
                               const RadialWeight& w, int N, const std::string& tag) {
    if (N < 1) throw domain_error("operator_section: N must be positive");
    FiniteSection sec;
    sec.dim = N;
    sec.operator_tag = tag;
    sec.moments = weight_moments(w, N - 1);
    sec.entries = Eigen::MatrixXcd::Zero(N, N);
    for (int n = 0; n < N; ++n) {
        std::vector<cplx> mono(static_cast<size_t>(n) + 1, cplx{0.0, 0.0});
        mono.back() = 1.0;
        const AnalyticSeries img = op(AnalyticSeries(std::move(mono), 1.0, 0.0, true));
        for (int j = 0; j < N; ++j) {
            const cplx coeff = j < static_cast<int>(img.c.size()) ? img.c[static_cast<size_t>(j)]
                                                                  : cplx{0.0, 0.0};
            sec.entries(j, n) = coeff * std::sqrt(sec.moments[static_cast<size_t>(j)] /
                                                  sec.moments[static_cast<size_t>(n)]);
        }
    }
    return sec;
}

std::vector<cplx> section_eigenvalues(const FiniteSection& T) {
    std::vector<cplx> eig;
    eig.reserve(static_cast<size_t>(T.dim));
    if (T.lower_triangular()) {
        for (int j = 0; j < T.dim; ++j) eig.push_back(T.entries(j, j));
    } else {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(T.entries, true);
        if (solver.info() != Eigen::Success)
            throw precision_error("section_eigenvalues: dense eigensolver did not converge", 0.0,
                                  0.0);
        const double scale = T.entries.norm();
        for (int j = 0; j < T.dim; ++j) {
            const cplx lambda = solver.eigenvalues()(j);
            const Eigen::VectorXcd v = solver.eigenvectors().col(j);
            const double backward = (T.entries * v - lambda * v).norm() / v.norm();
            if (backward > 1e-10 * std::max(scale, 1.0))
                throw precision_error("section_eigenvalues: backward error above tolerance",
                                      backward, std::abs(lambda));
            eig.push_back(lambda);
        }
    }
    std::sort(eig.begin(), eig.end(), [](cplx a, cplx b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        return std::arg(a) < std::arg(b);
    });
    return eig;
}

std::vector<double> star_ratio_profile(const DiskMap& map, const RadialWeight& w,
                                       const std::vector<double>& radii, int angles) {
    if (angles < 1) throw domain_error("star_ratio_profile: need at least one angle");
    const long nj = static_cast<long>(radii.size());
    std::vector<double> num(static_cast<size_t>(nj));
    for (long j = 0; j < nj; ++j) num[static_cast<size_t>(j)] = w.star(radii[static_cast<size_t>(j)]);

    std::vector<double> ratios(static_cast<size_t>(nj) * static_cast<size_t>(angles), 0.0);
    std::atomic<bool> escaped{false};
    const long total = nj * angles;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < total; ++i) {
        if (escaped.load(std::memory_order_relaxed)) continue;
        const long j = i / angles, k = i % angles;
        const cplx z = std::polar(radii[static_cast<size_t>(j)], kTwoPi * double(k) / angles);
        const cplx v = map(z);
        const double m = std::abs(v);
        if (m >= 1.0) {
            escaped.store(true, std::memory_order_relaxed);
            continue;
        }
        ratios[static_cast<size_t>(i)] =
            m < 1e-12 ? 0.0 : num[static_cast<size_t>(j)] / w.star(m);
    }
    if (escaped.load())
        throw domain_error("star_ratio_profile: map image left the unit disk at a sample point");

    std::vector<double> out(static_cast<size_t>(nj), 0.0);
    for (long j = 0; j < nj; ++j)
        for (int k = 0; k < angles; ++k)
            out[static_cast<size_t>(j)] = std::max(
                out[static_cast<size_t>(j)],
                ratios[static_cast<size_t>(j) * static_cast<size_t>(angles) + static_cast<size_t>(k)]);
    return out;
}

EssentialRadius essential_radius(const DiskMap& phi, const RadialWeight& w, double p,
                                 const EssentialRadiusOptions& opt) {
    if (!(p >= 1.0)) throw domain_error("essential_radius: p must be at least 1");
    if (opt.n_max < 1 || opt.j_max < 4)
        throw domain_error("essential_radius: degenerate sampling options");

    std::vector<double> radii;
    for (int j = 1; j <= opt.j_max; ++j) radii.push_back(1.0 - std::pow(0.5, j));

    EssentialRadius out;
    for (int n = 1; n <= opt.n_max; ++n) {
        DiskMap iterate = [&phi, n](cplx z) {
            for (int i = 0; i < n; ++i) z = phi(z);
            return z;
        };
        RadiusProfile prof;
        prof.n = n;
        prof.radii = radii;
        prof.ratios = star_ratio_profile(iterate, w, radii, opt.angles);
        out.profiles.push_back(std::move(prof));
    }

    // r_e candidates from the trailing radius levels
    auto candidate = [&](size_t level) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& prof : out.profiles) {
            const double q = prof.ratios[level];
            const double c = q <= 0.0 ? 0.0 : std::pow(q, 1.0 / (2.0 * prof.n));
            best = std::min(best, c);
        }
        return best;
    };
    const size_t deepest = radii.size() - 1;
    size_t span = 3;
    for (const auto& prof : out.profiles) {
        // widen the band when the tail of the profile refuses to settle
        const size_t n = prof.ratios.size();
        if (n < 5) break;
        double lo3 = prof.ratios[n - 3], hi3 = lo3;
        double lo5 = prof.ratios[n - 5], hi5 = lo5;
        for (size_t i = n - 3; i < n; ++i) {
            lo3 = std::min(lo3, prof.ratios[i]);
            hi3 = std::max(hi3, prof.ratios[i]);
        }
        for (size_t i = n - 5; i < n; ++i) {
            lo5 = std::min(lo5, prof.ratios[i]);
            hi5 = std::max(hi5, prof.ratios[i]);
        }
        if (hi5 - lo5 > 10.0 * (hi3 - lo3) + 1e-300 && hi3 > lo3) {
            span = 5;
            out.notes.push_back("non-monotone radius profile at iterate " +
                                std::to_string(prof.n) + "; band widened to five levels");
        }
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (size_t l = 0; l < span; ++l) {
        const double c = candidate(deepest - l);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    out.r_e2 = candidate(deepest);
    out.value = std::pow(out.r_e2, 2.0 / p);
    out.band_lo = std::pow(lo, 2.0 / p);
    out.band_hi = std::pow(hi, 2.0 / p);
    out.notes.push_back("p-dependence is the exponent 2/p applied to the p=2 estimate, "
                        "by construction");
    return out;
}

EssentialRadius essential_radius(const SemigroupSpec& spec, double t, const RadialWeight& w,
                                 double p, const EssentialRadiusOptions& opt) {
    if (!(t > 0.0)) throw domain_error("essential_radius: t must be positive");
    return essential_radius(time_slice(spec, t), w, p, opt);
}

SpectrumReport point_spectrum(const SemigroupSpec& spec, double p, const RadialWeight& w,
                              const SpiralGeometry& geo, int k_max) {
    SpectrumReport rep;
    rep.operator_label = "generator";
    rep.derivation = spec.is_automorphism_group
                         ? "automorphism group: the spectrum is the closure of the eigenvalue "
                           "ladder k G'(b), every Koenigs power staying in the space"
                         : "eigenvalue ladder k G'(b) filtered by membership of the Koenigs "
                           "powers h^k";
    std::vector<cplx> pts;
    for (int k = 0; k <= k_max; ++k) {
        const MembershipVerdict v = membership_test(spec.h, k, p, w, geo);
        if (v.verdict == Membership::in) {
            pts.push_back(double(k) * spec.gprime_b);
        } else if (v.verdict == Membership::inconclusive) {
            rep.caveats.push_back("membership of h^" + std::to_string(k) +
                                  " inconclusive (" + v.note + "); point neither listed nor "
                                  "excluded");
        } else {
            rep.caveats.push_back("first excluded power k = " + std::to_string(k) +
                                  "; larger k excluded by exponent monotonicity");
            break;
        }
    }
    rep.caveats.push_back("point list truncated at k_max = " + std::to_string(k_max));
    rep.parts.push_back(SpectrumPart::points(std::move(pts), "eigenvalue_formula"));
    return rep;
}

SpectrumReport cphi_spectrum(const AnalyticSeries& phi, double p, const RadialWeight& w,
                             const CphiOptions& opt) {
    if (phi.c.size() < 2 || std::abs(phi.c[0]) > 1e-12)
        throw domain_error("cphi_spectrum: phi must fix the origin (conjugate first)");
    const cplx s = phi.c[1];
    if (std::abs(s) >= 1.0 - 1e-12)
        throw domain_error("cphi_spectrum: |phi'(0)| = 1 within tolerance; automorphisms go "
                           "through the generator point-spectrum path");
    if (std::abs(s) < 1e-14)
        throw domain_error("cphi_spectrum: phi'(0) = 0 contradicts univalence");

    const EssentialRadius re =
        essential_radius([&phi](cplx z) { return eval(phi, z); }, w, p, opt.radius);

    SpectrumReport rep;
    rep.operator_label = "composition";
    rep.derivation = "open essential disk from the wstar ratio asymptotics plus the "
                     "eigenvalue ladder phi'(0)^n";
    rep.parts.push_back(SpectrumPart::disk(re.value, false));
    std::vector<cplx> pts;
    cplx pw{1.0, 0.0};
    for (int n = 0; n <= opt.k_max; ++n) {
        pts.push_back(pw);
        pw *= s;
    }
    rep.parts.push_back(SpectrumPart::points(std::move(pts), "eigenvalue_formula"));
    rep.caveats.push_back("essential radius estimated with band [" + fmt(re.band_lo) + ", " +
                          fmt(re.band_hi) + "]");
    rep.caveats.push_back("eigenvalue ladder truncated at n = " + std::to_string(opt.k_max));

    const double slack = (re.band_hi - re.value) + 1e-6;
    const auto eigs = section_eigenvalues(composition_section(phi, w, opt.section_dim));
    int misses = 0;
    cplx worst{0.0, 0.0};
    for (const cplx& lambda : eigs) {
        if (!rep.contains(lambda, 1e-6, slack)) {
            ++misses;
            worst = lambda;
        }
    }
    if (misses == 0) {
        rep.caveats.push_back("finite-section cross-check (N = " +
                              std::to_string(opt.section_dim) + "): all eigenvalues consistent");
    } else {
        rep.caveats.push_back("finite-section cross-check: " + std::to_string(misses) +
                              " eigenvalue(s) outside the reported set, worst " +
                              fmt(worst.real()) + (worst.imag() < 0 ? "-" : "+") +
                              fmt(std::abs(worst.imag())) + "i");
    }
    return rep;
}

SpectrumReport generator_spectrum(const SemigroupSpec& spec, double p, const RadialWeight& w,
                                  double t, const ContinuityEvidence& evidence,
                                  const SpiralGeometry& geo, int k_max) {
    if (spec.is_automorphism_group) {
        SpectrumReport rep = point_spectrum(spec, p, w, geo, k_max);
        rep.derivation = "automorphism branch: the spectrum equals its point spectrum, the "
                         "closed eigenvalue ladder k G'(b)";
        return rep;
    }
    if (!(t > 0.0)) throw domain_error("generator_spectrum: t must be positive");
    if (p != 2.0 && !evidence.passed())
        throw domain_error("generator_spectrum: the non-automorphism branch needs p = 2 or a "
                           "passed eventual norm-continuity test; run the continuity test and "
                           "pass its evidence");

    SpectrumReport rep = point_spectrum(spec, p, w, geo, k_max);
    rep.derivation = "half-plane pulled back from the essential disk of the time-t slice "
                     "under the exponential map, plus the eigenvalue ladder k G'(b)";

    const EssentialRadius re = essential_radius(spec, t, w, p);
    constexpr double kFloor = 1e-10;
    if (re.value > kFloor) {
        rep.parts.insert(rep.parts.begin(), SpectrumPart::half_plane(std::log(re.value) / t));
        rep.caveats.push_back("half-plane bound carries the essential-radius band [" +
                              fmt(re.band_lo) + ", " + fmt(re.band_hi) + "]");
        if (spec.closed_form) {
            const EssentialRadius re2 = essential_radius(spec, 2.0 * t, w, p);
            if (re2.value > kFloor) {
                const double b1 = std::log(re.value) / t;
                const double b2 = std::log(re2.value) / (2.0 * t);
                const double tol = std::abs(std::log(std::max(re.band_hi, kFloor)) -
                                            std::log(std::max(re.band_lo, kFloor))) /
                                       t +
                                   1e-6;
                if (std::abs(b1 - b2) > tol)
                    rep.caveats.push_back("time-consistency drift: half-plane bounds " +
                                          fmt(b1) + " (t) vs " + fmt(b2) + " (2t)");
            }
        }
    } else {
        rep.caveats.push_back("essential radius below 1e-10 at this resolution; the half-plane "
                              "component is empty and omitted");
    }
    rep.caveats.push_back("preimages under exp(t·) repeat modulo 2*pi*i/t; only principal "
                          "representatives are listed");
    return rep;
}

}  // namespace semispec
