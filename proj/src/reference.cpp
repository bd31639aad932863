#include "semispec/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "semispec/errors.hpp"
#include "semispec/semigroup.hpp"

// Serial twins of the parallel kernels. The loop bodies are copies of the
// OpenMP versions with the pragmas removed; both sides reduce in index order,
// so the outputs agree bitwise.

namespace semispec::ref {
namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::vector<double> difference_scan(const std::vector<cplx>& a_points, double gamma,
                                    const RadialWeight& w, const std::vector<cplx>& phi_vals,
                                    const std::vector<cplx>& psi_vals,
                                    const std::vector<double>& sigma_pw) {
    const long na = static_cast<long>(a_points.size());
    const size_t nz = sigma_pw.size();
    std::vector<double> out(static_cast<size_t>(na), 0.0);
    const double e = -(gamma + 1.0) * 0.5;
    for (long i = 0; i < na; ++i) {
        const cplx ac = std::conj(a_points[static_cast<size_t>(i)]);
        double s = 0.0;
        for (size_t k = 0; k < nz; ++k) {
            if (sigma_pw[k] == 0.0) continue;
            const double d1 = std::norm(1.0 - ac * phi_vals[k]);
            const double d2 = std::norm(1.0 - ac * psi_vals[k]);
            s += sigma_pw[k] * (std::pow(d1, e) + std::pow(d2, e));
        }
        const double am = std::abs(a_points[static_cast<size_t>(i)]);
        out[static_cast<size_t>(i)] = std::pow(1.0 - am, gamma) / w.tail(am) * s;
    }
    return out;
}

std::vector<double> star_ratio_profile(const DiskMap& map, const RadialWeight& w,
                                       const std::vector<double>& radii, int angles) {
    if (angles < 1) throw domain_error("star_ratio_profile: need at least one angle");
    const long nj = static_cast<long>(radii.size());
    std::vector<double> num(static_cast<size_t>(nj));
    for (long j = 0; j < nj; ++j) num[static_cast<size_t>(j)] = w.star(radii[static_cast<size_t>(j)]);

    std::vector<double> ratios(static_cast<size_t>(nj) * static_cast<size_t>(angles), 0.0);
    bool escaped = false;
    const long total = nj * angles;
    for (long i = 0; i < total; ++i) {
        if (escaped) continue;
        const long j = i / angles, k = i % angles;
        const cplx z = std::polar(radii[static_cast<size_t>(j)], kTwoPi * double(k) / angles);
        const cplx v = map(z);
        const double m = std::abs(v);
        if (m >= 1.0) {
            escaped = true;
            continue;
        }
        ratios[static_cast<size_t>(i)] =
            m < 1e-12 ? 0.0 : num[static_cast<size_t>(j)] / w.star(m);
    }
    if (escaped)
        throw domain_error("star_ratio_profile: map image left the unit disk at a sample point");

    std::vector<double> out(static_cast<size_t>(nj), 0.0);
    for (long j = 0; j < nj; ++j)
        for (int k = 0; k < angles; ++k)
            out[static_cast<size_t>(j)] = std::max(
                out[static_cast<size_t>(j)],
                ratios[static_cast<size_t>(j) * static_cast<size_t>(angles) + static_cast<size_t>(k)]);
    return out;
}

std::vector<double> bloch_profile(const AnalyticSeries& g, const std::vector<double>& radii,
                                  int angles) {
    const long nj = static_cast<long>(radii.size());
    std::vector<double> vals(static_cast<size_t>(nj) * static_cast<size_t>(angles), 0.0);
    const long total = nj * static_cast<long>(angles);
    for (long i = 0; i < total; ++i) {
        const long j = i / angles, k = i % angles;
        const double r = radii[static_cast<size_t>(j)];
        const cplx z = std::polar(r, kTwoPi * double(k) / angles);
        vals[static_cast<size_t>(i)] = (1.0 - r * r) * std::abs(eval_derivative(g, z));
    }
    std::vector<double> out(static_cast<size_t>(nj), 0.0);
    for (long j = 0; j < nj; ++j)
        for (int k = 0; k < angles; ++k)
            out[static_cast<size_t>(j)] = std::max(
                out[static_cast<size_t>(j)],
                vals[static_cast<size_t>(j) * static_cast<size_t>(angles) + static_cast<size_t>(k)]);
    return out;
}

std::vector<std::uint8_t> open_angle_flags(const std::vector<cplx>& poly, cplx mu,
                                           const std::vector<double>& thetas,
                                           const std::vector<double>& ts) {
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (const cplx& p : poly) {
        rmin = std::min(rmin, std::abs(p));
        rmax = std::max(rmax, std::abs(p));
    }
    std::vector<std::uint8_t> flags(thetas.size(), 0);
    const long n = static_cast<long>(thetas.size());
    for (long i = 0; i < n; ++i) {
        const cplx dir = std::polar(1.0, thetas[static_cast<size_t>(i)]);
        bool open = true;
        for (double t : ts) {
            const cplx w = dir * std::exp(-t * mu);
            const double r = std::abs(w);
            if (r >= rmax) {
                open = false;
                break;
            }
            if (r <= rmin) continue;
            if (winding_number(poly, w) == 0) {
                open = false;
                break;
            }
        }
        flags[static_cast<size_t>(i)] = open ? 1 : 0;
    }
    return flags;
}

}  // namespace semispec::ref
