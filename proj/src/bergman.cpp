#include "semispec/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "semispec/errors.hpp"
#include "semispec/quadrature.hpp"

namespace semispec {
namespace {

size_t next_pow2(size_t n) {
    size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

double sup_on_circle(const AnalyticSeries& f, double r) {
    const size_t m0 = std::clamp(next_pow2(f.c.size() * 2), size_t{256}, size_t{4096});
    const auto vals = circle_values(f, r, m0);
    size_t best = 0;
    double fmax = 0.0;
    for (size_t k = 0; k < vals.size(); ++k) {
        const double v = std::abs(vals[k]);
        if (v > fmax) {
            fmax = v;
            best = k;
        }
    }
    // polish the winning node: Newton on d/dtheta |f|^2
    const double dtheta = 2.0 * std::numbers::pi / double(m0);
    double theta = dtheta * double(best);
    for (int it = 0; it < 3; ++it) {
        const cplx z = std::polar(r, theta);
        const cplx fv = eval(f, z);
        const cplx fp = eval_derivative(f, z);
        const cplx fpp = eval_second_derivative(f, z);
        const cplx zfp = cplx{0.0, 1.0} * z * fp;
        const double g1 = 2.0 * std::real(std::conj(fv) * zfp);
        const double g2 = 2.0 * (std::norm(zfp) +
                                 std::real(std::conj(fv) * (-z * fp - z * z * fpp)));
        if (g2 >= 0.0 || std::abs(g1) < 1e-30) break;  // not at a max basin
        double step = -g1 / g2;
        step = std::clamp(step, -dtheta, dtheta);
        theta += step;
        fmax = std::max(fmax, std::abs(eval(f, std::polar(r, theta))));
    }
    return fmax;
}

}  // namespace

double integral_mean(const AnalyticSeries& f, double p, double r) {
    if (!(r > 0.0) || r >= f.radius_hint)
        throw precision_error("integral_mean: radius outside the certified range", 0.0, r);
    if (f.c.empty()) return 0.0;
    if (std::isinf(p)) return sup_on_circle(f, r);
    if (!(p > 0.0)) throw domain_error("integral_mean: p must be positive");

    size_t m = std::clamp(next_pow2(f.c.size() + 2), size_t{64}, size_t{8192});
    double prev = -1.0;
    for (; m <= (size_t{1} << 20); m <<= 1) {
        const auto vals = circle_values(f, r, m);
        double acc = 0.0;
        for (const cplx& v : vals) acc += std::pow(std::abs(v), p);
        const double mean = acc / double(m);
        if (prev >= 0.0 && std::abs(mean - prev) <= 1e-10 * (std::abs(mean) + 1e-300))
            return std::pow(mean, 1.0 / p);
        prev = mean;
    }
    return std::pow(prev, 1.0 / p);  // node budget exhausted; last refinement stands
}

namespace {

// marches F over [0,1/2], [1/2,3/4], ... accumulating until the trend-projected
// remainder is below rel_tol, the level cap is hit, or the increments refuse to
// decay (divergence).
RadialIntegral march_dyadic(const std::function<double(double)>& F, double rel_tol,
                            int j_max, const std::string& what) {
    RadialIntegral out;
    double lo = 0.0, hi = 0.5;
    for (int j = 0; j <= j_max; ++j) {
        const double inc = integrate(F, lo, hi, 1e-12, 0.0).value;
        out.increments.push_back(inc);
        out.value += inc;
        out.r_max = hi;
        out.levels = j + 1;
        const size_t n = out.increments.size();
        if (n >= 4) {
            const double a1 = out.increments[n - 2], a2 = out.increments[n - 1];
            if (a2 <= 0.0) {  // integrand dead: nothing left to accumulate
                out.discarded_tail = 0.0;
                return out;
            }
            const double rho = std::min(a2 / std::max(a1, 1e-300), 0.95);
            out.discarded_tail = a2 * rho / (1.0 - rho);
            if (out.discarded_tail < rel_tol * std::abs(out.value) + 1e-300) return out;
        }
        lo = hi;
        hi = 1.0 - 0.5 * (1.0 - hi);
    }
    // cap reached: classify the tail trend over the last three ratios
    const size_t n = out.increments.size();
    double rho_sum = 0.0;
    int rho_cnt = 0;
    for (size_t i = n - 3; i < n; ++i) {
        if (out.increments[i - 1] > 0.0) {
            rho_sum += out.increments[i] / out.increments[i - 1];
            ++rho_cnt;
        }
    }
    const double rho_bar = rho_cnt ? rho_sum / rho_cnt : 0.0;
    if (rho_bar >= 0.85)
        throw divergence_error(what + ": level increments do not decay, integral possibly infinite",
                               1.0 + std::log2(std::max(rho_bar, 1e-6)), out.value);
    const double rho = std::min(rho_bar, 0.95);
    out.discarded_tail = out.increments.back() * rho / (1.0 - rho);
    return out;
}

// the deepest dyadic level where the truncation tail of f is still negligible
// against the coefficient-sum envelope; polynomial-exact series get no cap.
int faithful_level_cap(const AnalyticSeries& f, int j_max) {
    if (f.tail_bound <= 0.0) return j_max;
    std::vector<cplx> env(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) env[i] = std::abs(f.c[i]);
    AnalyticSeries envelope(std::move(env), f.radius_hint, 0.0, true);
    int cap = 0;
    for (int j = 1; j <= j_max; ++j) {
        const double r = 1.0 - std::pow(0.5, j + 1);
        if (r >= f.radius_hint) break;
        const double e = std::abs(eval(envelope, cplx{r, 0.0}));
        if (f.eval_error_bound(r) > 1e-4 * (e + 1e-300)) break;
        cap = j;
    }
    return cap;
}

}  // namespace

BergmanNorm bergman_norm(const AnalyticSeries& f, double p, const RadialWeight& w,
                         double rel_tol, int j_max) {
    if (!(p > 0.0)) throw domain_error("bergman_norm: p must be positive");
    const int cap = faithful_level_cap(f, j_max);
    if (f.tail_bound > 0.0 && cap < 4)
        throw precision_error("bergman_norm: series truncation too short to march the radial "
                              "integral", 0.0, double(cap));
    auto F = [&](double r) {
        const double m = integral_mean(f, p, r);
        return std::pow(m, p) * w(r) * 2.0 * r;
    };
    BergmanNorm out;
    out.detail = march_dyadic(F, rel_tol, std::min(cap, j_max), "bergman_norm");
    out.power_value = out.detail.value;
    out.value = std::pow(out.power_value, 1.0 / p);
    return out;
}

BergmanNorm univalent_norm(const AnalyticSeries& f, double p, const RadialWeight& w,
                           double rel_tol, int j_max) {
    if (!(p > 0.0)) throw domain_error("univalent_norm: p must be positive");
    const int cap = faithful_level_cap(f, j_max);
    if (f.tail_bound > 0.0 && cap < 4)
        throw precision_error("univalent_norm: series truncation too short to march the radial "
                              "integral", 0.0, double(cap));
    auto F = [&](double r) {
        const double m = integral_mean(f, std::numeric_limits<double>::infinity(), r);
        return std::pow(m, p) * w.tail_first_moment(r);
    };
    BergmanNorm out;
    out.detail = march_dyadic(F, rel_tol, std::min(cap, j_max), "univalent_norm");
    out.power_value = out.detail.value;
    out.value = std::pow(out.power_value, 1.0 / p);
    return out;
}

std::string to_string(Membership m) {
    switch (m) {
        case Membership::in: return "in";
        case Membership::out: return "out";
        default: return "inconclusive";
    }
}

MembershipVerdict membership_test(const AnalyticSeries& h, int k, double p,
                                  const RadialWeight& w, const SpiralGeometry& geo) {
    (void)h;  // decided through the opening data, not the series itself
    if (k < 0) throw domain_error("membership_test: k must be nonnegative");
    if (!(p > 0.0)) throw domain_error("membership_test: p must be positive");

    double e = 0.0;
    if (k > 0 && geo.eta > 0.0) {
        const double c = std::cos(std::arg(geo.mu));
        e = double(k) * p * geo.eta * c * c / std::numbers::pi;
    }

    MembershipVerdict out;
    if (w.kind() == RadialWeight::Kind::standard) {
        const double alpha = w.alpha();
        out.method = MembershipVerdict::Method::closed_form_classifier;
        out.witness = e - (alpha + 2.0);
        if (std::abs(out.witness) < 1e-12) {
            out.verdict = Membership::inconclusive;
            out.note = "exponent sits exactly on the integrability boundary";
        } else {
            out.verdict = out.witness < 0.0 ? Membership::in : Membership::out;
        }
        return out;
    }

    out.method = MembershipVerdict::Method::truncated_integral_growth;
    auto F = [&](double r) { return w.tail(r) * std::pow(1.0 - r, -e); };
    try {
        const RadialIntegral scan = march_dyadic(F, 1e-6, 14, "membership_test");
        out.verdict = Membership::in;
        out.witness = scan.value + scan.discarded_tail;
    } catch (const divergence_error& err) {
        if (err.growth_exponent > 0.05) {
            out.verdict = Membership::out;
            out.witness = err.growth_exponent;
        } else {
            out.verdict = Membership::inconclusive;
            out.witness = err.growth_exponent;
            out.note = "borderline growth trend";
        }
    }
    return out;
}

double point_eval_norm_estimate(cplx z, double p, const RadialWeight& w) {
    const double r = std::abs(z);
    if (r >= 1.0) throw domain_error("point_eval_norm_estimate: z must lie in the unit disk");
    if (!(p > 0.0)) throw domain_error("point_eval_norm_estimate: p must be positive");
    return std::pow((1.0 - r) * w.tail(r), -1.0 / p);
}

AnalyticSeries test_function(cplx a, double p, double gamma, int n_max) {
    if (!(p > 0.0) || !(gamma > 0.0))
        throw domain_error("test_function: need p > 0 and gamma > 0");
    const double am = std::abs(a);
    if (am >= 1.0) throw domain_error("test_function: a must lie in the unit disk");
    const double q = (gamma + 1.0) / p;
    const double c0 = std::pow(1.0 - am * am, q);
    if (am == 0.0) return AnalyticSeries({cplx{1.0, 0.0}}, 1.0, 0.0, true);

    // run the coefficient recurrence until the geometric tail is negligible
    const double ratio_cap = 0.5 * (1.0 + am);
    const int n_ratio = static_cast<int>(2.0 * (q + 1.0) * am / (1.0 - am)) + 64;
    std::vector<cplx> coeffs;
    coeffs.reserve(256);
    cplx c = c0;
    coeffs.push_back(c);
    for (int n = 0;; ++n) {
        c *= std::conj(a) * (double(n) + q) / (double(n) + 1.0);
        coeffs.push_back(c);
        if (n + 1 >= n_ratio &&
            std::abs(c) * ratio_cap / (1.0 - ratio_cap) < 1e-14 * c0)
            break;
        if (n + 2 > n_max)
            throw precision_error("test_function: truncation budget exhausted (a too close to "
                                  "the boundary)", 0.0, am);
    }
    const double tail = std::abs(coeffs.back()) / (1.0 - ratio_cap);
    return AnalyticSeries(std::move(coeffs), 1.0, tail, true);
}

double angular_kernel_mean(double s, double g) {
    if (!(s >= 0.0) || s >= 1.0) throw domain_error("angular_kernel_mean: need 0 <= s < 1");
    if (!(g > 0.0)) throw domain_error("angular_kernel_mean: need g > 0");
    const double s2 = s * s;
    double term = 1.0, sum = 1.0;
    for (long m = 0; m < 100000000L; ++m) {
        const double f = (double(m) + 0.5 * g) / (double(m) + 1.0);
        term *= s2 * f * f;
        sum += term;
        if (term < 1e-17 * sum) return sum;
    }
    throw precision_error("angular_kernel_mean: series did not settle", sum, s);
}

double test_function_norm_power(cplx a, double p, double gamma, const RadialWeight& w,
                                double rel_tol) {
    const double am = std::abs(a);
    if (am >= 1.0) throw domain_error("test_function_norm_power: a must lie in the unit disk");
    if (!(p > 0.0) || !(gamma > 0.0))
        throw domain_error("test_function_norm_power: need p > 0 and gamma > 0");
    const double g = gamma + 1.0;
    auto F = [&](double r) { return angular_kernel_mean(am * r, g) * w(r) * 2.0 * r; };
    const RadialIntegral scan = march_dyadic(F, rel_tol, 44, "test_function_norm_power");
    return std::pow(1.0 - am * am, g) * (scan.value + scan.discarded_tail);
}

}  // namespace semispec
