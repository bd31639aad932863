#include "semispec/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "semispec/errors.hpp"

namespace semispec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// parse "name" or "name(param)"
std::pair<std::string, std::optional<double>> split_name(const std::string& s) {
    const auto open = s.find('(');
    if (open == std::string::npos) return {s, std::nullopt};
    const auto close = s.find(')', open);
    if (close == std::string::npos) throw domain_error("malformed semigroup name '" + s + "'");
    return {s.substr(0, open), std::stod(s.substr(open + 1, close - open - 1))};
}

// principal-branch power (1 - z)^q etc. keep arguments in the right half plane
cplx principal_pow(cplx base, double q) { return std::exp(q * std::log(base)); }

void check_koenigs_consistency(const SemigroupSpec& spec) {
    if (!spec.closed_form) return;
    for (double t : {0.35, 1.2}) {
        const cplx factor = std::exp(spec.gprime_b * t);
        for (int k = 0; k < 8; ++k) {
            for (double r : {0.3, 0.6}) {
                const cplx z = std::polar(r, kTwoPi * k / 8.0) + spec.b * 0.0;
                const cplx lhs = eval(spec.h, spec.closed_form(t, z));
                const cplx rhs = factor * eval(spec.h, z);
                if (std::abs(lhs - rhs) > 1e-8 * (1.0 + std::abs(rhs)))
                    throw domain_error("semigroup '" + spec.name +
                                       "': closed form violates the Koenigs relation");
            }
        }
    }
}

}  // namespace

AnalyticSeries SemigroupSpec::regenerate_h(int n_terms) const {
    if (series_name.empty()) return h;
    return scale(named_series(series_name, n_terms), series_scale);
}

SemigroupSpec make_semigroup(const std::string& name, int n_terms) {
    auto [base, param] = split_name(name);
    SemigroupSpec s;
    s.name = name;
    if (base == "rotation") {
        const double a = param.value_or(1.0);
        s.h = named_series("z", n_terms);
        s.series_name = "z";
        s.gprime_b = cplx{0.0, a};
        s.is_automorphism_group = true;
        s.closed_form = [a](double t, cplx z) { return std::polar(1.0, a * t) * z; };
    } else if (base == "dilation") {
        const double rate = param.value_or(1.0);
        if (!(rate > 0.0)) throw domain_error("dilation rate must be positive");
        s.h = named_series("z", n_terms);
        s.series_name = "z";
        s.gprime_b = cplx{-rate, 0.0};
        s.closed_form = [rate](double t, cplx z) { return std::exp(-rate * t) * z; };
    } else if (base == "example2") {
        s.h = named_series("log(1/(1-z))", n_terms);
        s.series_name = "log(1/(1-z))";
        s.gprime_b = cplx{-1.0, 0.0};
        s.closed_form = [](double t, cplx z) {
            return 1.0 - principal_pow(1.0 - z, std::exp(-t));
        };
    } else if (base == "example3") {
        s.h = scale(named_series("log((1+z)/(1-z))", n_terms), 0.5);  // h'(0)=1
        s.series_name = "log((1+z)/(1-z))";
        s.series_scale = 0.5;
        s.gprime_b = cplx{-1.0, 0.0};
        s.closed_form = [](double t, cplx z) {
            const double q = std::exp(-t);
            const cplx a = principal_pow(1.0 + z, q);
            const cplx b = principal_pow(1.0 - z, q);
            return (a - b) / (a + b);
        };
    } else if (base == "koebe") {
        s.h = named_series("z/(1-z)^2", n_terms);
        s.series_name = "z/(1-z)^2";
        s.gprime_b = cplx{-1.0, 0.0};
        s.closed_form = [](double t, cplx z) {
            const cplx w = std::exp(-t) * z / ((1.0 - z) * (1.0 - z));
            return 2.0 * w / (1.0 + 2.0 * w + std::sqrt(1.0 + 4.0 * w));
        };
    } else {
        throw domain_error("unknown semigroup '" + name + "'");
    }
    check_koenigs_consistency(s);
    return s;
}

SemigroupSpec semigroup_from_json(const nlohmann::ordered_json& j, int n_terms) {
    if (j.contains("closed_form") && !j.at("closed_form").is_null())
        return make_semigroup(j.at("closed_form").get<std::string>(), n_terms);
    SemigroupSpec s;
    if (!j.contains("koenigs"))
        throw domain_error("semigroup JSON needs either closed_form or koenigs coefficients");
    std::vector<cplx> coeffs;
    for (const auto& c : j.at("koenigs").at("coeffs"))
        coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    s.h = AnalyticSeries(std::move(coeffs), 1.0, 0.0, false);
    if (j.contains("b")) s.b = cplx{j.at("b").at(0).get<double>(), j.at("b").at(1).get<double>()};
    if (j.contains("gprime_b"))
        s.gprime_b = cplx{j.at("gprime_b").at(0).get<double>(), j.at("gprime_b").at(1).get<double>()};
    if (j.contains("is_automorphism_group")) s.is_automorphism_group = j.at("is_automorphism_group").get<bool>();
    if (std::real(s.gprime_b) > 1e-12)
        throw domain_error("semigroup JSON: Re G'(b) must be <= 0 for an attractive fixed point");
    if (std::abs(eval(s.h, s.b)) > 1e-10)
        throw domain_error("semigroup JSON: Koenigs function must vanish at b");
    s.name = "custom";
    return s;
}

nlohmann::ordered_json semigroup_to_json(const SemigroupSpec& spec) {
    nlohmann::ordered_json j;
    if (spec.closed_form && spec.name != "custom") {
        j["closed_form"] = spec.name;
        return j;
    }
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (const auto& c : spec.h.c) coeffs.push_back({c.real(), c.imag()});
    j["koenigs"] = {{"coeffs", coeffs}};
    j["b"] = {spec.b.real(), spec.b.imag()};
    j["gprime_b"] = {spec.gprime_b.real(), spec.gprime_b.imag()};
    j["is_automorphism_group"] = spec.is_automorphism_group;
    return j;
}

namespace {

struct NewtonOutcome {
    cplx w;
    int iterations = 0;
    bool ok = false;
};

NewtonOutcome newton_solve(const AnalyticSeries& h, cplx target, cplx start, double tol_abs) {
    NewtonOutcome out{start, 0, false};
    cplx w = start;
    double res = std::abs(eval(h, w) - target);
    for (int it = 0; it < 30; ++it) {
        if (res < tol_abs) {
            out.w = w;
            out.iterations = it;
            out.ok = true;
            return out;
        }
        const cplx hp = eval_derivative(h, w);
        if (std::abs(hp) < 1e-14) break;
        const cplx step = (eval(h, w) - target) / hp;
        bool moved = false;
        double damp = 1.0;
        for (int d = 0; d < 8; ++d, damp *= 0.5) {
            const cplx trial = w - damp * step;
            if (std::abs(trial) >= 1.0) continue;  // iterates must stay in the disk
            const double tres = std::abs(eval(h, trial) - target);
            if (tres < res) {
                w = trial;
                res = tres;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    out.w = w;
    out.iterations = 30;
    out.ok = res < tol_abs;
    return out;
}

}  // namespace

cplx evaluate_phi(const SemigroupSpec& spec, double t, cplx z, double tol) {
    if (t < 0.0) throw domain_error("evaluate_phi: t must be nonnegative");
    if (std::abs(z) >= 1.0) throw domain_error("evaluate_phi: z must lie in the open unit disk");
    if (t == 0.0) return z;
    if (spec.closed_form) return spec.closed_form(t, z);

    const cplx hz = eval(spec.h, z);
    const double tol_abs = tol * (1.0 + std::abs(hz));
    if (spec.h.eval_error_bound(std::abs(z)) > 0.5 * tol_abs)
        throw precision_error("evaluate_phi: Koenigs series truncation too short at |z|", 0.0,
                              spec.h.eval_error_bound(std::abs(z)));

    double s = 0.0, ds = std::min(t, 0.25);
    cplx w = z;
    int fast_streak = 0;
    while (s < t) {
        const double s_next = std::min(t, s + ds);
        const cplx target = std::exp(spec.gprime_b * s_next) * hz;
        const NewtonOutcome res = newton_solve(spec.h, target, w, tol_abs);
        if (res.ok) {
            w = res.w;
            s = s_next;
            if (res.iterations <= 4) {
                if (++fast_streak >= 3) {
                    ds *= 2.0;
                    fast_streak = 0;
                }
            } else {
                fast_streak = 0;
            }
        } else {
            ds *= 0.5;
            fast_streak = 0;
            if (ds < 1e-12)
                throw newton_error("evaluate_phi: path continuation stalled", res.w, s);
        }
    }
    return w;
}

cplx generator_eval(const SemigroupSpec& spec, cplx z) {
    if (std::abs(z) >= 1.0) throw domain_error("generator_eval: z must lie in the open unit disk");
    const cplx hp = eval_derivative(spec.h, z);
    if (std::abs(hp) < 1e-14)
        throw precision_error("generator_eval: h' vanished (truncation artifact?)", 0.0, std::abs(hp));
    return spec.gprime_b * eval(spec.h, z) / hp;
}

FixedPointCheck fixed_point_check(const SemigroupSpec& spec, const std::vector<double>& ts) {
    const double delta = 1e-5;
    FixedPointCheck out{0.0, 0.0};
    for (double t : ts) {
        out.fixed_point_residual =
            std::max(out.fixed_point_residual, std::abs(evaluate_phi(spec, t, spec.b) - spec.b));
        const cplx fplus = evaluate_phi(spec, t, spec.b + delta);
        const cplx fminus = evaluate_phi(spec, t, spec.b - delta);
        const cplx deriv = (fplus - fminus) / (2.0 * delta);
        out.multiplier_residual =
            std::max(out.multiplier_residual, std::abs(deriv - std::exp(spec.gprime_b * t)));
    }
    return out;
}

KoenigsEstimate koenigs_estimate(const std::function<cplx(cplx)>& phi, cplx lambda, cplx z,
                                 double tol, int n_max) {
    const double lm = std::abs(lambda);
    if (!(lm > 0.0 && lm < 1.0))
        throw domain_error("koenigs_estimate: need 0 < |phi'(0)| < 1");
    // The ratio increments shrink like |lambda|^n only while phi_n(z) stays above
    // the absolute rounding floor of phi; past that point the division by
    // lambda^n amplifies the noise geometrically and the ratios drift away.
    // Track the smallest increment and stop once increments grow persistently:
    // the iterate at the minimum is the best value the data supports.
    cplx w = z, lam_pow{1.0, 0.0};
    cplx prev = z;
    KoenigsEstimate est{z, 0, std::numeric_limits<double>::infinity(), false};
    int grow_run = 0;
    for (int n = 1; n <= n_max; ++n) {
        w = phi(w);
        lam_pow *= lambda;
        const cplx q = w / lam_pow;
        const double inc = std::abs(q - prev);
        prev = q;
        if (n == 1) {
            est.value = q;
            est.iterations = 1;
            continue;
        }
        if (inc < est.last_increment) {
            est.value = q;
            est.iterations = n;
            est.last_increment = inc;
            grow_run = 0;
            if (inc < tol) {
                est.converged = true;
                return est;
            }
        } else if (++grow_run >= 5) {
            break;
        }
    }
    return est;
}

double spiral_angle(cplx w, cplx mu) {
    if (!(std::real(mu) > 0.0)) throw domain_error("spiral_angle: need Re mu > 0");
    if (w == cplx{0.0, 0.0}) throw domain_error("spiral_angle: w must be nonzero");
    double chi = std::arg(w) - std::log(std::abs(w)) * std::tan(std::arg(mu));
    chi = std::fmod(chi, kTwoPi);
    if (chi < 0.0) chi += kTwoPi;
    return chi;
}

int winding_number(const std::vector<cplx>& poly, cplx q) {
    int wn = 0;
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        const cplx& p0 = poly[i];
        const cplx& p1 = poly[(i + 1) % m];
        const double cross = (p1.real() - p0.real()) * (q.imag() - p0.imag()) -
                             (q.real() - p0.real()) * (p1.imag() - p0.imag());
        if (p0.imag() <= q.imag()) {
            if (p1.imag() > q.imag() && cross > 0.0) ++wn;
        } else {
            if (p1.imag() <= q.imag() && cross < 0.0) --wn;
        }
    }
    return wn;
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
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        const cplx dir = std::polar(1.0, thetas[static_cast<size_t>(i)]);
        bool open = true;
        for (double t : ts) {
            const cplx w = dir * std::exp(-t * mu);
            const double r = std::abs(w);
            if (r >= rmax) {
                open = false;  // beyond the sampled boundary curve
                break;
            }
            if (r <= rmin) continue;  // same winding as the fixed point: inside
            if (winding_number(poly, w) == 0) {
                open = false;
                break;
            }
        }
        flags[static_cast<size_t>(i)] = open ? 1 : 0;
    }
    return flags;
}

bool polyline_self_intersects(const std::vector<cplx>& poly) {
    const long m = static_cast<long>(poly.size());
    if (m < 4) return false;
    auto seg = [&](long i) {
        return std::pair<cplx, cplx>{poly[static_cast<size_t>(i)],
                                     poly[static_cast<size_t>((i + 1) % m)]};
    };
    auto orient = [](cplx a, cplx b, cplx c) {
        const double v = (b.real() - a.real()) * (c.imag() - a.imag()) -
                         (c.real() - a.real()) * (b.imag() - a.imag());
        return (v > 0.0) - (v < 0.0);
    };
    bool hit = false;
#pragma omp parallel for schedule(dynamic, 16) reduction(|| : hit)
    for (long i = 0; i < m; ++i) {
        if (hit) continue;
        const auto [a0, a1] = seg(i);
        const double ax_lo = std::min(a0.real(), a1.real()), ax_hi = std::max(a0.real(), a1.real());
        const double ay_lo = std::min(a0.imag(), a1.imag()), ay_hi = std::max(a0.imag(), a1.imag());
        for (long j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;  // adjacent around the wrap
            const auto [b0, b1] = seg(j);
            if (std::max(b0.real(), b1.real()) < ax_lo || std::min(b0.real(), b1.real()) > ax_hi ||
                std::max(b0.imag(), b1.imag()) < ay_lo || std::min(b0.imag(), b1.imag()) > ay_hi)
                continue;
            if (orient(a0, a1, b0) != orient(a0, a1, b1) &&
                orient(b0, b1, a0) != orient(b0, b1, a1))
                hit = true;
        }
    }
    return hit;
}

namespace {

struct ArcScan {
    double eta = 0.0;
    double theta0 = 0.0;
};

ArcScan largest_open_arc(const std::vector<std::uint8_t>& flags, double dtheta) {
    const int n = static_cast<int>(flags.size());
    int best_len = 0, best_start = 0;
    int cur_len = 0, cur_start = 0;
    for (int i = 0; i < 2 * n; ++i) {  // doubled scan handles the circular wrap
        if (flags[static_cast<size_t>(i % n)]) {
            if (cur_len == 0) cur_start = i;
            if (++cur_len > best_len) {
                best_len = cur_len;
                best_start = cur_start;
            }
            if (cur_len == 2 * n) break;
        } else {
            cur_len = 0;
        }
    }
    ArcScan out;
    if (best_len >= n) {
        out.eta = kTwoPi;
        out.theta0 = 0.0;
        return out;
    }
    out.eta = best_len * dtheta;
    out.theta0 = std::fmod((best_start + 0.5 * (best_len - 1)) * dtheta, kTwoPi);
    return out;
}

double opening_at_eps(const SemigroupSpec& spec, const OpeningOptions& opt, double eps,
                      double tol, double* theta0) {
    const double rho = 1.0 - eps;
    AnalyticSeries h = spec.h;
    if (h.eval_error_bound(rho) > 0.1 * eps && !spec.series_name.empty()) {
        int n = std::max(2 * h.length(), required_length(rho, 0.05 * eps, 4.0));
        AnalyticSeries cand = spec.regenerate_h(n);
        while (cand.eval_error_bound(rho) > 0.05 * eps && n < (1 << 17)) {
            n *= 2;
            cand = spec.regenerate_h(n);
        }
        h = std::move(cand);
    }
    if (h.eval_error_bound(rho) > 0.1 * eps && h.tail_rigorous)
        throw precision_error("maximal_opening: Koenigs series truncation too short at 1-eps",
                              0.0, h.eval_error_bound(rho));

    std::vector<cplx> poly(static_cast<size_t>(opt.boundary_samples));
    for (int k = 0; k < opt.boundary_samples; ++k)
        poly[static_cast<size_t>(k)] = eval(h, std::polar(rho, kTwoPi * k / opt.boundary_samples));
    const int wind0 = winding_number(poly, cplx{0.0, 0.0});
    if (wind0 != 1)
        throw precision_error("maximal_opening: boundary polyline does not wind once around 0",
                              double(wind0), 0.0);
    if (polyline_self_intersects(poly))
        throw precision_error("maximal_opening: boundary polyline self-intersects "
                              "(raise the series truncation)", 0.0, 0.0);

    std::vector<double> thetas(static_cast<size_t>(opt.theta_samples));
    for (int i = 0; i < opt.theta_samples; ++i)
        thetas[static_cast<size_t>(i)] = kTwoPi * i / opt.theta_samples;
    std::vector<double> ts(static_cast<size_t>(opt.t_samples));
    for (int i = 0; i < opt.t_samples; ++i)
        ts[static_cast<size_t>(i)] =
            opt.t_min + (opt.t_max - opt.t_min) * i / double(opt.t_samples - 1);
    // probe the extremes first: bounded images reject those in O(1)
    std::sort(ts.begin(), ts.end(),
              [&](double a, double b) { return std::abs(a) > std::abs(b); });

    const auto flags = open_angle_flags(poly, spec.mu(), thetas, ts);
    const ArcScan arc = largest_open_arc(flags, kTwoPi / opt.theta_samples);
    if (theta0) *theta0 = arc.theta0;
    return std::max(0.0, arc.eta - tol);
}

}  // namespace

SpiralGeometry maximal_opening(const SemigroupSpec& spec, OpeningOptions opt) {
    const cplx mu = spec.mu();
    if (!(std::real(mu) > 0.0))
        throw domain_error("maximal_opening: needs Re mu > 0 (strictly attractive fixed point)");
    if (opt.t_samples < 2 || opt.theta_samples < 8 || opt.boundary_samples < 64)
        throw domain_error("maximal_opening: degenerate sampling options");
    const double tol = opt.tol > 0.0 ? opt.tol : 2.0 * kTwoPi / opt.theta_samples;

    SpiralGeometry geo;
    geo.mu = mu;
    geo.status = SpiralGeometry::Status::estimated;
    double theta0 = 0.0;
    const double eta_full = opening_at_eps(spec, opt, opt.eps, tol, &theta0);
    const double eta_half = opening_at_eps(spec, opt, 0.5 * opt.eps, tol, nullptr);
    geo.eta = eta_full;
    geo.theta0 = theta0;
    geo.band_lo = std::min(eta_full, eta_half);
    geo.band_hi = std::max(eta_full, eta_half);
    return geo;
}

}  // namespace semispec
