#include "semispec/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "semispec/disk_geometry.hpp"
#include "semispec/errors.hpp"
#include "semispec/quadrature.hpp"

namespace semispec {
namespace {

constexpr double kTailFloor = 1e-250;  // below this the dyadic evidence grid is cut off

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-12 && std::round(x) >= 0.0; }

// int_r^1 (1-s^2)^m ds for integer m >= 0. Substituting u = 1-s gives
// int_0^{1-r} u^m (2-u)^m du, expanded binomially in u; every term scales like
// (1-r)^{m+1+k}, so the deep tail keeps full relative accuracy (the expansion
// in powers of r cancels catastrophically near r = 1)
double poly_tail(int m, double r) {
    const double x = 1.0 - r;
    double sum = 0.0, binom = 1.0;
    double p2 = std::pow(2.0, m), xp = std::pow(x, m + 1);
    for (int k = 0; k <= m; ++k) {
        sum += (k % 2 == 0 ? 1.0 : -1.0) * binom * p2 * xp / double(m + k + 1);
        binom *= double(m - k) / double(k + 1);
        p2 *= 0.5;
        xp *= x;
    }
    return sum;
}

}  // namespace

RadialWeight RadialWeight::standard(double alpha) {
    if (!(alpha > -1.0)) throw domain_error("standard weight requires alpha > -1");
    RadialWeight w;
    w.kind_ = Kind::standard;
    w.alpha_ = alpha;
    w.label_ = "standard";
    w.finalize();
    return w;
}

RadialWeight RadialWeight::tabulated(std::vector<double> radii, std::vector<double> values) {
    if (radii.size() != values.size() || radii.size() < 2)
        throw domain_error("tabulated weight needs matching grids with at least two samples");
    for (size_t i = 0; i < radii.size(); ++i) {
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw domain_error("tabulated weight radii must be strictly increasing");
        if (!(radii[i] >= 0.0 && radii[i] < 1.0))
            throw domain_error("tabulated weight radii must lie in [0,1)");
        if (!(values[i] >= 0.0)) throw domain_error("tabulated weight values must be nonnegative");
    }
    RadialWeight w;
    w.kind_ = Kind::tabulated;
    w.tab_r_ = std::move(radii);
    w.tab_logw_.resize(values.size());
    for (size_t i = 0; i < values.size(); ++i) w.tab_logw_[i] = std::log(std::max(values[i], 1e-300));
    w.label_ = "tabulated";
    w.finalize();
    return w;
}

RadialWeight RadialWeight::closed_form(std::function<double(double)> f, std::string label) {
    RadialWeight w;
    w.kind_ = Kind::closed_form;
    w.fn_ = std::move(f);
    w.label_ = std::move(label);
    w.finalize();
    return w;
}

RadialWeight RadialWeight::exponential(double c) {
    if (!(c > 0.0)) throw domain_error("exponential weight requires c > 0");
    RadialWeight w = closed_form([c](double r) { return std::exp(-c / (1.0 - r)); }, "exponential");
    w.exp_c_ = c;
    return w;
}

void RadialWeight::finalize() { tail0_ = tail(0.0); }

double RadialWeight::operator()(double r) const {
    if (!(r >= 0.0 && r < 1.0)) throw domain_error("weight evaluated outside [0,1)");
    switch (kind_) {
        case Kind::standard:
            return (alpha_ + 1.0) * std::pow(1.0 - r * r, alpha_);
        case Kind::closed_form:
            return fn_(r);
        case Kind::tabulated: {
            const auto& xs = tab_r_;
            size_t i;
            if (r <= xs.front()) {
                i = 0;
            } else if (r >= xs.back()) {
                i = xs.size() - 2;  // extrapolate with the last slope
            } else {
                i = static_cast<size_t>(std::upper_bound(xs.begin(), xs.end(), r) - xs.begin()) - 1;
            }
            const double t = (r - xs[i]) / (xs[i + 1] - xs[i]);
            return std::exp(tab_logw_[i] + t * (tab_logw_[i + 1] - tab_logw_[i]));
        }
    }
    return 0.0;
}

bool RadialWeight::standard_integer_alpha() const {
    return kind_ == Kind::standard && near_integer(alpha_);
}

double RadialWeight::tail(double r) const {
    if (!(r >= 0.0 && r <= 1.0)) throw domain_error("tail integral needs r in [0,1]");
    if (r == 1.0) return 0.0;
    if (standard_integer_alpha())
        return (alpha_ + 1.0) * poly_tail(static_cast<int>(std::round(alpha_)), r);
    auto f = [this](double s) { return (*this)(s); };
    return integrate_clustered(f, r, 1.0, 1e-13, 0.0).value;
}

double RadialWeight::tail_first_moment(double r) const {
    if (!(r >= 0.0 && r <= 1.0)) throw domain_error("tail moment needs r in [0,1]");
    if (r == 1.0) return 0.0;
    auto f = [this](double s) { return (*this)(s)*s; };
    return integrate_clustered(f, r, 1.0, 1e-13, 0.0).value;
}

double RadialWeight::star(double r) const {
    if (!(r > 0.0 && r < 1.0)) throw domain_error("star kernel needs r in (0,1)");
    auto f = [this, r](double s) { return (*this)(s)*s * std::log(s / r); };
    return integrate_clustered(f, r, 1.0, 1e-13, 0.0).value;
}

std::string RadialWeight::identity() const {
    switch (kind_) {
        case Kind::standard: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "standard:%.17g", alpha_);
            return buf;
        }
        case Kind::closed_form: {
            if (exp_c_ > 0.0) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "exponential:%.17g", exp_c_);
                return buf;
            }
            return "closed_form:" + label_;
        }
        case Kind::tabulated: {
            std::string s = "tabulated";
            char buf[80];
            for (size_t i = 0; i < tab_r_.size(); ++i) {
                std::snprintf(buf, sizeof buf, ":%.17g,%.17g", tab_r_[i], tab_logw_[i]);
                s += buf;
            }
            return s;
        }
    }
    return label_;
}

nlohmann::ordered_json RadialWeight::to_json() const {
    nlohmann::ordered_json j;
    switch (kind_) {
        case Kind::standard:
            j["kind"] = "standard";
            j["alpha"] = alpha_;
            break;
        case Kind::tabulated: {
            j["kind"] = "tabulated";
            j["r"] = tab_r_;
            std::vector<double> v(tab_logw_.size());
            for (size_t i = 0; i < v.size(); ++i) v[i] = std::exp(tab_logw_[i]);
            j["w"] = v;
            break;
        }
        case Kind::closed_form:
            if (exp_c_ > 0.0) {
                j["kind"] = "exponential";
                j["c"] = exp_c_;
            } else {
                throw domain_error("custom closed-form weights cannot be serialized");
            }
            break;
    }
    return j;
}

RadialWeight RadialWeight::from_json(const nlohmann::ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "standard") return standard(j.at("alpha").get<double>());
    if (kind == "exponential") return exponential(j.value("c", 1.0));
    if (kind == "tabulated")
        return tabulated(j.at("r").get<std::vector<double>>(), j.at("w").get<std::vector<double>>());
    throw domain_error("unknown weight kind '" + kind + "'");
}

const char* to_string(DoublingReport::Verdict v) {
    switch (v) {
        case DoublingReport::Verdict::yes: return "yes";
        case DoublingReport::Verdict::no: return "no";
        default: return "inconclusive";
    }
}

namespace {

DoublingReport::Verdict classify_ratio_sequence(const std::vector<double>& q, std::string* note) {
    const size_t n = q.size();
    if (n < 4) {
        if (note) *note = "fewer than four usable grid points";
        return DoublingReport::Verdict::inconclusive;
    }
    // stabilized: last three pairwise within 10%
    const double a = q[n - 3], b = q[n - 2], c = q[n - 1];
    const double lo = std::min({a, b, c}), hi = std::max({a, b, c});
    if (hi <= 1.10 * lo) return DoublingReport::Verdict::yes;
    // unbounded growth: increasing through the last five points, tenfold overall
    if (n >= 5) {
        bool increasing = true;
        for (size_t i = n - 4; i < n; ++i) increasing = increasing && q[i] > q[i - 1];
        if (increasing && q[n - 1] > 10.0 * q[n - 5]) return DoublingReport::Verdict::no;
    }
    if (note) *note = "ratio sequence neither stabilized nor monotonically diverging";
    return DoublingReport::Verdict::inconclusive;
}

}  // namespace

DoublingReport doubling_diagnostics(const RadialWeight& w, std::vector<double> grid) {
    DoublingReport rep;
    if (grid.empty())
        for (int j = 1; j <= 20; ++j) grid.push_back(1.0 - std::ldexp(1.0, -j));

    std::vector<double> tails;
    for (double r : grid) {
        const double t = w.tail(r);
        if (!(t > kTailFloor)) {
            rep.notes.push_back("evidence grid truncated where the tail integral underflows");
            break;
        }
        rep.evidence_grid.push_back(r);
        tails.push_back(t);
    }
    if (rep.evidence_grid.size() < 4)
        throw precision_error("doubling diagnostics: too few usable grid points", 0.0, 0.0);

    // upper condition: tail(r) <= C tail((1+r)/2)
    for (size_t i = 0; i < rep.evidence_grid.size(); ++i) {
        const double r = rep.evidence_grid[i];
        const double mid_tail = w.tail(0.5 * (1.0 + r));
        rep.upper_ratios.push_back(mid_tail > 0.0 ? tails[i] / mid_tail
                                                  : std::numeric_limits<double>::infinity());
    }
    std::string note;
    rep.upper = classify_ratio_sequence(rep.upper_ratios, &note);
    if (rep.upper == DoublingReport::Verdict::inconclusive && !note.empty())
        rep.notes.push_back("upper: " + note);
    if (rep.upper != DoublingReport::Verdict::inconclusive)
        rep.C_upper = *std::max_element(rep.upper_ratios.begin(), rep.upper_ratios.end());

    // lower condition: tail(r) <= C' int_r^{1-(1-r)/K} w, smallest stabilizing K wins
    for (int K : {2, 4, 8, 16}) {
        std::vector<double> ratios;
        for (size_t i = 0; i < rep.evidence_grid.size(); ++i) {
            const double r = rep.evidence_grid[i];
            const double inner = tails[i] - w.tail(1.0 - (1.0 - r) / K);
            ratios.push_back(inner > 0.0 ? tails[i] / inner
                                         : std::numeric_limits<double>::infinity());
        }
        std::string knote;
        const auto verdict = classify_ratio_sequence(ratios, &knote);
        if (verdict == DoublingReport::Verdict::yes) {
            rep.lower = verdict;
            rep.K = K;
            rep.C_lower = *std::max_element(ratios.begin(), ratios.end());
            rep.lower_ratios = std::move(ratios);
            break;
        }
        if (K == 16) {  // keep the last attempt as evidence
            rep.lower = verdict;
            rep.K = K;
            rep.lower_ratios = std::move(ratios);
            if (verdict == DoublingReport::Verdict::inconclusive && !knote.empty())
                rep.notes.push_back("lower: " + knote);
        }
    }
    return rep;
}

double square_mass(const RadialWeight& w, std::complex<double> a) {
    const double m = std::abs(a);
    if (!(m > 0.0 && m < 1.0)) throw domain_error("square_mass: need 0 < |a| < 1");
    const double width = 1.0 - m;
    return width / (2.0 * std::numbers::pi) * 2.0 * w.tail_first_moment(m);
}

double disk_mass(const RadialWeight& w, std::complex<double> a, double r) {
    const EuclideanDisk d = pseudo_disk(a, r);
    const double c = std::abs(d.center), rho = d.radius;
    const double s_lo = std::max(0.0, c - rho), s_hi = std::min(1.0, c + rho);
    auto angular = [&](double s) {
        if (s <= rho - c) return std::numbers::pi;  // circle of radius s fully inside
        const double cosv = (s * s + c * c - rho * rho) / (2.0 * s * c);
        return std::acos(std::clamp(cosv, -1.0, 1.0));
    };
    auto f = [&](double s) { return 2.0 * angular(s) * w(s) * s; };
    return integrate(f, s_lo, s_hi, 1e-11, 0.0).value / std::numbers::pi;
}

}  // namespace semispec
