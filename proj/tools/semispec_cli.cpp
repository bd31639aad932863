// Command-line front end. One experiment per invocation: read a JSON config,
// run the requested pipeline, print a JSON report (also written to --out) and
// optional CSV plot data. Exit codes: 0 ok, 1 numeric error, 2 inconclusive,
// 3 precondition refusal (bad config included).

#include <cmath>
#include <complex>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "semispec/bergman.hpp"
#include "semispec/difference.hpp"
#include "semispec/errors.hpp"
#include "semispec/report.hpp"
#include "semispec/resolvent.hpp"
#include "semispec/semigroup.hpp"
#include "semispec/series.hpp"
#include "semispec/spectral.hpp"
#include "semispec/weights.hpp"

namespace {

using nlohmann::ordered_json;
using namespace semispec;

struct Shared {
    std::string config_path;
    std::string out_dir = ".";
    bool plot = false;
    int truncation = 0;   // 0: config value or 2048
    double tol = 0.0;     // 0: config value or 1e-12
};

ordered_json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("config: cannot open '" + path + "'");
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw domain_error("config: invalid JSON in '" + path + "': " + e.what());
    }
}

const ordered_json& need(const ordered_json& cfg, const char* key) {
    if (!cfg.contains(key))
        throw domain_error(std::string("config: missing required key \"") + key + "\"");
    return cfg.at(key);
}

double num_or(const ordered_json& cfg, const char* key, double fallback) {
    if (!cfg.contains(key)) return fallback;
    if (!cfg.at(key).is_number())
        throw domain_error(std::string("config: \"") + key + "\" must be a number");
    return cfg.at(key).get<double>();
}

int int_or(const ordered_json& cfg, const char* key, int fallback) {
    return static_cast<int>(num_or(cfg, key, fallback));
}

cplx cplx_at(const ordered_json& j, const char* ctx) {
    if (!j.is_array() || j.size() != 2)
        throw domain_error(std::string("config: ") + ctx + " must be [re, im]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

int effective_truncation(const Shared& sh, const ordered_json& cfg) {
    if (sh.truncation > 0) return sh.truncation;
    const int n = int_or(cfg, "truncation", 2048);
    if (n < 2) throw domain_error("config: truncation must be at least 2");
    return n;
}

double effective_tol(const Shared& sh, const ordered_json& cfg) {
    if (sh.tol > 0.0) return sh.tol;
    const double t = num_or(cfg, "tol", 1e-12);
    if (!(t > 0.0)) throw domain_error("config: tol must be positive");
    return t;
}

RadialWeight weight_from(const ordered_json& cfg) {
    return RadialWeight::from_json(need(cfg, "weight"));
}

SemigroupSpec group_from(const ordered_json& cfg, int n_terms) {
    return semigroup_from_json(need(cfg, "semigroup"), n_terms);
}

double p_from(const ordered_json& cfg) {
    const double p = num_or(cfg, "p", 2.0);
    if (!(p > 0.0)) throw domain_error("config: p must be positive");
    return p;
}

AnalyticSeries series_from(const ordered_json& j, int n_terms) {
    if (j.contains("named")) return named_series(j.at("named").get<std::string>(), n_terms);
    if (!j.contains("coeffs")) throw domain_error("config: series needs \"named\" or \"coeffs\"");
    std::vector<cplx> c;
    for (const auto& e : j.at("coeffs")) {
        if (e.is_number())
            c.emplace_back(e.get<double>(), 0.0);
        else
            c.push_back(cplx_at(e, "series coefficient"));
    }
    return AnalyticSeries(std::move(c), 1.0, 0.0, false);
}

// Spiral geometry for the membership tests. Priority: exact value from the
// config, the trivial h = z case (the image disk contains no spiral sector of
// positive opening), then the polyline estimator (needs Re mu > 0).
SpiralGeometry resolve_geometry(const ordered_json& cfg, const SemigroupSpec& spec) {
    SpiralGeometry geo;
    geo.mu = spec.mu();
    if (cfg.contains("opening")) {
        const auto& o = cfg.at("opening");
        geo.eta = num_or(o, "eta", 0.0);
        geo.theta0 = num_or(o, "theta0", 0.0);
        geo.band_lo = geo.band_hi = geo.eta;
        geo.status = SpiralGeometry::Status::exact_user_supplied;
        return geo;
    }
    if (spec.series_name == "z") {
        geo.eta = 0.0;
        geo.status = SpiralGeometry::Status::exact_user_supplied;
        return geo;
    }
    if (!(geo.mu.real() > 1e-12))
        throw domain_error("config: opening estimation needs Re mu > 0; supply "
                           "\"opening\": {\"eta\": ...} for this group");
    return maximal_opening(spec);
}

ordered_json geometry_json(const SpiralGeometry& geo) {
    ordered_json j;
    j["mu"] = {geo.mu.real(), geo.mu.imag()};
    j["eta"] = geo.eta;
    j["theta0"] = geo.theta0;
    j["status"] = geo.status == SpiralGeometry::Status::exact_user_supplied
                      ? "exact_user_supplied"
                      : "estimated";
    if (geo.status == SpiralGeometry::Status::estimated)
        j["band"] = {geo.band_lo, geo.band_hi};
    return j;
}

// phi_t coefficients by trapezoid Cauchy integrals on |z| = rho; exact
// geometric convergence, noise floor eps * rho^-n caps the usable length.
AnalyticSeries sampled_phi(const SemigroupSpec& spec, double t, int n_terms, double tol) {
    const double rho = 0.9;
    const int cap = static_cast<int>(std::log(1e-13) / std::log(rho));  // ~284
    const int n = std::min(n_terms, cap);
    const int m = 4096;
    std::vector<cplx> vals(m);
    for (int k = 0; k < m; ++k)
        vals[k] = evaluate_phi(spec, t, std::polar(rho, 2.0 * M_PI * k / m), tol);
    fft(vals, false);
    std::vector<cplx> c(n);
    double scale = 1.0;
    for (int k = 0; k < n; ++k, scale *= rho) c[k] = vals[k] / (double(m) * scale);
    // self-maps of the disk have |c_n| <= 1
    return AnalyticSeries(std::move(c), 1.0, 1.0, true);
}

std::string iso_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int finish(const std::string& command, int status, ordered_json result, const Shared& sh) {
    ordered_json rep;
    rep["command"] = command;
    rep["status"] = status == 0 ? "ok" : "inconclusive";
    rep["timestamp"] = iso_now();
    rep["result"] = std::move(result);
    const std::string text = rep.dump(2);
    std::cout << text << "\n";
    std::filesystem::create_directories(sh.out_dir);
    std::ofstream(sh.out_dir + "/" + command + "_report.json") << text << "\n";
    return status;
}

std::string csv_path(const Shared& sh, const std::string& name) {
    std::filesystem::create_directories(sh.out_dir);
    return sh.out_dir + "/" + name;
}

bool any_inconclusive_caveat(const SpectrumReport& rep) {
    for (const auto& c : rep.caveats)
        if (c.find("inconclusive") != std::string::npos) return true;
    return false;
}

// ---------------------------------------------------------------- weights --

int cmd_weights(const Shared& sh, const ordered_json& cfg) {
    const RadialWeight w = weight_from(cfg);
    const DoublingReport rep = doubling_diagnostics(w);

    ordered_json res;
    res["weight"] = w.to_json();
    ordered_json d;
    d["upper"] = to_string(rep.upper);
    if (std::isfinite(rep.C_upper)) d["C_upper"] = rep.C_upper;
    d["lower"] = to_string(rep.lower);
    d["K"] = rep.K;
    if (std::isfinite(rep.C_lower)) d["C_lower"] = rep.C_lower;
    d["notes"] = rep.notes;
    res["doubling"] = d;
    res["in_both_classes"] = rep.in_both();
    const char* tail_method = w.standard_integer_alpha()
                                  ? "binomial closed form"
                                  : "adaptive Gauss-Kronrod, relative target 1e-12";
    res["tail_at_half"] = metric(w.tail(0.5), tail_method, 1e-12);
    res["star_at_half"] = metric(w.star(0.5), "clustered adaptive quadrature", 1e-12);
    res["tail0"] = metric(w.tail0(), tail_method, 1e-12);

    if (sh.plot) {
        std::vector<std::vector<double>> rows;
        for (int i = 1; i < 128; ++i) {
            const double r = i / 128.0;
            rows.push_back({r, w(r), w.tail(r), w.star(r)});
        }
        for (int j = 8; j <= 14; ++j) {
            const double r = 1.0 - std::pow(0.5, j);
            rows.push_back({r, w(r), w.tail(r), w.star(r)});
        }
        write_csv(csv_path(sh, "weights_profiles.csv"), {"r", "w", "tail", "star"}, rows);
    }

    const bool inconclusive = rep.upper == DoublingReport::Verdict::inconclusive ||
                              rep.lower == DoublingReport::Verdict::inconclusive;
    return finish("weights", inconclusive ? 2 : 0, std::move(res), sh);
}

// --------------------------------------------------------------- spectrum --

int cmd_spectrum(const Shared& sh, const ordered_json& cfg) {
    const RadialWeight w = weight_from(cfg);
    const int n_terms = effective_truncation(sh, cfg);
    const double tol = effective_tol(sh, cfg);
    const SemigroupSpec spec = group_from(cfg, n_terms);
    const double p = p_from(cfg);
    const double t = num_or(cfg, "t", 1.0);
    const int k_max = int_or(cfg, "k_max", 64);
    const std::string op = cfg.contains("operator") ? cfg.at("operator").get<std::string>()
                                                    : std::string("generator");

    const SpiralGeometry geo = resolve_geometry(cfg, spec);

    SpectrumReport rep;
    ordered_json res;
    if (op == "points") {
        rep = point_spectrum(spec, p, w, geo, k_max);
    } else if (op == "composition") {
        const AnalyticSeries phi = sampled_phi(spec, t, n_terms, tol);
        CphiOptions opt;
        opt.k_max = k_max;
        opt.section_dim = int_or(cfg, "section_dim", 24);
        rep = cphi_spectrum(phi, p, w, opt);
        res["t"] = t;
    } else if (op == "generator") {
        ContinuityEvidence evidence;  // inconclusive unless the config runs the test
        if (cfg.contains("continuity")) {
            const auto& cc = cfg.at("continuity");
            std::vector<double> t0s;
            if (cc.contains("t0_candidates"))
                for (const auto& v : cc.at("t0_candidates")) t0s.push_back(v.get<double>());
            if (t0s.empty()) t0s = {0.5, 1.0};
            evidence =
                eventual_norm_continuity_test(spec, p, w, t0s, num_or(cc, "gamma", 0.0));
            res["continuity_status"] = evidence.passed() ? "passed"
                                       : evidence.status == ContinuityEvidence::Status::failed
                                           ? "failed"
                                           : "inconclusive";
        }
        rep = generator_spectrum(spec, p, w, t, evidence, geo, k_max);
        res["t"] = t;
    } else {
        throw domain_error("config: operator must be generator, composition, or points");
    }

    res["opening"] = geometry_json(geo);
    res["spectrum"] = rep.to_json();

    if (sh.plot && !spec.is_automorphism_group) {
        const EssentialRadius re =
            op == "composition"
                ? essential_radius(
                      [phi = sampled_phi(spec, t, n_terms, tol)](cplx z) { return eval(phi, z); },
                      w, p)
                : essential_radius(spec, t, w, p);
        std::vector<std::vector<double>> rows;
        for (const auto& prof : re.profiles)
            for (size_t i = 0; i < prof.radii.size(); ++i)
                rows.push_back({prof.radii[i], prof.ratios[i], double(prof.n)});
        write_csv(csv_path(sh, "spectrum_radius_profile.csv"), {"r", "ratio", "n"}, rows);
    }

    return finish("spectrum", any_inconclusive_caveat(rep) ? 2 : 0, std::move(res), sh);
}

// ------------------------------------------------------------- difference --

int cmd_difference(const Shared& sh, const ordered_json& cfg) {
    const RadialWeight w = weight_from(cfg);
    const int n_terms = effective_truncation(sh, cfg);
    const double tol = effective_tol(sh, cfg);
    const SemigroupSpec spec = group_from(cfg, n_terms);
    const double p = p_from(cfg);
    const std::string test = cfg.contains("test") ? cfg.at("test").get<std::string>()
                                                  : std::string("functional");

    ordered_json res;
    int status = 0;

    if (test == "functional") {
        const double t = need(cfg, "t").get<double>();
        const double s = need(cfg, "s").get<double>();
        double gamma = num_or(cfg, "gamma", 0.0);
        if (gamma <= 0.0) gamma = gamma0_calibrate(w, p) + 1.0;
        const auto phi = [&](cplx z) { return evaluate_phi(spec, t, z, tol); };
        const auto psi = [&](cplx z) { return evaluate_phi(spec, s, z, tol); };
        const DifferenceEstimate est = difference_functional(phi, psi, p, w, gamma);
        res["t"] = t;
        res["s"] = s;
        res["gamma"] = est.gamma;
        res["value"] = metric(est.value, "sup over the a-grid of the tail-weighted "
                                         "sigma^p integral (" + est.grid_meta + ")", 0.0);
        res["argmax_a"] = {est.argmax_a.real(), est.argmax_a.imag()};
        res["sigma_sup"] = metric(est.sigma_sup, "largest sampled pseudo-hyperbolic "
                                                 "separation on the z-grid", 0.0);
        res["interpretation"] = est.interpretation;
    } else if (test == "continuity") {
        std::vector<double> t0s;
        if (cfg.contains("t0_candidates"))
            for (const auto& v : cfg.at("t0_candidates")) t0s.push_back(v.get<double>());
        if (t0s.empty()) t0s = {0.5, 1.0};
        const ContinuityEvidence ev =
            eventual_norm_continuity_test(spec, p, w, t0s, num_or(cfg, "gamma", 0.0));
        res["status"] = ev.passed() ? "passed"
                        : ev.status == ContinuityEvidence::Status::failed ? "failed"
                                                                          : "inconclusive";
        res["passed_at"] = ev.passed_at;
        res["decay_rate"] = metric(ev.decay_rate, "mean dyadic slope of the functional curve",
                                   0.0);
        res["notes"] = ev.notes;
        if (ev.status == ContinuityEvidence::Status::inconclusive) status = 2;
        if (sh.plot) {
            std::vector<std::vector<double>> rows;
            for (const auto& [s, v] : ev.curve) rows.push_back({s, v});
            write_csv(csv_path(sh, "difference_curve.csv"), {"s", "value"}, rows);
        }
    } else if (test == "compactness") {
        std::vector<double> ts;
        if (cfg.contains("t_list"))
            for (const auto& v : cfg.at("t_list")) ts.push_back(v.get<double>());
        if (ts.empty()) ts = {1.0};
        const auto verdicts = eventual_compactness_test(spec, w, ts, int_or(cfg, "j_max", 10),
                                                        int_or(cfg, "angles", 32));
        auto arr = ordered_json::array();
        std::vector<std::vector<double>> rows;
        for (const auto& v : verdicts) {
            ordered_json one;
            one["t"] = v.t;
            one["status"] = v.status == CompactnessVerdict::Status::compact ? "compact"
                            : v.status == CompactnessVerdict::Status::not_compact
                                ? "not_compact"
                                : "inconclusive";
            one["profile_band"] = {v.band_lo, v.band_hi};
            arr.push_back(one);
            if (v.status == CompactnessVerdict::Status::inconclusive) status = 2;
            for (size_t i = 0; i < v.radii.size(); ++i)
                rows.push_back({v.t, v.radii[i], v.profile[i]});
        }
        res["verdicts"] = arr;
        if (sh.plot)
            write_csv(csv_path(sh, "compactness_profiles.csv"), {"t", "r", "ratio"}, rows);
    } else {
        throw domain_error("config: test must be functional, continuity, or compactness");
    }

    return finish("difference", status, std::move(res), sh);
}

// -------------------------------------------------------------- resolvent --

int cmd_resolvent(const Shared& sh, const ordered_json& cfg) {
    const int n_terms = effective_truncation(sh, cfg);
    const std::string mode = cfg.contains("mode") ? cfg.at("mode").get<std::string>()
                                                  : std::string("spectrum");
    ordered_json res;
    int status = 0;

    if (mode == "spectrum") {
        const RadialWeight w = weight_from(cfg);
        const SemigroupSpec spec = group_from(cfg, n_terms);
        const double p = p_from(cfg);
        const SpiralGeometry geo = resolve_geometry(cfg, spec);
        const SpectrumReport rep =
            r_h_spectrum(spec.h, spec.mu(), p, w, geo, int_or(cfg, "k_max", 64));
        res["opening"] = geometry_json(geo);
        res["spectrum"] = rep.to_json();
        if (any_inconclusive_caveat(rep)) status = 2;
    } else if (mode == "apply") {
        const SemigroupSpec spec = group_from(cfg, n_terms);
        const std::string op = need(cfg, "operator").get<std::string>();
        AnalyticSeries f = series_from(need(cfg, "f"), n_terms);
        if (f.length() < n_terms && cfg.contains("pad") && cfg.at("pad").get<bool>())
            f.c.resize(n_terms, cplx{0.0, 0.0});
        AnalyticSeries g;
        if (op == "resolvent")
            g = apply_resolvent(spec, cplx_at(need(cfg, "lambda"), "lambda"), f);
        else if (op == "R_h")
            g = apply_R_h(spec.h, f);
        else if (op == "P_h")
            g = apply_P_h(spec.h, f);
        else if (op == "Q_h")
            g = apply_Q_h(spec.h, f);
        else if (op == "L_h")
            g = apply_L_h(spec.h, f);
        else if (op == "J")
            g = apply_J(f);
        else if (op == "M_z")
            g = apply_M_z(f);
        else
            throw domain_error("config: operator must be one of resolvent, R_h, P_h, Q_h, "
                               "L_h, J, M_z");
        res["operator"] = op;
        auto coeffs = ordered_json::array();
        for (const cplx& c : g.c) coeffs.push_back({c.real(), c.imag()});
        res["series"] = {{"coeffs", coeffs}};
    } else if (mode == "bloch") {
        AnalyticSeries g;
        if (cfg.contains("g")) {
            g = series_from(cfg.at("g"), n_terms);
        } else {
            // default: the compact-resolvent criterion series log(h/z)
            const SemigroupSpec spec = group_from(cfg, n_terms);
            const AnalyticSeries u = shift_down(spec.h);
            g = series_log(u, u.length());
        }
        const BlochProfile prof =
            bloch_little_o_test(g, int_or(cfg, "j_max", 11), int_or(cfg, "angles", 64));
        res["verdict"] = to_string(prof.verdict);
        res["profile_end"] = metric(prof.values.empty() ? 0.0 : prof.values.back(),
                                    "max over angles of (1-r^2)|g'| at the deepest radius",
                                    0.0);
        if (prof.verdict == BlochVerdict::inconclusive) status = 2;
        if (sh.plot) {
            std::vector<std::vector<double>> rows;
            for (size_t i = 0; i < prof.radii.size(); ++i)
                rows.push_back({prof.radii[i], prof.values[i]});
            write_csv(csv_path(sh, "resolvent_bloch.csv"), {"r", "value"}, rows);
        }
    } else if (mode == "boundary") {
        const SemigroupSpec spec = group_from(cfg, n_terms);
        const BoundaryTestResult bt = generator_boundary_test(
            spec, int_or(cfg, "zeta_count", 16), int_or(cfg, "j_max", 10));
        res["verdict"] = to_string(bt.verdict);
        if (sh.plot) {
            std::vector<std::vector<double>> rows;
            for (size_t a = 0; a < bt.zeta_angles.size(); ++a)
                for (size_t i = 0; i < bt.radii.size(); ++i)
                    rows.push_back({bt.zeta_angles[a], bt.radii[i], bt.ratios[a][i]});
            write_csv(csv_path(sh, "resolvent_boundary.csv"), {"zeta_angle", "r", "ratio"},
                      rows);
        }
    } else {
        throw domain_error("config: mode must be spectrum, apply, bloch, or boundary");
    }

    return finish("resolvent", status, std::move(res), sh);
}

// -------------------------------------------------------------- semigroup --

int cmd_semigroup(const Shared& sh, const ordered_json& cfg) {
    const int n_terms = effective_truncation(sh, cfg);
    const double tol = effective_tol(sh, cfg);
    const SemigroupSpec spec = group_from(cfg, n_terms);

    std::vector<double> ts;
    if (cfg.contains("t_list"))
        for (const auto& v : cfg.at("t_list")) ts.push_back(v.get<double>());
    if (ts.empty()) ts = {0.1, 0.7};

    const FixedPointCheck fp = fixed_point_check(spec, ts);

    // sup-grid residuals on |z| <= 0.9: Koenigs relation and the law
    std::vector<cplx> grid;
    for (double r : {0.3, 0.6, 0.9})
        for (int k = 0; k < 16; ++k) grid.push_back(std::polar(r, 2.0 * M_PI * k / 16.0));
    double koenigs_res = 0.0, law_res = 0.0;
    for (double t : ts) {
        const cplx lam = std::exp(spec.gprime_b * t);
        for (const cplx& z : grid) {
            const cplx ptz = evaluate_phi(spec, t, z, tol);
            koenigs_res = std::max(koenigs_res,
                                   std::abs(eval(spec.h, ptz) - lam * eval(spec.h, z)));
            for (double s : ts) {
                const cplx both = evaluate_phi(spec, t + s, z, tol);
                const cplx chained = evaluate_phi(spec, t, evaluate_phi(spec, s, z, tol), tol);
                law_res = std::max(law_res, std::abs(both - chained));
            }
        }
    }

    ordered_json res;
    res["name"] = spec.name;
    res["mu"] = {spec.mu().real(), spec.mu().imag()};
    res["fixed_point_residual"] =
        metric(fp.fixed_point_residual, "max |phi_t(b) - b| over t_list", tol);
    res["multiplier_residual"] = metric(
        fp.multiplier_residual, "max |phi_t'(b) - exp(G'(b) t)|, central difference", tol);
    res["koenigs_residual"] = metric(
        koenigs_res, "sup |h(phi_t(z)) - exp(G'(b) t) h(z)| over the |z| <= 0.9 grid", tol);
    res["law_residual"] = metric(
        law_res, "sup |phi_{t+s}(z) - phi_t(phi_s(z))| over the |z| <= 0.9 grid", tol);

    if (cfg.contains("estimate_opening") && cfg.at("estimate_opening").get<bool>()) {
        OpeningOptions opt;
        if (cfg.contains("opening_options")) {
            const auto& o = cfg.at("opening_options");
            opt.eps = num_or(o, "eps", opt.eps);
            opt.boundary_samples = int_or(o, "boundary_samples", opt.boundary_samples);
            opt.t_min = num_or(o, "t_min", opt.t_min);
            opt.t_max = num_or(o, "t_max", opt.t_max);
        }
        res["opening"] = geometry_json(maximal_opening(spec, opt));
    }

    if (sh.plot) {
        std::vector<cplx> starts;
        for (int k = 0; k < 8; ++k) starts.push_back(std::polar(0.5, 2.0 * M_PI * k / 8.0));
        for (int k = 0; k < 4; ++k)
            starts.push_back(std::polar(0.8, 2.0 * M_PI * (k + 0.5) / 4.0));
        const double t_hi = 2.0 * *std::max_element(ts.begin(), ts.end());
        std::vector<std::vector<double>> rows;
        for (const cplx& z : starts)
            for (int i = 0; i <= 64; ++i) {
                const double t = t_hi * i / 64.0;
                const cplx w = evaluate_phi(spec, t, z, tol);
                rows.push_back({t, z.real(), z.imag(), w.real(), w.imag()});
            }
        write_csv(csv_path(sh, "semigroup_trajectory.csv"),
                  {"t", "z_re", "z_im", "phi_re", "phi_im"}, rows);
    }

    return finish("semigroup", 0, std::move(res), sh);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral laboratory for composition semigroups on weighted Bergman spaces"};
    app.require_subcommand(1);

    Shared sh;
    std::function<int(const Shared&, const ordered_json&)> run;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", sh.config_path, "experiment config JSON")->required();
        sub->add_option("--out", sh.out_dir, "output directory (default .)");
        sub->add_flag("--emit-plot-data", sh.plot, "also write CSV plot data");
        sub->add_option("--truncation", sh.truncation,
                        "series length override (default: config value or 2048)");
        sub->add_option("--tol", sh.tol,
                        "map-inversion tolerance override (default: config value or 1e-12)");
    };

    struct Sub {
        const char* name;
        const char* blurb;
        int (*fn)(const Shared&, const ordered_json&);
    };
    const Sub subs[] = {
        {"weights", "doubling diagnostics and tail/star profiles of a radial weight",
         cmd_weights},
        {"spectrum", "point / composition / generator spectra", cmd_spectrum},
        {"difference", "difference functional, norm-continuity and compactness tests",
         cmd_difference},
        {"resolvent", "resolvent spectra, operator application, Bloch and boundary tests",
         cmd_resolvent},
        {"semigroup", "trajectories, fixed-point and Koenigs residuals, opening estimate",
         cmd_semigroup},
    };
    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.blurb);
        add_common(sub);
        sub->callback([&run, fn = s.fn] { run = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;  // refusal bucket for bad invocations
    }

    try {
        return run(sh, load_config(sh.config_path));
    } catch (const domain_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 1;
    } catch (const divergence_error& e) {
        std::cerr << "divergence: " << e.what() << " (growth exponent "
                  << format_double(e.growth_exponent) << ")\n";
        return 1;
    } catch (const newton_error& e) {
        std::cerr << "inversion failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
