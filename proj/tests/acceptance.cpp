// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Each criterion carries its own runtime budget; exceeding it is a failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "semispec/difference.hpp"
#include "semispec/resolvent.hpp"
#include "semispec/semigroup.hpp"
#include "semispec/series.hpp"
#include "semispec/spectral.hpp"
#include "semispec/weights.hpp"

namespace {

using namespace semispec;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = false;
    std::string detail;
};

int failures = 0;

std::string sci(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << v;
    return os.str();
}

void run(int id, const char* label, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_budget = dt < budget_s;
    const bool ok = out.ok && in_budget;
    if (!ok) ++failures;
    std::printf("[%s] criterion %2d: %s (%s; %.2f s of %.0f s)%s\n", ok ? "PASS" : "FAIL", id,
                label, out.detail.c_str(), dt, budget_s,
                out.ok && !in_budget ? " [over budget]" : "");
    std::fflush(stdout);
}

AnalyticSeries random_poly(int deg, int pad_to, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> c(static_cast<size_t>(pad_to), cplx{0.0, 0.0});
    for (int n = 0; n <= deg; ++n) c[static_cast<size_t>(n)] = cplx{u(rng), u(rng)};
    return AnalyticSeries(std::move(c));
}

const char* kExampleSet[] = {"z", "log(1/(1-z))", "log((1+z)/(1-z))"};

Outcome criterion_1() {
    const RadialWeight w = RadialWeight::standard(0.0);
    const AnalyticSeries h = named_series("z", 64);
    const FiniteSection T = operator_section(
        [&](const AnalyticSeries& f) { return apply_R_h(h, f); }, w, 32, "R_z");
    const std::vector<cplx> ev = section_eigenvalues(T);
    if (ev.size() != 32) return {false, "expected 32 eigenvalues, got " + std::to_string(ev.size())};
    double dev = 0.0;
    for (int k = 0; k < 32; ++k)
        dev = std::max(dev, std::abs(ev[static_cast<size_t>(k)] - cplx{1.0 / (k + 1), 0.0}));
    return {dev < 1e-12, "max eigenvalue deviation " + sci(dev)};
}

Outcome criterion_2() {
    double dev = 0.0;
    for (const char* name : kExampleSet) {
        const AnalyticSeries h = named_series(name, 128);
        for (int k = 0; k <= 8; ++k) {
            const AnalyticSeries hk = pow_int(h, k, 128);
            dev = std::max(dev,
                           sup_coeff_diff(apply_R_h(h, hk), scale(hk, 1.0 / (k + 1)), 127));
        }
    }
    return {dev < 1e-10, "max coefficient residual " + sci(dev)};
}

Outcome criterion_3() {
    std::mt19937 rng(20260819u);
    double dev = 0.0;
    for (const char* name : kExampleSet) {
        const AnalyticSeries h = named_series(name, 64);
        for (int trial = 0; trial < 50; ++trial) {
            const AnalyticSeries f = random_poly(20, 64, rng);
            const AnalyticSeries pf = apply_P_h(h, f);
            dev = std::max(dev, sup_coeff_diff(apply_M_z(pf), apply_R_h(h, apply_M_z(f)), 40));
            dev = std::max(dev, sup_coeff_diff(apply_Q_h(h, f), add(pf, apply_Q_h(h, pf)), 40));
        }
    }
    return {dev < 1e-10, "max identity residual over 300 checks " + sci(dev)};
}

Outcome criterion_4() {
    const SemigroupSpec spec = make_semigroup("example2", 256);
    if (std::abs(spec.mu() - cplx{1.0, 0.0}) > 1e-15) return {false, "mu != 1"};
    const cplx lams[] = {{1.0, 0.0}, {2.0, 0.0}, {1.0, 1.0}};
    std::mt19937 rng(4u);
    double dev = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const AnalyticSeries f = random_poly(20, 256, rng);
        AnalyticSeries rf[3];
        for (int i = 0; i < 3; ++i) rf[i] = apply_resolvent(spec, lams[i], f);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                const AnalyticSeries lhs = sub(rf[i], rf[j]);
                const AnalyticSeries rhs =
                    scale(apply_resolvent(spec, lams[i], rf[j]), lams[j] - lams[i]);
                dev = std::max(dev, sup_coeff_diff(lhs, rhs, 128));
            }
    }
    return {dev < 1e-9, "max resolvent-equation residual " + sci(dev)};
}

Outcome criterion_5() {
    const SemigroupSpec spec = make_semigroup("example3");
    SemigroupSpec newton = spec;
    newton.closed_form = nullptr;

    std::vector<cplx> grid{cplx{0.0, 0.0}};
    for (double r : {0.15, 0.45, 0.75, 0.9})
        for (int q = 0; q < 16; ++q)
            grid.push_back(std::polar(r, 2.0 * M_PI * q / 16.0));

    const double ts[] = {0.1, 0.7};
    double law = 0.0, koenigs = 0.0;
    const SemigroupSpec* paths[] = {&spec, &newton};
    for (const SemigroupSpec* path : paths) {
        for (double t : ts)
            for (double s : ts)
                for (cplx z : grid) {
                    const cplx one = evaluate_phi(*path, t, evaluate_phi(*path, s, z));
                    const cplx two = evaluate_phi(*path, t + s, z);
                    law = std::max(law, std::abs(one - two));
                }
        for (double t : ts)
            for (cplx z : grid) {
                const cplx img = evaluate_phi(*path, t, z);
                koenigs = std::max(koenigs, std::abs(eval(spec.h, img) -
                                                     std::exp(-t) * eval(spec.h, z)));
            }
    }
    const bool ok = law < 1e-8 && koenigs < 1e-10;
    return {ok, "law residual " + sci(law) + ", Koenigs residual " + sci(koenigs)};
}

Outcome criterion_6() {
    const RadialWeight w = RadialWeight::standard(0.0);
    const SemigroupSpec spec = make_semigroup("dilation(1)");
    const SpiralGeometry geo = maximal_opening(spec);
    const ContinuityEvidence none;  // p = 2 branch needs no evidence

    const SpectrumReport gen = generator_spectrum(spec, 2.0, w, 1.0, none, geo, 64);
    const std::vector<cplx>* pts = gen.point_list();
    if (!pts) return {false, "generator spectrum has no point part"};
    if (pts->size() != 65)
        return {false, "expected 65 generator points, got " + std::to_string(pts->size())};
    double dev = 0.0;
    for (int k = 0; k <= 64; ++k) {
        double best = 1e300;
        for (const cplx& q : *pts) best = std::min(best, std::abs(q - cplx{-double(k), 0.0}));
        dev = std::max(dev, best);
    }
    if (dev > 1e-12) return {false, "generator points miss {-k} by " + sci(dev)};

    CphiOptions opt;
    opt.k_max = 64;
    const AnalyticSeries phi(std::vector<cplx>{cplx{0.0, 0.0}, cplx{std::exp(-1.0), 0.0}});
    const SpectrumReport comp = cphi_spectrum(phi, 2.0, w, opt);
    const std::vector<cplx>* ladder = comp.point_list();
    if (!ladder) return {false, "composition spectrum has no point part"};
    double map_dev = 0.0;
    for (const cplx& lam : *pts) {
        const cplx target = std::exp(lam);  // t = 1
        double best = 1e300;
        for (const cplx& q : *ladder) best = std::min(best, std::abs(q - target));
        map_dev = std::max(map_dev, best);
    }
    if (map_dev > 1e-10) return {false, "exp(t sigma(Gamma)) misses the ladder by " + sci(map_dev)};

    const EssentialRadius re = essential_radius(spec, 1.0, w, 2.0);
    const bool ok = re.value > 0.0 && re.value < 1e-3;
    return {ok, "point dev " + sci(dev) + ", mapping dev " + sci(map_dev) +
                    ", essential radius " + sci(re.value)};
}

Outcome criterion_7() {
    const RadialWeight w = RadialWeight::standard(0.0);
    const SemigroupSpec spec = make_semigroup("rotation(1)");
    SpiralGeometry geo;
    geo.mu = spec.mu();
    geo.eta = 0.0;
    geo.status = SpiralGeometry::Status::exact_user_supplied;

    const int k_max = 64;
    const SpectrumReport rep = point_spectrum(spec, 2.0, w, geo, k_max);
    const std::vector<cplx>* pts = rep.point_list();
    if (!pts) return {false, "no point part"};
    if (static_cast<int>(pts->size()) != k_max + 1)
        return {false, "membership filter dropped points: " + std::to_string(pts->size()) +
                           " of " + std::to_string(k_max + 1)};
    double dev = 0.0;
    for (int k = 0; k <= k_max; ++k)
        dev = std::max(dev, std::abs((*pts)[static_cast<size_t>(k)] - cplx{0.0, double(k)}));
    for (const std::string& c : rep.caveats)
        if (c.find("excluded") != std::string::npos ||
            c.find("inconclusive") != std::string::npos)
            return {false, "membership caveat: " + c};
    if (dev > 1e-12) return {false, "points miss {i k} by " + sci(dev)};

    const ContinuityEvidence ev = eventual_norm_continuity_test(spec, 2.0, w, {0.5}, 0.0);
    const bool ok = !ev.passed();
    return {ok, "all " + std::to_string(k_max + 1) + " memberships in, continuity test " +
                    (ev.passed() ? "passed (must not)" : "not passed")};
}

Outcome criterion_8() {
    const RadialWeight w = RadialWeight::standard(0.0);
    const auto dil = eventual_compactness_test(make_semigroup("dilation(1)"), w, {1.0});
    const auto rot = eventual_compactness_test(make_semigroup("rotation(1)"), w, {1.0});
    if (dil.size() != 1 || rot.size() != 1) return {false, "verdict count mismatch"};

    const bool dil_compact = dil[0].status == CompactnessVerdict::Status::compact;
    bool decaying = dil[0].profile.size() >= 2;
    for (size_t i = 0; i + 1 < dil[0].profile.size(); ++i)
        decaying = decaying && dil[0].profile[i + 1] < dil[0].profile[i] + 1e-12;
    decaying = decaying && dil[0].profile.back() < 0.5 * dil[0].profile.front();

    const bool rot_flat = rot[0].status == CompactnessVerdict::Status::not_compact;
    double flat_dev = 0.0;
    for (double v : rot[0].profile) flat_dev = std::max(flat_dev, std::abs(v - 1.0));

    const bool ok = dil_compact && decaying && rot_flat && flat_dev <= 1e-12;
    return {ok, std::string("dilation ") + (dil_compact ? "compact" : "NOT compact") +
                    (decaying ? " decaying" : " non-decaying") + ", rotation " +
                    (rot_flat ? "not_compact" : "WRONG verdict") + " profile dev " +
                    sci(flat_dev)};
}

Outcome criterion_9() {
    double closed_dev = 0.0;
    const RadialWeight w0 = RadialWeight::standard(0.0);
    for (int i = 0; i <= 400; ++i) {
        const double r = 0.05 + (0.999 - 0.05) * i / 400.0;
        closed_dev = std::max(closed_dev, std::abs(w0.tail(r) - (1.0 - r)));
        const double star_exact = 0.5 * std::log(1.0 / r) - (1.0 - r * r) / 4.0;
        closed_dev = std::max(closed_dev, std::abs(w0.star(r) - star_exact));
    }
    if (closed_dev > 1e-10) return {false, "alpha=0 closed-form deviation " + sci(closed_dev)};

    double worst_band = 0.0;
    for (double alpha : {0.0, 1.0, 2.0}) {
        const RadialWeight w = RadialWeight::standard(alpha);
        double lo = 1e300, hi = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double r = 0.55 + (0.999 - 0.55) * i / 400.0;
            const double ratio = w.star(r) / (w.tail(r) * (1.0 - r));
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        worst_band = std::max(worst_band, hi / lo);
    }
    const bool ok = worst_band < 10.0;
    return {ok, "closed-form dev " + sci(closed_dev) + ", worst comparability band factor " +
                    sci(worst_band)};
}

Outcome criterion_10() {
    const RadialWeight w = RadialWeight::standard(0.0);
    const double p = 4.0;
    const double gamma = gamma0_calibrate(w, p) + 1.0;
    const double t = 0.7;
    const auto dilation_map = [](double tt) {
        return DiskMap([tt](cplx z) { return std::exp(-tt) * z; });
    };

    const DifferenceEstimate zero =
        difference_functional(dilation_map(t), dilation_map(t), p, w, gamma);
    if (zero.value != 0.0) return {false, "zero law violated: " + sci(zero.value)};

    double worst_ratio = 0.0;
    bool monotone = true;
    for (double sign : {1.0, -1.0}) {
        std::vector<double> curve;
        for (int j = 3; j <= 10; ++j) {
            const double s = t * (1.0 + sign * std::pow(2.0, -j));
            curve.push_back(
                difference_functional(dilation_map(t), dilation_map(s), p, w, gamma).value);
        }
        for (size_t i = 0; i + 1 < curve.size(); ++i)
            monotone = monotone && curve[i + 1] < curve[i];
        worst_ratio = std::max(worst_ratio, curve.back() / curve.front());
    }
    const bool ok = monotone && worst_ratio < 1e-6;
    return {ok, std::string(monotone ? "monotone" : "NOT monotone") +
                    ", j=10 over j=3 value ratio " + sci(worst_ratio)};
}

Outcome criterion_11() {
    const AnalyticSeries zero(std::vector<cplx>(8, cplx{0.0, 0.0}));
    const BlochProfile b0 = bloch_little_o_test(zero);
    double z_dev = 0.0;
    for (double v : b0.values) z_dev = std::max(z_dev, std::abs(v));
    if (b0.verdict != BlochVerdict::little_o || z_dev != 0.0)
        return {false, "h=z should be little_o with zero profile"};

    const AnalyticSeries g = named_series("log(1/(1-z))", 1 << 16);
    const BlochProfile b1 = bloch_little_o_test(g);
    const double end = b1.values.empty() ? 0.0 : b1.values.back();
    if (b1.verdict == BlochVerdict::little_o) return {false, "h=z/(1-z) misread as little_o"};
    if (std::abs(end - 2.0) > 1e-3)
        return {false, "h=z/(1-z) profile end " + sci(end) + " not within 1e-3 of 2"};

    for (const char* name : {"rotation(1)", "dilation(1)"}) {
        const SemigroupSpec spec = make_semigroup(name);
        const AnalyticSeries u = shift_down(spec.h);
        const BlochProfile bl = bloch_little_o_test(series_log(u, u.length()));
        const BoundaryTestResult bt = generator_boundary_test(spec);
        const bool bloch_small = bl.verdict == BlochVerdict::little_o;
        const bool boundary_divergent = bt.verdict == BoundaryVerdict::divergent_everywhere;
        if (bloch_small != boundary_divergent)
            return {false, std::string(name) + ": Bloch and boundary tests disagree"};
        if (!bloch_small)
            return {false, std::string(name) + ": log(h/z) not little_o"};
    }
    return {true, "zero profile exact, bounded profile end " + sci(end) +
                      ", boundary test agrees on both groups"};
}

}  // namespace

int main() {
    std::printf("acceptance gate\n");
    run(1, "R_z finite section eigenvalues {1/(k+1)}, N=32", 1.0, criterion_1);
    run(2, "eigen-identity R_h(h^k) = h^k/(k+1), k<=8, N=128", 5.0, criterion_2);
    run(3, "intertwining and splitting identities, 50 polynomials per h", 10.0, criterion_3);
    run(4, "resolvent equation, 20 polynomials, lambda,nu in {1,2,1+i}", 10.0, criterion_4);
    run(5, "semigroup law and Koenigs relation, closed form and Newton", 5.0, criterion_5);
    run(6, "spectral mapping for the dilation group at p=2", 30.0, criterion_6);
    run(7, "rotation branch: full point set, continuity not passed", 30.0, criterion_7);
    run(8, "eventual compactness: dilation compact, rotation not", 10.0, criterion_8);
    run(9, "weight calculus closed forms and comparability band", 5.0, criterion_9);
    run(10, "difference functional zero law and dyadic decay", 60.0, criterion_10);
    run(11, "Bloch little-o and boundary divergence cross-check", 10.0, criterion_11);
    if (failures == 0)
        std::printf("acceptance: all 11 criteria passed\n");
    else
        std::printf("acceptance: %d of 11 criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
