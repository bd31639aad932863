// Benchmark: parallel kernels against their serial reference twins. Prints
// per-kernel wall times, the speedup, and whether the outputs match bitwise
// (the reductions on both sides are ordered, so they must).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#include "semispec/difference.hpp"
#include "semispec/reference.hpp"
#include "semispec/resolvent.hpp"
#include "semispec/semigroup.hpp"
#include "semispec/spectral.hpp"
#include "semispec/weights.hpp"

using namespace semispec;

namespace {

double seconds(const std::function<void()>& body, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

template <class T>
bool identical(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::memcmp(&a[i], &b[i], sizeof(T)) != 0) return false;
    return true;
}

void row(const char* name, double par, double ser, bool match) {
    std::printf("%-20s parallel %8.4f s   serial %8.4f s   speedup %5.2fx   %s\n", name, par,
                ser, ser / par, match ? "bitwise match" : "MISMATCH");
}

}  // namespace

int main() {
    const RadialWeight w = RadialWeight::standard(0.0);
    const SemigroupSpec dil = make_semigroup("dilation(1)");

    // difference_scan: the a-grid sweep of the tail-weighted sigma^p integral
    {
        std::vector<cplx> a_points, phi_vals, psi_vals;
        std::vector<double> sigma_pw;
        for (int j = 1; j <= 12; ++j)
            for (int k = 0; k < 64; ++k)
                a_points.push_back(std::polar(1.0 - std::pow(0.5, j), 2.0 * M_PI * k / 64.0));
        for (int j = 1; j <= 14; ++j)
            for (int k = 0; k < 256; ++k) {
                const cplx z = std::polar(1.0 - std::pow(0.5, j), 2.0 * M_PI * k / 256.0);
                const cplx u = std::exp(-1.0) * z, v = std::exp(-1.1) * z;
                phi_vals.push_back(u);
                psi_vals.push_back(v);
                const double sg = std::abs((u - v) / (1.0 - std::conj(u) * v));
                sigma_pw.push_back(sg * sg * std::abs(z) * w(std::abs(z)));
            }
        std::vector<double> par_out, ser_out;
        const double tp = seconds(
            [&] {
                par_out =
                    difference_scan(a_points, 2.0, w, phi_vals, psi_vals, sigma_pw);
            },
            3);
        const double ts = seconds(
            [&] {
                ser_out =
                    ref::difference_scan(a_points, 2.0, w, phi_vals, psi_vals, sigma_pw);
            },
            3);
        row("difference_scan", tp, ts, identical(par_out, ser_out));
    }

    // star_ratio_profile: wstar ratio of an iterate over a radius/angle grid
    {
        const auto map = [](cplx z) { return std::exp(-3.0) * z; };
        std::vector<double> radii;
        for (int j = 1; j <= 14; ++j) radii.push_back(1.0 - std::pow(0.5, j));
        std::vector<double> par_out, ser_out;
        const double tp =
            seconds([&] { par_out = star_ratio_profile(map, w, radii, 256); }, 3);
        const double ts =
            seconds([&] { ser_out = ref::star_ratio_profile(map, w, radii, 256); }, 3);
        row("star_ratio_profile", tp, ts, identical(par_out, ser_out));
    }

    // bloch_profile: (1-r^2)|g'| maxima for g = log(h/z) of the slit-plane map
    {
        const SemigroupSpec koebe = make_semigroup("koebe", 1 << 12);
        const AnalyticSeries u = shift_down(koebe.h);
        const AnalyticSeries g = series_log(u, u.length());
        std::vector<double> radii;
        for (int j = 1; j <= 11; ++j) radii.push_back(1.0 - std::pow(0.5, j));
        std::vector<double> par_out, ser_out;
        const double tp = seconds([&] { par_out = bloch_profile(g, radii, 512); }, 3);
        const double ts = seconds([&] { ser_out = ref::bloch_profile(g, radii, 512); }, 3);
        row("bloch_profile", tp, ts, identical(par_out, ser_out));
    }

    // open_angle_flags: spiral-line membership against a boundary polyline
    {
        const int m = 4096;
        std::vector<cplx> poly(m);
        for (int k = 0; k < m; ++k) {
            const double th = 2.0 * M_PI * k / m;
            poly[k] = eval(dil.h, std::polar(1.0 - 1e-3, th));
        }
        std::vector<double> thetas(512), tsamp(121);
        for (int i = 0; i < 512; ++i) thetas[i] = 2.0 * M_PI * i / 512.0;
        for (int i = 0; i < 121; ++i) tsamp[i] = -12.0 + 0.2 * i;
        std::vector<std::uint8_t> par_out, ser_out;
        const double tp = seconds(
            [&] { par_out = open_angle_flags(poly, dil.mu(), thetas, tsamp); }, 3);
        const double ts = seconds(
            [&] { ser_out = ref::open_angle_flags(poly, dil.mu(), thetas, tsamp); }, 3);
        row("open_angle_flags", tp, ts, identical(par_out, ser_out));
    }

    return 0;
}
