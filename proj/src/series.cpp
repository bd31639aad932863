#include "semispec/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "semispec/errors.hpp"

namespace semispec {

double AnalyticSeries::eval_error_bound(double r) const {
    if (tail_bound == 0.0) return 0.0;
    if (r >= radius_hint) return std::numeric_limits<double>::infinity();
    const double q = r / radius_hint;
    return tail_bound * std::pow(q, length()) / (1.0 - q);
}

cplx eval(const AnalyticSeries& f, cplx z) {
    cplx acc{0.0, 0.0};
    for (int n = f.length() - 1; n >= 0; --n) acc = acc * z + f.c[n];
    return acc;
}

cplx eval_derivative(const AnalyticSeries& f, cplx z) {
    cplx acc{0.0, 0.0};
    for (int n = f.length() - 1; n >= 1; --n) acc = acc * z + double(n) * f.c[n];
    return acc;
}

cplx eval_second_derivative(const AnalyticSeries& f, cplx z) {
    cplx acc{0.0, 0.0};
    for (int n = f.length() - 1; n >= 2; --n) acc = acc * z + double(n) * double(n - 1) * f.c[n];
    return acc;
}

void fft(std::vector<cplx>& a, bool inverse) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw domain_error("fft: length must be a power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / double(len) * (inverse ? 1.0 : -1.0);
        const cplx wl = std::polar(1.0, ang);
        for (size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= double(n);
}

std::vector<cplx> circle_values(const AnalyticSeries& f, double r, int M) {
    if (M <= 0 || (M & (M - 1)) != 0) throw domain_error("circle_values: M must be a power of two");
    // fold a_n r^n into residue classes mod M; DFT gives f at all M-th roots scaled by r
    std::vector<cplx> b(static_cast<size_t>(M), cplx{0.0, 0.0});
    double rn = 1.0;
    for (int n = 0; n < f.length(); ++n) {
        b[static_cast<size_t>(n % M)] += f.c[n] * rn;
        rn *= r;
        if (rn == 0.0) break;
    }
    fft(b, false);
    std::reverse(b.begin() + 1, b.end());  // fft computes exp(-i...), values want exp(+i...)
    return b;
}

namespace {
// conservative tail metadata for a binary op result
void combine_tail(const AnalyticSeries& a, const AnalyticSeries& b, AnalyticSeries& out) {
    out.radius_hint = std::min(a.radius_hint, b.radius_hint);
    out.tail_rigorous = a.tail_rigorous && b.tail_rigorous && a.tail_bound == 0.0 && b.tail_bound == 0.0;
    out.tail_bound = (a.tail_bound == 0.0 && b.tail_bound == 0.0) ? 0.0
                                                                  : a.tail_bound + b.tail_bound;
}

// fit |c_n| ~ B q^n over the top quarter of the coefficients; used for derived
// series (division, log, exp) whose exact tails we do not track
void fitted_tail(AnalyticSeries& s) {
    const int n = s.length();
    if (n < 8) {
        s.tail_bound = 0.0;
        s.tail_rigorous = false;
        return;
    }
    double m = 0.0;
    for (int i = n - n / 4; i < n; ++i) m = std::max(m, std::abs(s.c[i]));
    s.tail_bound = 4.0 * m * std::pow(std::max(s.radius_hint, 1e-3), n);
    s.tail_rigorous = false;
}
}  // namespace

AnalyticSeries add(const AnalyticSeries& a, const AnalyticSeries& b) {
    AnalyticSeries out;
    out.c.resize(std::max(a.c.size(), b.c.size()), cplx{0.0, 0.0});
    for (size_t i = 0; i < a.c.size(); ++i) out.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) out.c[i] += b.c[i];
    combine_tail(a, b, out);
    return out;
}

AnalyticSeries sub(const AnalyticSeries& a, const AnalyticSeries& b) {
    AnalyticSeries out;
    out.c.resize(std::max(a.c.size(), b.c.size()), cplx{0.0, 0.0});
    for (size_t i = 0; i < a.c.size(); ++i) out.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) out.c[i] -= b.c[i];
    combine_tail(a, b, out);
    return out;
}

AnalyticSeries scale(const AnalyticSeries& a, cplx s) {
    AnalyticSeries out = a;
    for (auto& x : out.c) x *= s;
    out.tail_bound *= std::abs(s);
    return out;
}

AnalyticSeries mul(const AnalyticSeries& a, const AnalyticSeries& b, int out_len) {
    const int la = a.length(), lb = b.length();
    const int full = la + lb - 1;
    const int len = out_len > 0 ? std::min(out_len, full) : full;
    AnalyticSeries out;
    out.c.assign(static_cast<size_t>(std::max(len, 0)), cplx{0.0, 0.0});
    for (int i = 0; i < la; ++i) {
        if (a.c[i] == cplx{0.0, 0.0}) continue;
        const int jmax = std::min(lb, len - i);
        for (int j = 0; j < jmax; ++j) out.c[static_cast<size_t>(i + j)] += a.c[i] * b.c[j];
    }
    combine_tail(a, b, out);
    if (out.tail_bound != 0.0 || out_len > 0) {
        // truncation of an exact product re-enters the tail; refit
        if (!(a.tail_bound == 0.0 && b.tail_bound == 0.0 && len == full)) fitted_tail(out);
    }
    return out;
}

AnalyticSeries div(const AnalyticSeries& a, const AnalyticSeries& b, int out_len) {
    if (b.length() == 0 || b.c[0] == cplx{0.0, 0.0})
        throw domain_error("series division: divisor has a zero constant term");
    AnalyticSeries out;
    out.c.assign(static_cast<size_t>(out_len), cplx{0.0, 0.0});
    const cplx inv = 1.0 / b.c[0];
    for (int n = 0; n < out_len; ++n) {
        cplx s = a.coeff(n);
        const int kmax = std::min(n, b.length() - 1);
        for (int k = 1; k <= kmax; ++k) s -= b.c[static_cast<size_t>(k)] * out.c[static_cast<size_t>(n - k)];
        out.c[static_cast<size_t>(n)] = s * inv;
    }
    out.radius_hint = std::min(a.radius_hint, b.radius_hint);
    fitted_tail(out);
    return out;
}

AnalyticSeries derivative(const AnalyticSeries& a) {
    AnalyticSeries out;
    if (a.length() > 1) {
        out.c.resize(a.c.size() - 1);
        for (int n = 1; n < a.length(); ++n) out.c[static_cast<size_t>(n - 1)] = double(n) * a.c[static_cast<size_t>(n)];
    }
    out.radius_hint = a.radius_hint;
    out.tail_bound = a.tail_bound == 0.0 ? 0.0 : a.tail_bound * double(a.length() + 1) / a.radius_hint;
    out.tail_rigorous = false;
    if (a.tail_bound == 0.0) out.tail_rigorous = a.tail_rigorous;
    return out;
}

AnalyticSeries antiderivative(const AnalyticSeries& a) {
    AnalyticSeries out;
    out.c.resize(a.c.size() + 1, cplx{0.0, 0.0});
    for (int n = 0; n < a.length(); ++n) out.c[static_cast<size_t>(n + 1)] = a.c[static_cast<size_t>(n)] / double(n + 1);
    out.radius_hint = a.radius_hint;
    out.tail_bound = a.tail_bound;
    out.tail_rigorous = a.tail_rigorous;
    return out;
}

AnalyticSeries series_log(const AnalyticSeries& a, int out_len) {
    if (a.length() == 0 || a.c[0] == cplx{0.0, 0.0})
        throw domain_error("series log: constant term vanishes");
    AnalyticSeries out;
    out.c.assign(static_cast<size_t>(out_len), cplx{0.0, 0.0});
    out.c[0] = std::log(a.c[0]);
    const cplx inv = 1.0 / a.c[0];
    // from a*g' = a':  n*g_n*a_0 = n*a_n - sum_{k=1}^{n-1} k*g_k*a_{n-k}
    for (int n = 1; n < out_len; ++n) {
        cplx s = double(n) * a.coeff(n);
        const int kmin = std::max(1, n - a.length() + 1);
        for (int k = kmin; k <= n - 1; ++k)
            s -= double(k) * out.c[static_cast<size_t>(k)] * a.c[static_cast<size_t>(n - k)];
        out.c[static_cast<size_t>(n)] = s * inv / double(n);
    }
    out.radius_hint = a.radius_hint;
    fitted_tail(out);
    return out;
}

AnalyticSeries series_exp(const AnalyticSeries& a, int out_len) {
    AnalyticSeries out;
    out.c.assign(static_cast<size_t>(out_len), cplx{0.0, 0.0});
    if (out_len == 0) return out;
    out.c[0] = std::exp(a.coeff(0));
    // from w' = a'*w:  n*w_n = sum_{k=1}^{n} k*a_k*w_{n-k}
    for (int n = 1; n < out_len; ++n) {
        cplx s{0.0, 0.0};
        const int kmax = std::min(n, a.length() - 1);
        for (int k = 1; k <= kmax; ++k)
            s += double(k) * a.c[static_cast<size_t>(k)] * out.c[static_cast<size_t>(n - k)];
        out.c[static_cast<size_t>(n)] = s / double(n);
    }
    out.radius_hint = a.radius_hint;
    fitted_tail(out);
    return out;
}

AnalyticSeries series_pow(const AnalyticSeries& a, cplx q, int out_len) {
    return series_exp(scale(series_log(a, out_len), q), out_len);
}

AnalyticSeries pow_int(const AnalyticSeries& a, int k, int out_len) {
    if (k < 0) throw domain_error("pow_int: negative exponent");
    AnalyticSeries out(std::vector<cplx>{cplx{1.0, 0.0}}, a.radius_hint, 0.0, true);
    for (int i = 0; i < k; ++i) out = mul(out, a, out_len);
    return out;
}

AnalyticSeries truncated(const AnalyticSeries& a, int len) {
    AnalyticSeries out = a;
    if (out.length() > len) {
        // moved coefficients join the tail; keep a fitted bound
        double m = 0.0;
        for (int i = len; i < out.length(); ++i) m = std::max(m, std::abs(out.c[static_cast<size_t>(i)]));
        out.c.resize(static_cast<size_t>(len));
        out.tail_bound = std::max(out.tail_bound, 2.0 * m * std::pow(out.radius_hint, len));
        out.tail_rigorous = false;
    }
    return out;
}

AnalyticSeries shift_down(const AnalyticSeries& a) {
    if (a.length() > 0 && std::abs(a.c[0]) > 1e-13)
        throw domain_error("shift_down: constant term does not vanish");
    AnalyticSeries out = a;
    if (!out.c.empty()) out.c.erase(out.c.begin());
    return out;
}

AnalyticSeries shift_up(const AnalyticSeries& a) {
    AnalyticSeries out = a;
    out.c.insert(out.c.begin(), cplx{0.0, 0.0});
    return out;
}

double sup_coeff_diff(const AnalyticSeries& a, const AnalyticSeries& b, int upto) {
    double m = 0.0;
    for (int n = 0; n < upto; ++n) m = std::max(m, std::abs(a.coeff(n) - b.coeff(n)));
    return m;
}

AnalyticSeries named_series(const std::string& name, int n_terms) {
    std::vector<cplx> c(static_cast<size_t>(n_terms), cplx{0.0, 0.0});
    double tail = 0.0;
    if (name == "z") {
        if (n_terms > 1) c[1] = 1.0;
        return AnalyticSeries(std::move(c), 1.0, 0.0, true);
    }
    if (name == "log(1/(1-z))") {
        for (int n = 1; n < n_terms; ++n) c[static_cast<size_t>(n)] = 1.0 / double(n);
        tail = 1.0 / double(std::max(n_terms, 1));
    } else if (name == "log((1+z)/(1-z))") {
        for (int n = 1; n < n_terms; n += 2) c[static_cast<size_t>(n)] = 2.0 / double(n);
        tail = 2.0 / double(std::max(n_terms, 1));
    } else if (name == "z/(1-z)") {
        for (int n = 1; n < n_terms; ++n) c[static_cast<size_t>(n)] = 1.0;
        tail = 1.0;
    } else if (name == "z/(1-z)^2") {
        for (int n = 1; n < n_terms; ++n) c[static_cast<size_t>(n)] = double(n);
        // |a_n| = n is not geometric at radius 1; certified only inside
        return AnalyticSeries(std::move(c), 1.0, double(n_terms) * 2.0, false);
    } else {
        throw domain_error("named_series: unknown name '" + name + "'");
    }
    return AnalyticSeries(std::move(c), 1.0, tail, true);
}

int required_length(double r, double tol, double coeff_bound) {
    if (r >= 1.0) throw domain_error("required_length: radius must be < 1");
    if (r <= 0.0) return 8;
    const double need = std::log(tol * (1.0 - r) / std::max(coeff_bound, 1e-300)) / std::log(r);
    return std::max(8, static_cast<int>(std::ceil(need)) + 2);
}

}  // namespace semispec
