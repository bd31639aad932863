#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace semispec {

// Radial weight on the unit disk, evaluated by modulus. The tail integral
// tail(r) = int_r^1 w(s) ds must stay positive on [0,1).
class RadialWeight {
  public:
    enum class Kind { standard, tabulated, closed_form };

    // (alpha+1)*(1-r^2)^alpha, alpha > -1; the normalization makes alpha=0 the constant 1
    static RadialWeight standard(double alpha);
    // log-linear interpolation between samples; extrapolated with the last slope
    static RadialWeight tabulated(std::vector<double> radii, std::vector<double> values);
    static RadialWeight closed_form(std::function<double(double)> w, std::string label);
    // rapidly decreasing exp(-c/(1-r)); the stock example outside the doubling class
    static RadialWeight exponential(double c);

    double operator()(double r) const;

    // int_r^1 w(s) ds ; exact binomial closed form for standard integer alpha,
    // otherwise adaptive quadrature with relative accuracy (needed deep in the tail)
    double tail(double r) const;
    // int_r^1 w(s) s ds
    double tail_first_moment(double r) const;
    // int_r^1 s w(s) log(s/r) ds, r in (0,1)
    double star(double r) const;

    double tail0() const { return tail0_; }

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    bool standard_integer_alpha() const;
    const std::string& label() const { return label_; }
    // stable identity string (used as a cache key by calibrations)
    std::string identity() const;

    nlohmann::ordered_json to_json() const;
    static RadialWeight from_json(const nlohmann::ordered_json& j);

  private:
    RadialWeight() = default;
    Kind kind_ = Kind::standard;
    double alpha_ = 0.0;
    double exp_c_ = 0.0;  // parameter of the exponential built-in (label-tagged)
    std::vector<double> tab_r_, tab_logw_;
    std::function<double(double)> fn_;
    std::string label_;
    double tail0_ = 0.0;
    void finalize();
};

struct DoublingReport {
    enum class Verdict { yes, no, inconclusive };
    Verdict upper = Verdict::inconclusive;  // tail(r) <= C * tail((1+r)/2) with bounded C
    double C_upper = 0.0;
    Verdict lower = Verdict::inconclusive;  // tail(r) <= C' * int_r^{1-(1-r)/K} w
    int K = 0;
    double C_lower = 0.0;
    std::vector<double> evidence_grid;
    std::vector<double> upper_ratios;
    std::vector<double> lower_ratios;  // for the reported K
    std::vector<std::string> notes;

    bool in_both() const { return upper == Verdict::yes && lower == Verdict::yes; }
};

// Dyadic-grid diagnostics for the two tail-doubling conditions. Grid defaults to
// r_j = 1-2^-j, j=1..20, truncated where the tail underflows. Verdicts are
// trichotomous: "yes" when the ratio sequence stabilizes (last three within 10%),
// "no" when it grows monotonically through the last five points by more than 10x,
// "inconclusive" otherwise.
DoublingReport doubling_diagnostics(const RadialWeight& w, std::vector<double> grid = {});

// weight mass of the Carleson square over a, normalized area measure
double square_mass(const RadialWeight& w, std::complex<double> a);
// weight mass of the pseudohyperbolic disk of center a, radius r
double disk_mass(const RadialWeight& w, std::complex<double> a, double r);

const char* to_string(DoublingReport::Verdict v);

}  // namespace semispec
