#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace semispec {

// Precondition violation: the request is outside the operation's domain.
// CLI maps this to the "refusal" exit code.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A quantity could not be computed to the requested accuracy
// (series truncation too short, quadrature not converged, ...).
struct precision_error : std::runtime_error {
    double partial_value = 0.0;
    double achieved_tol  = 0.0;
    precision_error(const std::string& what, double partial, double achieved)
        : std::runtime_error(what), partial_value(partial), achieved_tol(achieved) {}
};

// An integral kept growing as the integration domain was extended:
// "possibly infinite", with the fitted dyadic growth exponent attached.
struct divergence_error : std::runtime_error {
    double growth_exponent = 0.0;
    double partial_value   = 0.0;
    divergence_error(const std::string& what, double exponent, double partial)
        : std::runtime_error(what), growth_exponent(exponent), partial_value(partial) {}
};

// Newton / path continuation failed to converge.
struct newton_error : std::runtime_error {
    std::complex<double> last_iterate{0.0, 0.0};
    double path_position = 0.0;
    newton_error(const std::string& what, std::complex<double> last, double s)
        : std::runtime_error(what), last_iterate(last), path_position(s) {}
};

}  // namespace semispec
