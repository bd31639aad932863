#include "semispec/disk_geometry.hpp"

#include <cmath>
#include <numbers>

#include "semispec/errors.hpp"

namespace semispec {

double pseudo_distance(std::complex<double> a, std::complex<double> z) {
    if (std::abs(a) >= 1.0 || std::abs(z) >= 1.0)
        throw domain_error("pseudo_distance: arguments must lie in the open unit disk");
    return std::abs((a - z) / (1.0 - std::conj(a) * z));
}

EuclideanDisk pseudo_disk(std::complex<double> a, double r) {
    if (std::abs(a) >= 1.0) throw domain_error("pseudo_disk: center must lie in the open unit disk");
    if (!(r > 0.0 && r < 1.0)) throw domain_error("pseudo_disk: radius must lie in (0,1)");
    const double a2 = std::norm(a);
    const double denom = 1.0 - r * r * a2;
    return EuclideanDisk{(1.0 - r * r) * a / denom, (1.0 - a2) * r / denom};
}

bool CarlesonSquare::contains(std::complex<double> z) const {
    const double m = std::abs(z);
    if (m < inner_radius || m >= 1.0) return false;
    double d = std::arg(z) - theta_center;
    d = std::remainder(d, 2.0 * std::numbers::pi);
    return std::abs(d) <= 0.5 * arc_length;
}

CarlesonSquare carleson_square(std::complex<double> a) {
    const double m = std::abs(a);
    if (m <= 0.0 || m >= 1.0)
        throw domain_error("carleson_square: base point must satisfy 0 < |a| < 1");
    return CarlesonSquare{std::arg(a), 1.0 - m, m};
}

}  // namespace semispec
