#pragma once

#include <complex>

namespace semispec {

// pseudohyperbolic distance |(a-z)/(1-conj(a)z)|
double pseudo_distance(std::complex<double> a, std::complex<double> z);

// The pseudohyperbolic disk {z : pseudo_distance(a,z) < r} is a Euclidean disk.
struct EuclideanDisk {
    std::complex<double> center;
    double radius;
};
EuclideanDisk pseudo_disk(std::complex<double> a, double r);

// Carleson square over the boundary arc centered at a/|a| with arclength 1-|a|.
struct CarlesonSquare {
    double theta_center;   // argument of a
    double arc_length;     // 1 - |a|
    double inner_radius;   // |a|
    bool contains(std::complex<double> z) const;
};
CarlesonSquare carleson_square(std::complex<double> a);

}  // namespace semispec
