#pragma once

// Serial reference implementations of the parallel kernels. Kept for testing
// (results must match the parallel versions exactly: the reductions on both
// sides are ordered) and for the benchmark target.

#include <cstdint>
#include <vector>

#include "semispec/difference.hpp"
#include "semispec/series.hpp"
#include "semispec/weights.hpp"

namespace semispec::ref {

std::vector<double> difference_scan(const std::vector<cplx>& a_points, double gamma,
                                    const RadialWeight& w, const std::vector<cplx>& phi_vals,
                                    const std::vector<cplx>& psi_vals,
                                    const std::vector<double>& sigma_pw);

std::vector<double> star_ratio_profile(const DiskMap& map, const RadialWeight& w,
                                       const std::vector<double>& radii, int angles);

std::vector<double> bloch_profile(const AnalyticSeries& g, const std::vector<double>& radii,
                                  int angles);

std::vector<std::uint8_t> open_angle_flags(const std::vector<cplx>& poly, cplx mu,
                                           const std::vector<double>& thetas,
                                           const std::vector<double>& ts);

}  // namespace semispec::ref
