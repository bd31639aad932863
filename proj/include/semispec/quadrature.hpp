#pragma once

#include <functional>

namespace semispec {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // estimated absolute error
    long   evals = 0;
    bool   converged = false;
};

// Adaptive Gauss-Kronrod (G7,K15) on [a,b].
// Refines until error <= max(abs_tol, rel_tol*|value|) or the cell budget runs out.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-13, double abs_tol = 0.0, int max_cells = 4000);

// Same, but the initial partition is clustered geometrically toward b
// (for integrands whose scale collapses at the right endpoint, e.g. weight tails).
QuadResult integrate_clustered(const std::function<double(double)>& f, double a, double b,
                               double rel_tol = 1e-13, double abs_tol = 0.0,
                               int presplit = 36, int max_cells = 6000);

}  // namespace semispec
