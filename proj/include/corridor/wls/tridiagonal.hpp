#pragma once

#include <vector>

namespace corridor::wls {

/// One tridiagonal system A x = rhs. All four vectors have length n;
/// sub[0] and super[n-1] are ignored. The smoother only builds strictly
/// diagonally dominant systems, which guarantees solvability without
/// pivoting.
struct TridiagonalSystem {
    std::vector<double> sub, main, super, rhs;

    std::size_t size() const { return main.size(); }
};

/// Thomas algorithm. Throws ErrorCategory::numeric on a (near-)zero pivot.
/// Residual for dominant systems: ||Ax - rhs||_inf < 1e-8 * ||rhs||_inf.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& system);

}  // namespace corridor::wls
