#include "corridor/wls/tridiagonal.hpp"

#include <cmath>

#include "corridor/core/error.hpp"

namespace corridor::wls {

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
    const std::size_t n = sys.main.size();
    if (n == 0) raise(ErrorCategory::contract, "empty tridiagonal system");
    if (sys.sub.size() != n || sys.super.size() != n || sys.rhs.size() != n)
        raise(ErrorCategory::contract, "tridiagonal system vectors must share length");

    std::vector<double> cp(n), x(n);
    double pivot = sys.main[0];
    if (pivot == 0.0 || !std::isfinite(pivot))
        raise(ErrorCategory::numeric, "singular tridiagonal system (zero pivot)");
    cp[0] = sys.super[0] / pivot;
    x[0] = sys.rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = sys.main[i] - sys.sub[i] * cp[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot))
            raise(ErrorCategory::numeric, "singular tridiagonal system (zero pivot)");
        cp[i] = sys.super[i] / pivot;
        x[i] = (sys.rhs[i] - sys.sub[i] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
    return x;
}

}  // namespace corridor::wls
