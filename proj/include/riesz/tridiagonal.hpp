#pragma once

#include <vector>

namespace riesz {

// Solves a symmetric tridiagonal system in place: d is the diagonal, e[i] couples i and i+1.
// The solution overwrites rhs; d is destroyed.
inline void solve_tridiagonal(std::vector<double>& d, const std::vector<double>& e, std::vector<double>& rhs)
{
    const std::size_t m = d.size();
    for (std::size_t i = 1; i < m; ++i) {
        const double w = e[i - 1] / d[i - 1];
        d[i] -= w * e[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[m - 1] /= d[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) rhs[i] = (rhs[i] - e[i] * rhs[i + 1]) / d[i];
}

} // namespace riesz
