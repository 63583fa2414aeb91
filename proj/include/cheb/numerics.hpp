#pragma once

#include <complex>
#include <functional>

namespace cheb::numerics {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature on [a, b].
/// Subdivides until the summed error estimate is below max(abs_tol, rel_tol*|I|).
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-13, double abs_tol = 0.0, int max_intervals = 20000);

struct ComplexQuadResult {
    std::complex<double> value;
    double error = 0.0;
};

ComplexQuadResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, double rel_tol = 1e-13,
                                    double abs_tol = 0.0, int max_intervals = 20000);

} // namespace cheb::numerics
