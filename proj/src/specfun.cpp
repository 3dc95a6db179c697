#include "hamjac/specfun.hpp"

#include <cmath>
#include <string>

#include "hamjac/errors.hpp"

namespace hamjac::specfun {

namespace {

void check_bessel_domain(const char* name, double y) {
    if (!(y >= 0.0 && y <= 30.0))
        throw DomainError(std::string(name) + ": argument " + std::to_string(y) +
                          " outside power-series domain [0, 30]");
}

}  // namespace

double bessel_i0(double y, const SeriesTolerance& tol) {
    check_bessel_domain("bessel_i0", y);
    const double q = 0.25 * y * y;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= tol.max_terms; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term <= tol.rel_tol * sum) break;
    }
    return sum;
}

double bessel_i1(double y, const SeriesTolerance& tol) {
    check_bessel_domain("bessel_i1", y);
    if (y == 0.0) return 0.0;
    const double q = 0.25 * y * y;
    double term = 0.5 * y, sum = term;
    for (int k = 1; k <= tol.max_terms; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (term <= tol.rel_tol * sum) break;
    }
    return sum;
}

double series_coeff_c(int n) {
    if (n < 0) throw DomainError("series_coeff_c: negative index");
    double c = 1.0;
    for (int k = 0; k < n; ++k)
        c *= static_cast<double>(2 * k + 3) /
             (static_cast<double>(k + 1) * (k + 2));
    return c;
}

double bessel_combo(double y, const SeriesTolerance& tol) {
    check_bessel_domain("bessel_combo", y);
    return std::exp(-y) * (bessel_i0(y, tol) + bessel_i1(y, tol));
}

double expm1_ratio(double z) {
    if (std::fabs(z) < 1e-8)
        return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
    return std::expm1(z) / z;
}

}  // namespace hamjac::specfun
