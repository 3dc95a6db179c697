#pragma once

namespace hamjac::specfun {

// Truncation policy for the power series in this module.
struct SeriesTolerance {
    double rel_tol = 1e-14;
    int max_terms = 200;
};

// Modified Bessel function I0 by power series. Domain [0, 30]; out-of-range
// arguments are a hard error rather than a silent asymptotic.
double bessel_i0(double y, const SeriesTolerance& tol = {});

// Modified Bessel function I1 by power series. Domain [0, 30].
double bessel_i1(double y, const SeriesTolerance& tol = {});

// Coefficient (2n+1)(2n)! / (2^n (n+1)! (n!)^2) of the momentum-map series,
// computed by ratio recurrence c_{n+1}/c_n = (2n+3)/((n+1)(n+2)) to avoid
// factorial overflow.
double series_coeff_c(int n);

// e^{-y} (I0(y) + I1(y)): closed form of the momentum-map series.
// Equals 1 at y = 0 and decreases monotonically on [0, 30].
double bessel_combo(double y, const SeriesTolerance& tol = {});

// (e^z - 1)/z, value 1 at z = 0. Below |z| = 1e-8 a cubic Taylor branch is
// used; at the switchover the two branches agree to machine epsilon.
double expm1_ratio(double z);

}  // namespace hamjac::specfun
