#pragma once

#include <cstdint>

// Reference values and independent reference implementations for the test
// suites. Everything here is computed without the library under test: the
// frozen constants were evaluated with 30-digit arithmetic and rounded to
// shortest double, the series oracles run in long double / 128-bit integers.
namespace oracle {

// --- frozen constants -------------------------------------------------------

// modified Bessel functions
inline constexpr double kI0at1 = 1.2660658777520083356;
inline constexpr double kI0at2 = 2.2795853023360672674;
inline constexpr double kI1at1 = 0.56515910399248502721;
inline constexpr double kI1at2 = 1.5906368546373290609;
// e^{-1}(I0(1) + I1(1))
inline constexpr double kComboAt1 = 0.67367002294334888548;
// (e^{-2} - 1)/(-2)
inline constexpr double kExpm1RatioAtM2 = 0.43233235838169365410;

// conservative closed forms, m = lambda = E = 1
// W(1) = (8 - 2 sqrt 2)/3
inline constexpr double kWcons1 = 1.7238576250846033312;
// S(1, t = 1/2) = W(1) - 1/2
inline constexpr double kScons1Half = 1.2238576250846033312;
// tau(1) = 2 - sqrt 2
inline constexpr double kTauCons1 = 0.58578643762690495120;

// exact relativistic force at m=1, lambda=1, gamma=0.1, c=10, v=5:
// (1 - 2.5)(1 - 0.25)^{3/2}
inline constexpr double kForceExactRel = -0.97427857925749347845;

// reparametrized picture at m=lambda=1, gamma_tilde=1 (alpha=1, gamma=0),
// x=1, vt=2: L = 2e^{-2} - (1/2)(e^{-2}-1), K = 2e^{-2} + (1/2)(e^{-2}-1)
inline constexpr double kLagTrans12 = 0.70300292485491903784;
inline constexpr double kEnergyTrans12 = -0.16166179190846827027;

// series Hamiltonian at alpha=0, m=1, lambda=1, gamma=0.5, x=1, p=2:
// 2/e - (e - 1)
inline constexpr double kHseriesAlpha0 = -0.98252294611616059212;

// momentum profiles at m=lambda=E=1, alpha=1, gamma=0 (gamma_tilde=1), x=1:
// pt = e^{-1} sqrt(3 - e^{-2}); p = pt / kComboAt1
inline constexpr double kPtildeAt1 = 0.62264774216333900966;
inline constexpr double kPat1 = 0.92426220695246743093;

// momentum dL/dv at m=1, alpha=0.5, x=0, v=1: atanh(1/2) + 2/3
inline constexpr double kMomentumHalf = 1.2159728110007215081;

// turning point of E = -0.3 at m=lambda=1, gamma_tilde=1: ln(2.5)/2
inline constexpr double kTurnAt = 0.45814536593707755306;

// 1/sqrt(0.75): relativistic velocity map at alpha*v = 1/2
inline constexpr double kInvSqrt075 = 1.1547005383792515290;

// exact low-order series coefficients c_3, c_4, c_5
inline constexpr double kC3 = 35.0 / 48.0;
inline constexpr double kC4 = 0.328125;    // 21/64
inline constexpr double kC5 = 0.1203125;   // 77/640

// --- long double Bessel oracle ----------------------------------------------

inline long double bessel_i0_ref(long double y) {
    long double q = y * y / 4.0L, term = 1.0L, sum = 1.0L;
    for (int k = 1; k <= 60; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
    }
    return sum;
}

inline long double bessel_i1_ref(long double y) {
    long double q = y * y / 4.0L, term = y / 2.0L, sum = term;
    for (int k = 1; k <= 60; ++k) {
        term *= q / (static_cast<long double>(k) * (k + 1));
        sum += term;
    }
    return sum;
}

// --- exact rational c_n oracle ----------------------------------------------
// c_n = (2n+1) C(2n, n) / (2^n (n+1)!), exact in 128-bit integers for n <= 16.

inline long double series_c_ref(int n) {
    __int128 binom = 1;
    for (int k = 1; k <= n; ++k)  // C(2n, n) built incrementally
        binom = binom * (n + k) / k;
    __int128 num = binom * (2 * n + 1);
    __int128 den = 1;
    for (int k = 2; k <= n + 1; ++k) den *= k;
    for (int k = 0; k < n; ++k) den *= 2;
    return static_cast<long double>(num) / static_cast<long double>(den);
}

// --- deterministic RNG --------------------------------------------------------

struct SplitMix64 {
    std::uint64_t s;
    explicit SplitMix64(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (next() >> 11) * 0x1.0p-53;
    }
};

}  // namespace oracle
