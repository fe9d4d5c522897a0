#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

// Stable evaluation of the special functions the rest of the library is
// built on: generalized Laguerre and probabilists' Hermite polynomials,
// the (complex) normal CDF, scaled partial exponential sums, half-line
// Gaussian moments, and the Bessel ratio J1(2s)/s.
//
// All functions here are pure and reentrant.

namespace polyg::specfun {

using cplx = std::complex<double>;

// Degree cap shared by the polynomial recurrences.
inline constexpr int kMaxDegree = 512;

// Thrown when a requested polynomial degree exceeds kMaxDegree.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

// Generalized Laguerre polynomial L^alpha_k(x) by the three-term degree
// recurrence. alpha must be >= 0 (negative parameters are out of scope).
// At x = 0 the value equals binom(k+alpha, k).
double laguerre(int k, double alpha, double x);

// Probabilists' Hermite polynomial H_r(t), H_{r+1} = t H_r - r H_{r-1}.
double hermite_prob(int r, double t);
cplx hermite_prob(int r, cplx t);

// Monomial coefficients of H_r: H_r(t) = sum_s coeff[s] t^s.
// Backed by a lazily built shared table; r <= kMaxDegree.
const std::vector<double>& hermite_coefficients(int r);

// Normal CDF (2*pi)^{-1/2} * integral_{-inf}^{a} e^{-t^2/2} dt and its
// analytic continuation. The real overload delegates to std::erfc; the
// complex one uses a Faddeeva-function evaluation (rational approximation
// in the upper half-plane plus a Laplace continued fraction for large
// arguments).
double normal_cdf(double a);
cplx normal_cdf(cplx a);

// Scaled complementary error function w(z) = e^{-z^2} erfc(-iz).
// Exposed mainly so tests can probe the Faddeeva evaluation directly.
cplx faddeeva_w(cplx z);

// E_k(x) e^{-x} where E_k is the degree-k Taylor partial sum of exp.
// Equals the regularized upper incomplete gamma Q(k+1, x); computed by
// the series / continued-fraction split, never by naive summation.
// Requires x >= 0; the result lies in [0, 1].
double exp_partial_scaled(int k, double x);

// Analytic continuation of the same quantity, E_k(x) e^{-x} for complex
// x. Series branch for |x| < k+1, continued fraction otherwise (the
// fraction needs Re x > 0, which holds on the Szego domains).
cplx exp_partial_scaled(int k, cplx x);

// log(1 - E_k(x) e^{-x}) = log P(k+1, x), kept in log form so callers can
// combine it with exponentially large prefactors without overflow.
cplx log_exp_partial_deficit(int k, cplx x);

// log(E_k(x) e^{-x}) = log Q(k+1, x) in the same log form.
cplx log_exp_partial_scaled(int k, cplx x);

// Half-line Gaussian moments M_k = integral_{-inf}^{a} t^k e^{-t^2/2} dt.
// M_0 = sqrt(2 pi) Phi(a), M_1 = -e^{-a^2/2}, and for k >= 2
//   M_k = (k-1) M_{k-2} - a^{k-1} e^{-a^2/2}.
// For real endpoints every stored moment is real.
struct GaussMomentTable {
    cplx endpoint;
    std::vector<cplx> moments;  // size kmax+1

    const cplx& operator[](int k) const { return moments.at(k); }
    int max_order() const { return static_cast<int>(moments.size()) - 1; }
};

GaussMomentTable gauss_halfline_moment(int kmax, cplx a);

// J_1(2s)/s, extended by continuity to 1 at s = 0. Alternating series for
// s <= 8, the stdlib Bessel beyond.
double bessel_j1_ratio(double s);

// log Gamma(x+1) for integer x >= 0, table-backed for small arguments.
double log_factorial(int n);

}  // namespace polyg::specfun
