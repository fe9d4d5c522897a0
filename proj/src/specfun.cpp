#include "polyg/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

namespace polyg::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

void check_degree(int k) {
    if (k < 0) throw std::domain_error("polynomial degree must be nonnegative");
    if (k > kMaxDegree) throw CapacityError("polynomial degree exceeds capacity");
}

template <typename T>
T hermite_recurrence(int r, T t) {
    if (r == 0) return T(1);
    T hm1 = T(1);
    T h = t;
    for (int j = 1; j < r; ++j) {
        T next = t * h - static_cast<double>(j) * hm1;
        hm1 = h;
        h = next;
    }
    return h;
}

// ---- Faddeeva function ------------------------------------------------
//
// w(z) = e^{-z^2} erfc(-iz) on the closed upper half-plane, via the
// rational approximation of Weideman (SIAM J. Numer. Anal. 31, 1994) for
// moderate |z| and the Laplace continued fraction for large |z|.

constexpr int kWeidemanN = 64;

struct WeidemanTable {
    double L;
    std::array<double, kWeidemanN> a;
};

const WeidemanTable& weideman_table() {
    static const WeidemanTable table = [] {
        WeidemanTable t{};
        const int N = kWeidemanN;
        const int M = 2 * N;
        t.L = std::sqrt(N / std::sqrt(2.0));
        // Cosine transform of f(theta) = e^{-s^2}(L^2+s^2), s = L tan(theta/2);
        // f vanishes at theta = +-pi and is even in theta.
        for (int n = 1; n <= N; ++n) {
            double sum = t.L * t.L;  // theta = 0 term: s = 0
            for (int j = 1; j < M; ++j) {
                double theta = j * kPi / M;
                double s = t.L * std::tan(theta / 2);
                double f = std::exp(-s * s) * (t.L * t.L + s * s);
                sum += 2.0 * f * std::cos(n * theta);
            }
            t.a[n - 1] = sum / (4.0 * N);
        }
        return t;
    }();
    return table;
}

cplx faddeeva_upper_rational(cplx z) {
    const WeidemanTable& t = weideman_table();
    const cplx iz(-z.imag(), z.real());
    const cplx d = t.L - iz;
    const cplx Z = (t.L + iz) / d;
    cplx p = 0.0;
    for (int n = kWeidemanN - 1; n >= 0; --n) p = p * Z + t.a[n];
    return 2.0 * p / (d * d) + (1.0 / kSqrtPi) / d;
}

cplx faddeeva_upper_contfrac(cplx z) {
    // w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...))))
    cplx f = 0.0;
    for (int n = 24; n >= 1; --n) f = (0.5 * n) / (z - f);
    return cplx(0.0, 1.0 / kSqrtPi) / (z - f);
}

cplx faddeeva_upper(cplx z) {
    if (std::norm(z) >= 64.0) return faddeeva_upper_contfrac(z);
    return faddeeva_upper_rational(z);
}

cplx erfc_cplx(cplx u) {
    if (u.real() >= 0.0) {
        const cplx iu(-u.imag(), u.real());
        return std::exp(-u * u) * faddeeva_upper(iu);
    }
    return 2.0 - erfc_cplx(-u);
}

// ---- regularized incomplete gamma -------------------------------------

template <typename T>
T gamma_p_series_sum(double a, T x) {
    T sum = T(1);
    T term = T(1);
    for (int n = 1; n < 100000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// log P(a, x), series branch (valid for |x| < a).
cplx log_gamma_p_series(double a, cplx x) {
    cplx sum = gamma_p_series_sum(a, x);
    cplx prefix = a * std::log(x) - x - std::lgamma(a + 1.0);
    return prefix + std::log(sum);
}

cplx expm1_cplx(cplx w) {
    if (std::abs(w) > 0.5) return std::exp(w) - 1.0;
    cplx term = w, sum = w;
    for (int n = 2; n < 40; ++n) {
        term *= w / static_cast<double>(n);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// Q(a, x) by the Lentz continued fraction (needs Re x roughly > 0).
template <typename T>
T gamma_q_contfrac(double a, T x) {
    const double tiny = 1e-300;
    T b = x + 1.0 - a;
    T c = T(1.0 / tiny);
    T d = T(1) / b;
    T h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = T(tiny);
        c = b + an / c;
        if (std::abs(c) < tiny) c = T(tiny);
        d = T(1) / d;
        T mult = d * c;
        h *= mult;
        if (std::abs(mult - T(1)) < 1e-16) break;
    }
    return h;  // Q = exp(-x + a log x - lgamma(a)) * h
}

double gamma_q(double a, double x) {
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) {
        double logp = (a * std::log(x) - x - std::lgamma(a + 1.0)) +
                      std::log(gamma_p_series_sum(a, x));
        return -std::expm1(logp);
    }
    double logq = -x + a * std::log(x) - std::lgamma(a) +
                  std::log(gamma_q_contfrac(a, x));
    return std::exp(logq);
}

std::once_flag g_logfact_once;
std::vector<double> g_logfact;

std::once_flag g_hermite_once;
std::vector<std::vector<double>> g_hermite_coeffs;

constexpr int kHermiteCoeffMax = 128;

}  // namespace

double log_factorial(int n) {
    if (n < 0) throw std::domain_error("log_factorial: negative argument");
    std::call_once(g_logfact_once, [] {
        g_logfact.resize(2 * kMaxDegree + 2);
        g_logfact[0] = 0.0;
        for (size_t i = 1; i < g_logfact.size(); ++i)
            g_logfact[i] = g_logfact[i - 1] + std::log(static_cast<double>(i));
    });
    if (static_cast<size_t>(n) < g_logfact.size()) return g_logfact[n];
    return std::lgamma(n + 1.0);
}

double laguerre(int k, double alpha, double x) {
    check_degree(k);
    if (alpha < 0.0) throw std::domain_error("laguerre: parameter must be >= 0");
    if (k == 0) return 1.0;
    double pm1 = 1.0;
    double p = 1.0 + alpha - x;
    for (int j = 1; j < k; ++j) {
        double next = ((2.0 * j + 1.0 + alpha - x) * p - (j + alpha) * pm1) / (j + 1.0);
        pm1 = p;
        p = next;
    }
    return p;
}

double hermite_prob(int r, double t) {
    check_degree(r);
    return hermite_recurrence(r, t);
}

cplx hermite_prob(int r, cplx t) {
    check_degree(r);
    return hermite_recurrence(r, t);
}

const std::vector<double>& hermite_coefficients(int r) {
    if (r < 0) throw std::domain_error("hermite_coefficients: negative degree");
    if (r > kHermiteCoeffMax)
        throw CapacityError("hermite_coefficients: degree exceeds coefficient table");
    std::call_once(g_hermite_once, [] {
        g_hermite_coeffs.resize(kHermiteCoeffMax + 1);
        g_hermite_coeffs[0] = {1.0};
        g_hermite_coeffs[1] = {0.0, 1.0};
        for (int n = 1; n < kHermiteCoeffMax; ++n) {
            const auto& h = g_hermite_coeffs[n];
            const auto& hm1 = g_hermite_coeffs[n - 1];
            std::vector<double> next(n + 2, 0.0);
            for (int s = 0; s <= n; ++s) next[s + 1] += h[s];
            for (int s = 0; s <= n - 1; ++s) next[s] -= n * hm1[s];
            g_hermite_coeffs[n + 1] = std::move(next);
        }
    });
    return g_hermite_coeffs[r];
}

double normal_cdf(double a) {
    return 0.5 * std::erfc(-a / std::sqrt(2.0));
}

cplx normal_cdf(cplx a) {
    if (a.imag() == 0.0) return normal_cdf(a.real());
    return 0.5 * erfc_cplx(-a / std::sqrt(2.0));
}

cplx faddeeva_w(cplx z) {
    if (z.imag() >= 0.0) return faddeeva_upper(z);
    // w(z) = 2 e^{-z^2} - w(-z)
    return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

double exp_partial_scaled(int k, double x) {
    if (k < 0) throw std::domain_error("exp_partial_scaled: negative degree");
    if (x < 0.0) throw std::domain_error("exp_partial_scaled: x must be >= 0");
    if (x == 0.0) return 1.0;
    double q = gamma_q(k + 1.0, x);
    return std::clamp(q, 0.0, 1.0);
}

cplx exp_partial_scaled(int k, cplx x) {
    if (k < 0) throw std::domain_error("exp_partial_scaled: negative degree");
    if (x == cplx(0.0)) return 1.0;
    if (x.imag() == 0.0 && x.real() >= 0.0) return exp_partial_scaled(k, x.real());
    const double a = k + 1.0;
    if (std::abs(x) < a) {
        return -expm1_cplx(log_gamma_p_series(a, x));
    }
    cplx logq = -x + a * std::log(x) - std::lgamma(a) +
                std::log(gamma_q_contfrac(a, x));
    return std::exp(logq);
}

cplx log_exp_partial_deficit(int k, cplx x) {
    if (k < 0) throw std::domain_error("log_exp_partial_deficit: negative degree");
    const double a = k + 1.0;
    if (std::abs(x) < a) return log_gamma_p_series(a, x);
    cplx q = exp_partial_scaled(k, x);
    return std::log(1.0 - q);
}

cplx log_exp_partial_scaled(int k, cplx x) {
    if (k < 0) throw std::domain_error("log_exp_partial_scaled: negative degree");
    if (x == cplx(0.0)) return 0.0;
    const double a = k + 1.0;
    if (std::abs(x) < a) {
        // Q is bounded away from 0 in this branch, so the direct log is fine
        return std::log(-expm1_cplx(log_gamma_p_series(a, x)));
    }
    return -x + a * std::log(x) - std::lgamma(a) + std::log(gamma_q_contfrac(a, x));
}

GaussMomentTable gauss_halfline_moment(int kmax, cplx a) {
    if (kmax < 0) throw std::domain_error("gauss_halfline_moment: negative order");
    GaussMomentTable table;
    table.endpoint = a;
    table.moments.resize(kmax + 1);
    if (a.imag() == 0.0) {
        const double ar = a.real();
        const double g = std::exp(-0.5 * ar * ar);
        table.moments[0] = std::sqrt(2.0 * kPi) * normal_cdf(ar);
        if (kmax >= 1) table.moments[1] = -g;
        double pw = ar;  // a^{k-1}
        for (int k = 2; k <= kmax; ++k) {
            table.moments[k] = (k - 1.0) * table.moments[k - 2] - pw * g;
            pw *= ar;
        }
        return table;
    }
    const cplx g = std::exp(-0.5 * a * a);
    table.moments[0] = std::sqrt(2.0 * kPi) * normal_cdf(a);
    if (kmax >= 1) table.moments[1] = -g;
    cplx pw = a;
    for (int k = 2; k <= kmax; ++k) {
        table.moments[k] = (k - 1.0) * table.moments[k - 2] - pw * g;
        pw *= a;
    }
    return table;
}

double bessel_j1_ratio(double s) {
    if (s < 0.0) throw std::domain_error("bessel_j1_ratio: s must be >= 0");
    if (s <= 8.0) {
        const double s2 = s * s;
        double term = 1.0;
        double sum = 1.0;
        for (int i = 1; i < 200; ++i) {
            term *= -s2 / (static_cast<double>(i) * (i + 1));
            sum += term;
            if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
        }
        return sum;
    }
    return std::cyl_bessel_j(1.0, 2.0 * s) / s;
}

}  // namespace polyg::specfun
