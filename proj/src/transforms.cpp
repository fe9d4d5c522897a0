#include "polyg/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "polyg/specfun.hpp"

namespace polyg::transforms {

namespace {

namespace sf = polyg::specfun;

constexpr double kSqrt2Pi = 2.5066282746310005024;

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::exp(sf::log_factorial(n) - sf::log_factorial(k) -
                    sf::log_factorial(n - k));
}

// coefficients of H_r(t + c) in powers of t
std::vector<cplx> shifted_hermite_coeffs(int r, cplx c) {
    const std::vector<double>& h = sf::hermite_coefficients(r);
    std::vector<cplx> out(r + 1, cplx(0.0));
    for (int s = 0; s <= r; ++s) {
        cplx pw = 1.0;  // c^{u-s}
        for (int u = s; u <= r; ++u) {
            out[s] += h[u] * binom(u, s) * pw;
            pw *= c;
        }
    }
    return out;
}

// integral_{-inf}^{a} H_r(t+c1) H_r(t+c2) e^{-t^2/2} dt through the
// monomial expansion contracted against the half-line moment table;
// exact in exact arithmetic, but the contraction cancels like
// (2r-1)!!/r! and runs out of double precision around r ~ 30
cplx hermite_product_integral_moments(int r, cplx c1, cplx c2, cplx a) {
    const auto p1 = shifted_hermite_coeffs(r, c1);
    const auto p2 = shifted_hermite_coeffs(r, c2);
    std::vector<cplx> prod(2 * r + 1, cplx(0.0));
    for (int s = 0; s <= r; ++s)
        for (int t = 0; t <= r; ++t) prod[s + t] += p1[s] * p2[t];
    const auto moments = sf::gauss_halfline_moment(2 * r, a);
    cplx integral = 0.0;
    for (int k = 0; k <= 2 * r; ++k) integral += prod[k] * moments[k];
    return integral;
}

// the same integral by the two-index integration-by-parts recurrence
//   J_{p+1,q} = c1 J_{p,q} + q J_{p,q-1} - H_p(a+c1) H_q(a+c2) e^{-a^2/2}
// (and symmetrically in the second index); also exact in exact
// arithmetic, and stable at high levels where the monomial contraction
// cancels catastrophically
cplx hermite_product_integral_recurrence(int r, cplx c1, cplx c2, cplx a) {
    const cplx g = std::exp(-0.5 * a * a);
    std::vector<cplx> h1(r + 1), h2(r + 1);
    for (int p = 0; p <= r; ++p) {
        h1[p] = sf::hermite_prob(p, a + c1);
        h2[p] = sf::hermite_prob(p, a + c2);
    }
    std::vector<std::vector<cplx>> j(r + 1, std::vector<cplx>(r + 1));
    j[0][0] = std::sqrt(2.0 * 3.14159265358979323846) * sf::normal_cdf(a);
    for (int q = 0; q < r; ++q)
        j[0][q + 1] = c2 * j[0][q] - h1[0] * h2[q] * g;
    for (int p = 0; p < r; ++p) {
        j[p + 1][0] = c1 * j[p][0] - h1[p] * h2[0] * g;
        for (int q = 0; q < r; ++q)
            j[p + 1][q + 1] = c1 * j[p][q + 1] +
                              static_cast<double>(q + 1) * j[p][q] -
                              h1[p] * h2[q + 1] * g;
    }
    return j[r][r];
}

}  // namespace

double CoefficientVector::norm() const {
    double s = 0.0;
    for (const cplx& c : coefficients) s += std::norm(c);
    return std::sqrt(s);
}

cplx t_op_basis_image(int r, double m, int j, cplx z) {
    if (r < 0 || r > 64) throw std::domain_error("t_op_basis_image: level out of range");
    if (j < 0 || j > sf::kMaxDegree)
        throw std::domain_error("t_op_basis_image: bad basis index");
    if (!(m > 0.0)) throw std::domain_error("t_op_basis_image: m must be positive");
    const double x = m * std::norm(z);
    const double rho = std::abs(z);
    const double theta = rho > 0.0 ? std::arg(z) : 0.0;
    if (j >= r) {
        const int d = j - r;
        const double lag = sf::laguerre(r, d, x);
        if (rho == 0.0) return d == 0 ? cplx(std::sqrt(m) * lag, 0.0) : cplx(0.0);
        const double logmag = 0.5 * (sf::log_factorial(r) - sf::log_factorial(j)) +
                              0.5 * (d + 1) * std::log(m) + d * std::log(rho);
        return std::exp(logmag) * lag * std::polar(1.0, d * theta);
    }
    const int d = r - j;
    const double lag = sf::laguerre(j, d, x);
    if (rho == 0.0) return {0.0, 0.0};
    const double logmag = 0.5 * (sf::log_factorial(j) - sf::log_factorial(r)) +
                          0.5 * (d + 1) * std::log(m) + d * std::log(rho);
    const double sign = (d % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(logmag) * lag * std::polar(1.0, -d * theta);
}

TOpResult t_op_apply(int r, double m, const CoefficientVector& input) {
    if (input.tag != BasisTag::monomial_analytic)
        throw std::domain_error("t_op_apply: input must be monomial-analytic");
    if (r < 0 || r > 64) throw std::domain_error("t_op_apply: level out of range");
    TOpResult result;
    result.pure_level.tag = BasisTag::pure_level;
    result.pure_level.level = r;
    result.pure_level.coefficients = input.coefficients;
    std::vector<cplx> coeffs = input.coefficients;
    result.evaluate = [r, m, coeffs](cplx z) {
        cplx sum = 0.0;
        for (size_t j = 0; j < coeffs.size(); ++j)
            sum += coeffs[j] * t_op_basis_image(r, m, static_cast<int>(j), z);
        return sum;
    };
    return result;
}

CoefficientVector bargmann_apply(const CoefficientVector& input) {
    if (input.tag != BasisTag::hermite_line)
        throw std::domain_error("bargmann_apply: input must be hermite-line");
    CoefficientVector out = input;
    out.tag = BasisTag::monomial_analytic;
    return out;
}

cplx poly_bargmann_kernel(int r, cplx xi, cplx eta) {
    if (r < 0 || r > 64)
        throw std::domain_error("poly_bargmann_kernel: level out of range");
    const cplx a = -xi - std::conj(eta);
    const cplx c1 = xi - eta;
    const cplx c2 = std::conj(eta) - std::conj(xi);
    const cplx integral =
        r <= 12 ? hermite_product_integral_moments(r, c1, c2, a)
                : hermite_product_integral_recurrence(r, c1, c2, a);
    return std::exp(xi * std::conj(eta)) * integral *
           std::exp(-sf::log_factorial(r)) / kSqrt2Pi;
}

double pure_level_projection_check(const kernel::EnsembleParams& p, int r,
                                   std::span<const cplx> points) {
    p.validate();
    if (r < 0 || r >= p.q)
        throw std::domain_error("pure_level_projection_check: level out of range");
    kernel::KernelEvaluator eval(p);
    double worst = 0.0;
    for (cplx z : points) {
        for (cplx w : points) {
            cplx via_kernel = eval.zhe_pure_level(r, z, w);
            cplx gram = 0.0;
            for (int j = 0; j < p.n; ++j)
                gram += t_op_basis_image(r, p.m, j, z) *
                        std::conj(t_op_basis_image(r, p.m, j, w));
            gram *= std::exp(-0.5 * p.m * (std::norm(z) + std::norm(w)));
            worst = std::max(worst, std::abs(via_kernel - gram));
        }
    }
    return worst;
}

}  // namespace polyg::transforms
