#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polyg/quadrature.hpp"
#include "polyg/transforms.hpp"

using namespace polyg::transforms;
using polyg::kernel::EnsembleParams;
using oracle::rel_gap;

namespace {

namespace sf = polyg::specfun;

// Tiny bivariate polynomial in (z, conj z), used as an independent route
// to the operator identities: T_1 acts as d/dz - conj(z)* on such
// polynomials, which lets the semi-group law be checked exactly.
struct BiPoly {
    std::map<std::pair<int, int>, double> terms;  // (z power, conj power) -> coeff

    void add(int a, int b, double c) {
        if (c != 0.0) terms[{a, b}] += c;
    }
    BiPoly d_dz() const {
        BiPoly out;
        for (const auto& [k, c] : terms)
            if (k.first > 0) out.add(k.first - 1, k.second, c * k.first);
        return out;
    }
    BiPoly times_conj() const {
        BiPoly out;
        for (const auto& [k, c] : terms) out.add(k.first, k.second + 1, c);
        return out;
    }
    BiPoly scaled(double s) const {
        BiPoly out;
        for (const auto& [k, c] : terms) out.add(k.first, k.second, c * s);
        return out;
    }
    BiPoly minus(const BiPoly& o) const {
        BiPoly out = *this;
        for (const auto& [k, c] : o.terms) out.add(k.first, k.second, -c);
        return out;
    }
    std::complex<double> eval(std::complex<double> z) const {
        std::complex<double> sum = 0.0;
        for (const auto& [k, c] : terms) {
            std::complex<double> t = c;
            for (int a = 0; a < k.first; ++a) t *= z;
            for (int b = 0; b < k.second; ++b) t *= std::conj(z);
            sum += t;
        }
        return sum;
    }
};

double lag_coeff(int k, int alpha, int i) {
    // coefficient of x^i in L^alpha_k(x)
    double b = std::exp(sf::log_factorial(k + alpha) - sf::log_factorial(k - i) -
                        sf::log_factorial(alpha + i));
    double c = b / std::exp(sf::log_factorial(i));
    return (i % 2 == 0) ? c : -c;
}

// T_r[e_j] at m = 1 as a bivariate polynomial, straight from the closed forms.
BiPoly t_image_poly(int r, int j) {
    BiPoly out;
    if (j >= r) {
        double norm = std::exp(0.5 * (sf::log_factorial(r) - sf::log_factorial(j)));
        for (int i = 0; i <= r; ++i)
            out.add(j - r + i, i, norm * lag_coeff(r, j - r, i));
    } else {
        double norm = std::exp(0.5 * (sf::log_factorial(j) - sf::log_factorial(r)));
        double sign = ((r - j) % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i <= j; ++i)
            out.add(i, r - j + i, sign * norm * lag_coeff(j, r - j, i));
    }
    return out;
}

std::vector<cplx> sample_points(int count, double radius, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<cplx> pts;
    while (static_cast<int>(pts.size()) < count) {
        cplx z(u(rng), u(rng));
        if (std::abs(z) <= radius) pts.push_back(z);
    }
    return pts;
}

// weighted-space norm of the pointwise image by polar quadrature
double image_norm_quadrature(const TOpResult& image, double m, int max_degree) {
    const double radius = std::sqrt((4.0 * (max_degree + 2) + 40.0) / m);
    auto grid = polyg::quad::make_polar_grid(
        0.0, radius, 32, 24, 2 * (max_degree + 2) + 1);
    double sq = grid.integrate([&](cplx z) {
        return std::norm(image.evaluate(z)) * std::exp(-m * std::norm(z));
    });
    return std::sqrt(sq);
}

}  // namespace

TEST_CASE("t_op: level zero is the identity on basis elements") {
    for (int j : {0, 1, 4, 9}) {
        for (cplx z : sample_points(4, 1.5, 5)) {
            cplx ej = std::pow(z, j) * std::exp(-0.5 * sf::log_factorial(j));
            CHECK(std::abs(t_op_basis_image(0, 1.0, j, z) - ej) < 1e-12);
        }
    }
}

TEST_CASE("t_op: pinned first-level images") {
    for (cplx z : sample_points(6, 2.0, 8)) {
        // T_1 on e_1 = z gives 1 - |z|^2; T_1 on e_0 = 1 gives -conj(z)
        CHECK(std::abs(t_op_basis_image(1, 1.0, 1, z) - (1.0 - std::norm(z))) < 1e-13);
        CHECK(std::abs(t_op_basis_image(1, 1.0, 0, z) + std::conj(z)) < 1e-13);
    }
}

TEST_CASE("t_op: both branches agree at j = r") {
    for (int r : {1, 3, 7}) {
        for (cplx z : sample_points(3, 1.2, 17)) {
            // j = r lies in both closed forms; they must coincide
            BiPoly upper = t_image_poly(r, r);
            CHECK(std::abs(upper.eval(z) - t_op_basis_image(r, 1.0, r, z)) < 1e-11);
        }
    }
}

TEST_CASE("t_op: semi-group property T_1 T_{r-1} = sqrt(r) T_r") {
    for (int r : {1, 2, 3, 5}) {
        for (int j = 0; j <= 12; ++j) {
            BiPoly g = t_image_poly(r - 1, j);
            BiPoly lhs = g.d_dz().minus(g.times_conj());  // T_1 action
            BiPoly rhs = t_image_poly(r, j).scaled(std::sqrt(static_cast<double>(r)));
            for (cplx z : sample_points(5, 1.7, 23 + j)) {
                cplx a = lhs.eval(z), b = rhs.eval(z);
                CHECK(std::abs(a - b) <= 1e-10 * std::max({std::abs(a), std::abs(b), 1.0}));
            }
        }
    }
}

TEST_CASE("t_op: isometry on random coefficient vectors") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int r : {0, 1, 3}) {
        for (double m : {1.0, 2.0}) {
            CoefficientVector f;
            f.tag = BasisTag::monomial_analytic;
            f.coefficients.resize(21);
            for (auto& c : f.coefficients) c = cplx(g(rng), g(rng));
            TOpResult image = t_op_apply(r, m, f);
            CHECK(image.pure_level.tag == BasisTag::pure_level);
            CHECK(image.pure_level.level == r);
            double qnorm = image_norm_quadrature(image, m, 20 + r);
            CHECK(rel_gap(qnorm, f.norm()) < 1e-8);
        }
    }
}

TEST_CASE("t_op: distinct levels are orthogonal in the weighted space") {
    const double m = 2.0;
    CoefficientVector f;
    f.tag = BasisTag::monomial_analytic;
    f.coefficients = {cplx(0.7, 0.1), cplx(-0.3, 0.5), cplx(0.2, -0.9), cplx(1.1, 0.0)};
    auto i1 = t_op_apply(1, m, f);
    auto i2 = t_op_apply(2, m, f);
    auto i0 = t_op_apply(0, m, f);
    const int deg = 8;
    const double radius = std::sqrt((4.0 * deg + 40.0) / m);
    auto grid = polyg::quad::make_polar_grid(0.0, radius, 32, 24, 2 * deg + 1);
    auto inner = [&](const TOpResult& a, const TOpResult& b) {
        double re = grid.integrate([&](cplx z) {
            return (a.evaluate(z) * std::conj(b.evaluate(z)) *
                    std::exp(-m * std::norm(z)))
                .real();
        });
        double im = grid.integrate([&](cplx z) {
            return (a.evaluate(z) * std::conj(b.evaluate(z)) *
                    std::exp(-m * std::norm(z)))
                .imag();
        });
        return std::abs(cplx(re, im));
    };
    CHECK(inner(i0, i1) < 1e-8);
    CHECK(inner(i1, i2) < 1e-8);
    CHECK(inner(i0, i2) < 1e-8);
}

TEST_CASE("bargmann_apply: diagonal relabeling") {
    CoefficientVector f;
    f.tag = BasisTag::hermite_line;
    f.coefficients = {cplx(0.0), cplx(1.0), cplx(0.5, -0.5)};
    CoefficientVector g = bargmann_apply(f);
    CHECK(g.tag == BasisTag::monomial_analytic);
    CHECK(g.coefficients == f.coefficients);
    CHECK(g.norm() == f.norm());
    CoefficientVector wrong;
    wrong.tag = BasisTag::monomial_analytic;
    CHECK_THROWS_AS(bargmann_apply(wrong), std::domain_error);

    // composition realizes the level-r poly-Bargmann transform on basis vectors
    CoefficientVector unit;
    unit.tag = BasisTag::hermite_line;
    unit.coefficients = {cplx(0.0), cplx(0.0), cplx(1.0)};
    auto image = t_op_apply(2, 1.0, bargmann_apply(unit));
    for (cplx z : sample_points(3, 1.0, 3))
        CHECK(std::abs(image.evaluate(z) - t_op_basis_image(2, 1.0, 2, z)) < 1e-13);
}

TEST_CASE("poly_bargmann_kernel: pinned values") {
    CHECK(std::abs(poly_bargmann_kernel(0, 0.0, 0.0) - cplx(0.5)) < 1e-14);
    CHECK(std::abs(poly_bargmann_kernel(1, 0.0, 0.0) - cplx(0.5)) < 1e-13);
    // r = 0 reduces to e^{xi conj(eta)} Phi(-xi - conj(eta))
    for (cplx xi : {cplx(0.4, 0.3), cplx(-1.0, 0.7)}) {
        for (cplx eta : {cplx(0.1, -0.2), cplx(0.8, 0.5)}) {
            cplx expect = std::exp(xi * std::conj(eta)) *
                          sf::normal_cdf(-xi - std::conj(eta));
            CHECK(std::abs(poly_bargmann_kernel(0, xi, eta) - expect) < 1e-12);
        }
    }
}

TEST_CASE("poly_bargmann_kernel: hermitian symmetry and quadrature oracle") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int r : {0, 1, 2, 4, 6}) {
        for (int trial = 0; trial < 4; ++trial) {
            cplx xi(u(rng), u(rng)), eta(u(rng), u(rng));
            cplx k1 = poly_bargmann_kernel(r, xi, eta);
            cplx k2 = poly_bargmann_kernel(r, eta, xi);
            CHECK(std::abs(k1 - std::conj(k2)) < 1e-11 * std::max(1.0, std::abs(k1)));
            cplx j = oracle::hermite_product_halfline_quadrature(
                r, xi - eta, std::conj(eta) - std::conj(xi), -xi - std::conj(eta));
            cplx expect = std::exp(xi * std::conj(eta)) * j *
                          std::exp(-sf::log_factorial(r)) / std::sqrt(2.0 * oracle::kPi);
            CHECK(std::abs(k1 - expect) < 1e-9 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST_CASE("poly_bargmann_kernel: high levels stay accurate") {
    // the two exact-arithmetic routes agree across the r = 12 switch
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int r : {11, 12, 13, 14}) {
        for (int trial = 0; trial < 3; ++trial) {
            cplx xi(u(rng), u(rng)), eta(u(rng), u(rng));
            cplx lo = poly_bargmann_kernel(r, xi, eta);
            cplx quad = oracle::hermite_product_halfline_quadrature(
                r, xi - eta, std::conj(eta) - std::conj(xi), -xi - std::conj(eta));
            cplx expect = std::exp(xi * std::conj(eta)) * quad *
                          std::exp(-sf::log_factorial(r)) / std::sqrt(2.0 * oracle::kPi);
            CHECK(std::abs(lo - expect) < 1e-9 * std::max(1.0, std::abs(expect)));
        }
    }
    // diagonal value q/2 all the way to the q = 64 capacity
    for (int q : {32, 48, 64}) {
        cplx sum = 0.0;
        for (int r = 0; r < q; ++r) sum += poly_bargmann_kernel(r, 0.0, 0.0);
        CHECK(std::abs(sum - cplx(q / 2.0)) < 1e-9 * q);
    }
    // contour-quadrature oracle at a level deep in the recurrence branch
    {
        const int r = 40;
        const cplx xi(0.6, -0.4), eta(-0.3, 0.2);
        cplx value = poly_bargmann_kernel(r, xi, eta);
        cplx quad = oracle::hermite_product_halfline_quadrature(
            r, xi - eta, std::conj(eta) - std::conj(xi), -xi - std::conj(eta));
        cplx expect = std::exp(xi * std::conj(eta)) * quad *
                      std::exp(-sf::log_factorial(r)) / std::sqrt(2.0 * oracle::kPi);
        CHECK(std::abs(value - expect) < 1e-7 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("pure level projection: two constructions of the same kernel") {
    EnsembleParams p{2.0, 5, 3};
    auto pts = sample_points(20, 1.6, 77);
    CHECK(pure_level_projection_check(p, 0, pts) <= 1e-12);
    CHECK(pure_level_projection_check(p, 1, pts) <= 1e-9);
    CHECK(pure_level_projection_check(p, 2, pts) <= 1e-9);
    CHECK_THROWS_AS(pure_level_projection_check(p, 3, pts), std::domain_error);
}
