#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polyg/kernel.hpp"

using namespace polyg::kernel;
using oracle::rel_gap;

namespace {

std::vector<cplx> random_points(int count, double radius, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<cplx> pts;
    while (static_cast<int>(pts.size()) < count) {
        cplx z(u(rng), u(rng));
        if (std::abs(z) <= radius) pts.push_back(z);
    }
    return pts;
}

}  // namespace

TEST_CASE("params validation") {
    CHECK_NOTHROW((EnsembleParams{1.0, 1, 1}).validate());
    CHECK_THROWS_AS((EnsembleParams{-1.0, 4, 2}).validate(), std::domain_error);
    CHECK_THROWS_AS((EnsembleParams{1.0, 2, 3}).validate(), std::domain_error);  // q > n
    CHECK_THROWS_AS((EnsembleParams{2e6, 4, 2}).validate(), std::domain_error);
    CHECK_THROWS_AS((EnsembleParams{1.0, 100000, 2}).validate(), std::domain_error);
}

TEST_CASE("scaled complex closure") {
    ScaledComplex a = ScaledComplex::from(cplx(3.0, -4.0));
    ScaledComplex b = ScaledComplex::from(cplx(-0.5, 0.1));
    CHECK(std::abs((a * b).value() - cplx(3.0, -4.0) * cplx(-0.5, 0.1)) < 1e-14);
    CHECK(std::abs((a / b).value() - cplx(3.0, -4.0) / cplx(-0.5, 0.1)) < 1e-13);
    ScaledComplex zero = ScaledComplex::from(cplx(0.0, 0.0));
    CHECK(zero.is_zero());
    CHECK((zero * a).is_zero());
    CHECK_THROWS_AS(a / zero, std::domain_error);
    CHECK(ScaledComplex::from_parts(2.0, 9.0).phase <= 3.14159265358979323846);
}

TEST_CASE("basis enumeration: count and validity") {
    for (auto [m, n, q] : {std::tuple{1.0, 5, 3}, {4.0, 6, 3}, {2.0, 7, 1}}) {
        EnsembleParams p{m, n, q};
        auto idx = enumerate_basis(p);
        CHECK(static_cast<long>(idx.size()) == p.dim());
        for (const auto& ix : idx) CHECK(ix.valid_for(p));
        for (size_t a = 1; a < idx.size(); ++a)
            CHECK(idx[a - 1].total_degree() <= idx[a].total_degree());
    }
}

TEST_CASE("basis_weighted: pinned values") {
    // (i=0, r=0) at m=1: constant basis element weighted by the Gaussian
    EnsembleParams p1{1.0, 3, 2};
    cplx z(0.7, -0.4);
    CHECK(std::abs(basis_weighted(p1, {BasisFamily::analytic, 0, 0}, z) -
                   std::exp(-0.5 * std::norm(z))) < 1e-14);
    // (i=1, r=0) at m=4, z=0.5: m^{(i+1)/2} z e^{-m|z|^2/2} = 4*0.5*e^{-0.5}
    EnsembleParams p4{4.0, 3, 2};
    CHECK(std::abs(basis_weighted(p4, {BasisFamily::analytic, 1, 0}, cplx(0.5, 0.0)) -
                   2.0 * std::exp(-0.5)) < 1e-14);
    // antianalytic (j=0, k=1) at m=1, z=1: conj(z) L^1_0(1) e^{-1/2}
    CHECK(std::abs(basis_weighted(p1, {BasisFamily::antianalytic, 0, 1}, cplx(1.0, 0.0)) -
                   std::exp(-0.5)) < 1e-14);
    CHECK_THROWS_AS(basis_weighted(p1, {BasisFamily::analytic, 5, 0}, z),
                    std::domain_error);
    CHECK_THROWS_AS(basis_weighted(p1, {BasisFamily::antianalytic, 0, 0}, z),
                    std::domain_error);
}

TEST_CASE("basis_weighted: evaluator agrees with one-shot formula") {
    EnsembleParams p{7.0, 6, 3};
    KernelEvaluator eval(p);
    std::vector<cplx> feats(p.dim());
    for (cplx z : {cplx(0.3, 0.2), cplx(-1.1, 0.8), cplx(0.0, 0.0), cplx(2.0, -2.0)}) {
        eval.features(z, feats);
        const auto& idx = eval.indices();
        for (size_t a = 0; a < idx.size(); ++a) {
            CHECK(std::abs(feats[a] - basis_weighted(p, idx[a], z)) < 1e-12);
        }
    }
}

TEST_CASE("corr_kernel_poly: pinned values") {
    // m=n=q=1: single basis element, Zhe = e^{-(|z|^2+|w|^2)/2}
    EnsembleParams p{1.0, 1, 1};
    cplx z(0.4, 0.6), w(-0.2, 0.9);
    CHECK(std::abs(corr_kernel_poly(p, z, w) -
                   std::exp(-0.5 * (std::norm(z) + std::norm(w)))) < 1e-14);
    // diagonal at the origin is m q
    for (auto [m, n, q] : {std::tuple{1.0, 4, 2}, {9.0, 7, 3}, {100.0, 12, 5}}) {
        EnsembleParams pp{m, n, q};
        CHECK(rel_gap(corr_kernel_poly(pp, 0.0, 0.0).real(), m * q) < 1e-13);
        CHECK(std::abs(corr_kernel_poly(pp, 0.0, 0.0).imag()) < 1e-15);
    }
}

TEST_CASE("corr_kernel_poly: direct double-sum oracle at small scale") {
    // brute-force re-summation of the defining basis expansion with raw
    // factorials, scaled by the Gaussian factors at the end
    EnsembleParams p{3.0, 5, 3};
    auto direct = [&p](cplx z, cplx w) {
        const double m = p.m;
        cplx sum = 0.0;
        for (int r = 0; r < p.q; ++r)
            for (int i = 0; i <= p.n - r - 1; ++i) {
                double c = std::exp(std::lgamma(r + 1.0) - std::lgamma(r + i + 1.0));
                sum += m * c * std::pow(m * z * std::conj(w), i) *
                       oracle::laguerre_definition_sum(r, i, m * std::norm(z)) *
                       oracle::laguerre_definition_sum(r, i, m * std::norm(w));
            }
        for (int j = 0; j <= p.q - 2; ++j)
            for (int k = 1; k <= p.q - j - 1; ++k) {
                double c = std::exp(std::lgamma(j + 1.0) - std::lgamma(k + j + 1.0));
                sum += m * c * std::pow(m * std::conj(z) * w, k) *
                       oracle::laguerre_definition_sum(j, k, m * std::norm(z)) *
                       oracle::laguerre_definition_sum(j, k, m * std::norm(w));
            }
        return sum * std::exp(-0.5 * m * (std::norm(z) + std::norm(w)));
    };
    for (auto [z, w] : {std::pair{cplx(0.4, 0.3), cplx(-0.2, 0.5)},
                        {cplx(1.1, -0.6), cplx(0.8, 0.2)},
                        {cplx(0.0, 0.0), cplx(0.7, -0.1)}}) {
        cplx expect = direct(z, w);
        CHECK(std::abs(corr_kernel_poly(p, z, w) - expect) <
              1e-11 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("corr_kernel_poly: matches corr_kernel_fock in the bulk") {
    EnsembleParams p{100.0, 100, 3};
    cplx z(0.3, 0.0), w(0.5, 0.0);
    CHECK(std::abs(corr_kernel_poly(p, z, w) - corr_kernel_fock(100.0, 3, z, w)) <
          1e-4);
}

TEST_CASE("corr_kernel_fock: pinned values") {
    // q=1, m=1: e^{z conj w - |z|^2/2 - |w|^2/2}; equals 1 on the diagonal
    cplx z(0.3, -0.8), w(1.1, 0.4);
    cplx expect = std::exp(z * std::conj(w) - 0.5 * std::norm(z) - 0.5 * std::norm(w));
    CHECK(std::abs(corr_kernel_fock(1.0, 1, z, w) - expect) < 1e-13);
    CHECK(corr_kernel_fock(1.0, 1, z, z).real() == doctest::Approx(1.0));
    // q=2 diagonal at origin: L^1_1(0) = 2
    CHECK(corr_kernel_fock(1.0, 2, 0.0, 0.0).real() == doctest::Approx(2.0));
    // m=2, q=1, z=0, w=1 -> 2 e^{-1}
    CHECK(std::abs(corr_kernel_fock(2.0, 1, 0.0, cplx(1.0, 0.0)) -
                   2.0 * std::exp(-1.0)) < 1e-14);
}

TEST_CASE("hermitian symmetry is exact") {
    EnsembleParams p{10.0, 8, 3};
    KernelEvaluator eval(p);
    auto pts = random_points(6, 1.5, 42);
    for (size_t a = 0; a < pts.size(); ++a) {
        for (size_t b = 0; b < pts.size(); ++b) {
            cplx zw = eval.zhe(pts[a], pts[b]);
            cplx wz = eval.zhe(pts[b], pts[a]);
            CHECK(zw.real() == wz.real());
            CHECK(zw.imag() == -wz.imag());
        }
    }
}

TEST_CASE("positive semidefiniteness on random point sets") {
    EnsembleParams p{12.0, 9, 3};
    KernelEvaluator eval(p);
    auto pts = random_points(12, 1.3, 7);
    Eigen::MatrixXcd gram(pts.size(), pts.size());
    for (size_t a = 0; a < pts.size(); ++a)
        for (size_t b = 0; b < pts.size(); ++b) gram(a, b) = eval.zhe(pts[a], pts[b]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
    double lo = solver.eigenvalues().minCoeff();
    double hi = solver.eigenvalues().maxCoeff();
    CHECK(lo >= -1e-8 * hi);
}

TEST_CASE("diagonal bound and monotonicity in q") {
    auto pts = random_points(8, 1.8, 99);
    for (cplx z : pts) {
        double prev = 0.0;
        for (int q = 1; q <= 4; ++q) {
            EnsembleParams p{30.0, 10, q};
            double d = KernelEvaluator(p).diag(z);
            CHECK(d >= prev - 1e-10);         // nested spaces
            CHECK(d <= 30.0 * q * (1.0 + 1e-12));  // full-space diagonal m q
            prev = d;
        }
    }
}

TEST_CASE("split: q=1 has empty antianalytic block; parts re-sum") {
    EnsembleParams p1{5.0, 6, 1};
    auto [one, two] = corr_kernel_split(p1, cplx(0.4, 0.1), cplx(-0.2, 0.3));
    CHECK(two == cplx(0.0));
    CHECK(std::abs(one - corr_kernel_poly(p1, cplx(0.4, 0.1), cplx(-0.2, 0.3))) == 0.0);

    EnsembleParams p{10.0, 10, 3};
    KernelEvaluator eval(p);
    auto pts = random_points(5, 1.2, 4);
    for (size_t a = 0; a + 1 < pts.size(); ++a) {
        cplx z = pts[a], w = pts[a + 1];
        auto [k1, k2] = eval.zhe_split(z, w);
        cplx whole = eval.zhe(z, w);
        CHECK(std::abs(k1 + k2 - whole) <=
              1e-12 * std::max(1.0, std::abs(whole)));
        // diagonal blocks are real nonnegative
        auto [d1, d2] = eval.zhe_split(z, z);
        CHECK(d1.real() >= 0.0);
        CHECK(d2.real() >= 0.0);
        CHECK(std::abs(d1.imag()) < 1e-12 * std::max(1.0, d1.real()));
    }
}

TEST_CASE("pure level kernels: r=0 is the analytic kernel; levels re-sum") {
    EnsembleParams p{8.0, 8, 3};
    KernelEvaluator eval(p);
    EnsembleParams p_q1{8.0, 8, 1};
    KernelEvaluator eval_q1(p_q1);
    auto pts = random_points(6, 1.1, 21);
    for (size_t a = 0; a + 1 < pts.size(); a += 2) {
        cplx z = pts[a], w = pts[a + 1];
        CHECK(std::abs(eval.zhe_pure_level(0, z, w) - eval_q1.zhe(z, w)) < 1e-12);
        cplx sum = 0.0;
        for (int r = 0; r < p.q; ++r) {
            sum += eval.zhe_pure_level(r, z, w);
            CHECK(eval.zhe_pure_level(r, z, z).real() >= 0.0);
        }
        CHECK(std::abs(sum - eval.zhe(z, w)) <=
              1e-10 * std::max(1.0, std::abs(eval.zhe(z, w))));
    }
    CHECK_THROWS_AS(eval.zhe_pure_level(3, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(eval.zhe_pure_level(-1, 0.0, 0.0), std::domain_error);
}

TEST_CASE("gram matrix: orthonormality") {
    EnsembleParams p{4.0, 6, 3};
    auto result = gram_matrix(p);
    CHECK_FALSE(result.accuracy_warning);
    REQUIRE(result.matrix.rows() == p.dim());
    double worst = 0.0;
    for (long a = 0; a < p.dim(); ++a)
        for (long b = 0; b < p.dim(); ++b) {
            double target = (a == b) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(result.matrix(a, b) - target));
        }
    CHECK(worst < 1e-6);

    // 1x1 case
    EnsembleParams p11{1.0, 1, 1};
    auto r11 = gram_matrix(p11);
    CHECK(std::abs(r11.matrix(0, 0) - cplx(1.0)) < 1e-8);

    // mixed-family off-diagonal entries vanish by angular orthogonality
    auto idx = enumerate_basis(p);
    for (long a = 0; a < p.dim(); ++a)
        for (long b = 0; b < p.dim(); ++b)
            if (idx[a].family != idx[b].family)
                CHECK(std::abs(result.matrix(a, b)) < 1e-8);
}

TEST_CASE("gram matrix: insufficient quadrature sets the warning flag") {
    EnsembleParams p{4.0, 6, 3};
    QuadratureSpec spec;
    spec.radius = 0.5 * std::sqrt((p.n + p.q) / p.m);  // below required coverage
    auto result = gram_matrix(p, spec);
    CHECK(result.accuracy_warning);
    QuadratureSpec spec2;
    spec2.angular_nodes = 5;
    CHECK(gram_matrix(p, spec2).accuracy_warning);
}

TEST_CASE("kernel gap decays geometrically toward the closed form") {
    // at |zw| = 0.49 the decay is visible above the roundoff floor
    cplx z(0.7, 0.0), w(0.7, 0.0);
    std::vector<double> gaps;
    for (double m : {50.0, 100.0, 200.0}) {
        EnsembleParams p{m, static_cast<int>(m), 3};
        gaps.push_back(std::abs(corr_kernel_poly(p, z, w) -
                                corr_kernel_fock(m, 3, z, w)));
    }
    CHECK(gaps[0] > 1e-12);  // genuinely observable at m = 50
    for (size_t i = 1; i < gaps.size(); ++i)
        CHECK(gaps[i] <= std::max(0.5 * gaps[i - 1], 1e-12));
}
