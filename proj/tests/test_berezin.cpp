#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "polyg/berezin.hpp"
#include "polyg/quadrature.hpp"

using namespace polyg::berezin;
using polyg::kernel::EnsembleParams;
using oracle::rel_gap;

namespace sf = polyg::specfun;

TEST_CASE("blowup frame classification") {
    CHECK(BlowupFrame{cplx(0.0)}.classify() == BlowupFrame::Region::interior);
    CHECK(BlowupFrame{cplx(0.0, 0.6)}.classify() == BlowupFrame::Region::interior);
    CHECK(BlowupFrame{cplx(1.0)}.classify() == BlowupFrame::Region::boundary);
    CHECK(BlowupFrame{cplx(0.0, -1.0)}.classify() == BlowupFrame::Region::boundary);
    CHECK(BlowupFrame{cplx(1.3)}.classify() == BlowupFrame::Region::exterior);
    BlowupFrame wide{cplx(0.999), 1e-2};
    CHECK(wide.classify() == BlowupFrame::Region::boundary);
}

TEST_CASE("berezin_density: K = 1 case is the Gaussian") {
    EnsembleParams p{1.0, 1, 1};
    cplx z(0.3, -0.5);
    for (cplx w : {cplx(0.0), cplx(1.2, 0.4), cplx(-0.7, 0.1)}) {
        CHECK(rel_gap(berezin_density(p, z, w), std::exp(-std::norm(w))) < 1e-13);
    }
}

TEST_CASE("berezin_density: center value is the diagonal intensity") {
    EnsembleParams p{25.0, 12, 2};
    cplx z(0.4, 0.1);
    double diag = polyg::kernel::KernelEvaluator(p).diag(z);
    CHECK(berezin_density(p, z, z) == diag);
}

TEST_CASE("berezin_density: integrates to one") {
    EnsembleParams p{60.0, 60, 1};
    BerezinEvaluator eval(p, 0.0);
    const double radius = 6.0 / std::sqrt(p.m);
    auto grid = polyg::quad::make_polar_grid(0.0, radius, 48, 16, 2 * 61 + 1);
    double mass = grid.integrate([&](cplx w) { return eval.density(w); });
    CHECK(std::abs(mass - 1.0) < 1e-3);
}

TEST_CASE("berezin_density: degenerate center rejected") {
    EnsembleParams p{100.0, 4, 1};
    // far outside, the weighted diagonal underflows to zero
    CHECK_THROWS_AS(berezin_density(p, cplx(60.0, 0.0), cplx(0.0)), DegenerateCenterError);
}

TEST_CASE("interior_profile: pinned shapes") {
    CHECK(interior_profile(1, cplx(0.7, -0.2)) ==
          doctest::Approx(std::exp(-std::norm(cplx(0.7, -0.2)))));
    for (int q : {1, 2, 3, 5}) {
        CHECK(interior_profile(q, 0.0) == doctest::Approx(static_cast<double>(q)));
    }
    // ring zero of q=2 at |xi| = sqrt(2), root of L^1_1(x) = 2 - x
    CHECK(interior_profile(2, cplx(std::sqrt(2.0), 0.0)) < 1e-28);
}

TEST_CASE("blowup_density: interior centers approach the bulk profile") {
    for (int q : {1, 2}) {
        EnsembleParams p{400.0, 400, q};
        BlowupFrame frame{cplx(0.0)};
        CHECK(std::abs(blowup_density(p, frame, 0.0) - q) < 0.05);
        BlowupFrame off{cplx(0.4, 0.0)};
        CHECK(std::abs(blowup_density(p, off, cplx(1.0, 0.5)) -
                       interior_profile(q, cplx(1.0, 0.5))) < 0.05);
    }
}

TEST_CASE("blowup_density: boundary center approaches q/2 at the origin") {
    EnsembleParams p{400.0, 400, 2};
    BlowupFrame frame{cplx(1.0)};
    CHECK(std::abs(blowup_density(p, frame, 0.0) - 1.0) < 0.1);
    CHECK(blowup_density(p, frame, cplx(0.8, -0.3)) >= 0.0);
}

TEST_CASE("bessel_profile: pinned values and large-q interior limit") {
    CHECK(bessel_profile(0.0) == 1.0);
    CHECK(bessel_profile(cplx(1.915853, 0.0)) < 1e-10);
    // q-rescaled interior profile at q = 64 approaches the Bessel law
    const int q = 64;
    for (double s : {0.5, 1.0, 2.0, 3.0}) {
        double rescaled = interior_profile(q, cplx(s / std::sqrt(static_cast<double>(q)), 0.0)) / q;
        CHECK(std::abs(rescaled - bessel_profile(cplx(s, 0.0))) < 0.02);
    }
}

TEST_CASE("boundary_kernel_limit: q/2 at the origin and Hermitian symmetry") {
    for (int q : {1, 2, 3, 6}) {
        cplx v = boundary_kernel_limit(q, 0.0, 0.0);
        CHECK(std::abs(v - cplx(q / 2.0)) < 1e-12);
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (int trial = 0; trial < 6; ++trial) {
        cplx xi(u(rng), u(rng)), eta(u(rng), u(rng));
        cplx a = boundary_kernel_limit(3, xi, eta);
        cplx b = boundary_kernel_limit(3, eta, xi);
        CHECK(std::abs(a - std::conj(b)) < 1e-11 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("boundary_profile: pinned values and decay") {
    CHECK(boundary_profile(1, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(boundary_profile(2, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    // vacated exterior direction
    CHECK(boundary_profile(1, cplx(4.0, 0.0)) < 1e-6);
    CHECK(boundary_profile(3, cplx(5.0, 0.0)) < 1e-4);
    // the Gaussian factor keeps the interior direction bounded by the bulk value
    CHECK(boundary_profile(1, cplx(-2.0, 0.0)) < 1.0);
}

TEST_CASE("boundary_profile matches the finite-m blow-up on a disk") {
    EnsembleParams p{400.0, 400, 2};
    BlowupFrame frame{cplx(1.0)};
    double sup = 0.0;
    for (double re : {-2.0, -1.0, -0.3, 0.0, 0.5, 1.2, 2.0}) {
        for (double im : {-1.5, 0.0, 0.9}) {
            cplx xi(re, im);
            if (std::abs(xi) > 2.0) continue;
            sup = std::max(sup, std::abs(blowup_density(p, frame, xi) -
                                         boundary_profile(2, xi)));
        }
    }
    CHECK(sup <= 0.2);
}

TEST_CASE("boundary profile at a rotated center") {
    // the law at center e^{i phi} is the center-1 law in rotated coordinates
    EnsembleParams p{400.0, 400, 2};
    const cplx center(0.0, 1.0);
    BlowupFrame frame{center};
    REQUIRE(frame.classify() == BlowupFrame::Region::boundary);
    double sup = 0.0;
    for (double re : {-1.0, -0.2, 0.4, 1.1}) {
        for (double im : {-0.8, 0.0, 0.9}) {
            const cplx xi(re, im);
            if (std::abs(xi) > 1.5) continue;
            const double rotated_profile =
                boundary_profile(2, std::conj(center) * xi);
            sup = std::max(sup, std::abs(blowup_density(p, frame, xi) -
                                         rotated_profile));
        }
    }
    CHECK(sup <= 0.2);
    // sweep summary uses the same rotation internally
    ProfileSweep sweep = sweep_blowup(p, frame, 1.5, 16);
    CHECK(sweep.sup_gap <= 0.2);
}

TEST_CASE("one_point_intensity_blowup: limits in the three directions") {
    EnsembleParams p{400.0, 400, 2};
    // deep interior: all levels filled
    CHECK(std::abs(one_point_intensity_blowup(p, cplx(-4.0, 0.0)) - 2.0) < 0.1);
    // at the boundary: half filled
    CHECK(std::abs(one_point_intensity_blowup(p, 0.0) - 1.0) < 0.1);
    // far exterior: vacated
    CHECK(one_point_intensity_blowup(p, cplx(4.0, 0.0)) < 0.05);
    // same code path as the density diagonal
    cplx xi(0.7, 0.0);
    cplx z = 1.0 + xi / std::sqrt(p.m);
    CHECK(one_point_intensity_blowup(p, xi) == berezin_density(p, z, z) / p.m);
}

TEST_CASE("boundary_intensity_limit: pinned values and finite-m agreement") {
    for (int q : {1, 2, 3, 8, 64}) {
        CHECK(rel_gap(boundary_intensity_limit(q, 0.0), q / 2.0) < 1e-12);
        CHECK(std::abs(boundary_intensity_limit(q, -3.0 * std::sqrt(static_cast<double>(q))) - q) <
              1e-6 * q + 1e-9);
        CHECK(boundary_intensity_limit(q, 3.0 * std::sqrt(static_cast<double>(q))) <
              1e-6 * q + 1e-9);
    }
    EnsembleParams p{400.0, 400, 3};
    for (double s : {-1.0, -0.4, 0.0, 0.8}) {
        CHECK(std::abs(one_point_intensity_blowup(p, cplx(s, 0.0)) -
                       boundary_intensity_limit(3, s)) < 0.1);
    }
    // oracle: quadrature of the defining integrals
    for (int q : {2, 5}) {
        for (double s : {-0.8, 0.3}) {
            double direct = 0.0;
            for (int r = 0; r < q; ++r) {
                auto f = [r](double t) {
                    double h = sf::hermite_prob(r, t);
                    return h * h * std::exp(-0.5 * t * t);
                };
                direct += polyg::quad::integrate(f, -40.0, -2.0 * s, 600, 16) /
                          (std::exp(sf::log_factorial(r)) * std::sqrt(2.0 * oracle::kPi));
            }
            CHECK(rel_gap(boundary_intensity_limit(q, s), direct) < 1e-9);
        }
    }
}

TEST_CASE("semicircle_intensity: pinned values") {
    for (int q : {1, 4, 16, 64}) {
        const double rq = std::sqrt(static_cast<double>(q));
        CHECK(semicircle_intensity(q, -rq) == doctest::Approx(static_cast<double>(q)));
        CHECK(semicircle_intensity(q, 0.0) == doctest::Approx(q / 2.0));
        CHECK(semicircle_intensity(q, rq) == doctest::Approx(0.0));
        CHECK(semicircle_intensity(q, 2.0 * rq) == 0.0);  // clamped
    }
}

TEST_CASE("christoffel_darboux_sum: algebra, oracle, branch overlap") {
    // q = 1 -> 1; q = 2 -> 1 + xy
    CHECK(christoffel_darboux_sum(1, 0.3, -0.8) == 1.0);
    for (double x : {-1.2, 0.4})
        for (double y : {0.9, 2.2})
            CHECK(christoffel_darboux_sum(2, x, y) == doctest::Approx(1.0 + x * y));
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        double x = u(rng), y = u(rng);
        if (std::abs(x - y) < 1e-5) continue;
        CHECK(rel_gap(christoffel_darboux_sum(8, x, y),
                      oracle::christoffel_darboux_ratio(8, x, y)) < 1e-10);
    }
    // ratio and sum branches agree across the 1e-6 switching window
    for (double eps : {2e-7, 5e-7, 2e-6, 5e-6}) {
        double x = 0.9, y = x + eps;
        CHECK(rel_gap(christoffel_darboux_sum(6, x, y),
                      oracle::christoffel_darboux_ratio(6, x, y)) < 1e-9);
    }
}

TEST_CASE("blow-up probability mass is concentrated") {
    for (cplx center : {cplx(0.0), cplx(0.4, 0.0), cplx(0.0, 0.6)}) {
        EnsembleParams p{100.0, 100, 2};
        BerezinEvaluator eval(p, center);
        auto grid = polyg::quad::make_polar_grid(0.0, 8.0 / std::sqrt(p.m), 64, 12, 96);
        double mass = grid.integrate([&](cplx d) { return eval.density(center + d); });
        CHECK(mass >= 0.99);
        CHECK(mass <= 1.001);
    }
}

TEST_CASE("sweep_blowup: grid layout, summary, csv schema") {
    EnsembleParams p{100.0, 100, 2};
    BlowupFrame frame{cplx(0.0)};
    ProfileSweep sweep = sweep_blowup(p, frame, 3.0, 24);
    REQUIRE(sweep.samples.size() == 24u * 24u);
    CHECK(sweep.l1_gap < 0.1);
    CHECK(sweep.sup_gap < 0.1);
    for (const auto& s : sweep.samples) CHECK(s.density >= 0.0);
    // polar-quadrature L1 agrees with the cell-sum L1 at this scale
    double polar = blowup_l1_gap(p, frame, 3.0);
    CHECK(polar < 0.1);

    std::ostringstream os;
    write_profile_csv(os, {sweep.samples[0]});
    std::string text = os.str();
    CHECK(text.rfind("xi_re,xi_im,density,limit_density,gap\n", 0) == 0);
    CHECK_THROWS_AS(sweep_blowup(p, frame, -1.0, 10), std::domain_error);
    CHECK_THROWS_AS(sweep_blowup(p, frame, 1.0, 5000), std::domain_error);
}
