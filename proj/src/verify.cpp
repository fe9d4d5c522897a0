#include "polyg/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "polyg/berezin.hpp"
#include "polyg/dpp.hpp"
#include "polyg/kernel.hpp"
#include "polyg/quadrature.hpp"
#include "polyg/specfun.hpp"
#include "polyg/transforms.hpp"

namespace polyg::verify {

namespace {

namespace sf = polyg::specfun;
namespace kr = polyg::kernel;
namespace bz = polyg::berezin;
namespace as = polyg::asymptotics;

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

double beta_bound(int k, double alpha) {
    if (k == 0) return 0.0;
    return alpha + 2.0 * k - 2.0 +
           2.0 * std::sqrt(0.25 + (k - 1.0) * (k + alpha - 1.0));
}

std::vector<cplx> random_disk_points(int count, double radius, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<cplx> pts;
    while (static_cast<int>(pts.size()) < count) {
        cplx z(u(rng), u(rng));
        if (std::abs(z) <= radius) pts.push_back(z);
    }
    return pts;
}

// ------------------------------------------------------------------ specfun

std::vector<Report> suite_specfun(const Options&) {
    std::vector<Report> out;

    {  // recurrence vs definition sum, relative to the coefficient scale
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> ux(0.0, 50.0);
        double worst = 0.0;
        for (int k = 0; k <= 12; ++k) {
            for (double alpha : {0.0, 1.0, 3.0, 7.5, 11.0, 15.0}) {
                for (int t = 0; t < 100; ++t) {
                    const double x = ux(rng);
                    long double sum = 0.0L, scale = 0.0L;
                    for (int i = 0; i <= k; ++i) {
                        long double term = std::exp(
                            std::lgamma(k + alpha + 1.0) - std::lgamma(k - i + 1.0) -
                            std::lgamma(alpha + i + 1.0) - std::lgamma(i + 1.0) +
                            (x > 0.0 ? i * std::log(x) : (i == 0 ? 0.0 : -745.0 * i)));
                        scale = std::max(scale, term);
                        sum += (i % 2 == 0) ? term : -term;
                    }
                    const double val = sf::laguerre(k, alpha, x);
                    const double gap =
                        std::abs(val - static_cast<double>(sum)) /
                        std::max({std::abs(val), static_cast<double>(scale), 1.0});
                    worst = std::max(worst, gap);
                }
            }
        }
        out.push_back(Report::make("laguerre-recurrence-consistency",
                                   "k<=12, alpha<=15, 100 x-values in [0,50]", worst,
                                   1e-10));
    }

    {  // the three growth-envelope inequalities, randomized grid
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> ux(0.0, 80.0);
        std::uniform_real_distribution<double> ua(0.0, 15.0);
        int violations = 0;
        for (int k = 0; k <= 12; ++k) {
            for (int t = 0; t < 100; ++t) {
                const double alpha = ua(rng);
                const double x = ux(rng);
                const double value = sf::laguerre(k, alpha, x);
                const double upper =
                    std::exp(k * std::log(x + alpha + k) - sf::log_factorial(k));
                if (std::abs(value) > upper * (1.0 + 1e-12) + 1e-300) ++violations;
                const double beta = beta_bound(k, alpha);
                if (x >= beta && x > 0.0) {
                    const double signec = (k % 2 == 0) ? value : -value;
                    const double lo =
                        x > beta ? std::exp(k * std::log(x - beta) - sf::log_factorial(k))
                                 : (k == 0 ? 1.0 : 0.0);
                    const double hi = std::exp(k * std::log(x) - sf::log_factorial(k));
                    if (signec < lo * (1.0 - 1e-12) - 1e-300) ++violations;
                    if (signec > hi * (1.0 + 1e-12) + 1e-300) ++violations;
                }
                if (x >= 0.5 * beta && x > 0.0) {
                    const double hi = std::exp(k * std::log(x) - sf::log_factorial(k));
                    if (std::abs(value) > hi * (1.0 + 1e-12) + 1e-300) ++violations;
                }
            }
        }
        out.push_back(Report::make("laguerre-estimate-inequalities",
                                   "k<=12, alpha<=15, 100 x-values per k",
                                   violations, 0.0));
    }

    {  // root location: k sign changes inside ]0, beta]
        int violations = 0;
        for (int k = 1; k <= 10; ++k) {
            for (double alpha : {0.0, 1.0, 4.5, 9.0, 15.0}) {
                const double hi = beta_bound(k, alpha) * (1.0 + 1e-9) + 1e-12;
                int sign_changes = 0;
                double prev = sf::laguerre(k, alpha, 1e-12);
                const int grid = 20000;
                for (int j = 1; j <= grid; ++j) {
                    const double cur = sf::laguerre(k, alpha, hi * j / grid);
                    if ((prev < 0.0) != (cur < 0.0)) ++sign_changes;
                    prev = cur;
                }
                if (sign_changes != k) ++violations;
            }
        }
        out.push_back(Report::make("laguerre-zero-location",
                                   "k<=10, roots bracketed in ]0, beta]",
                                   violations, 0.0));
    }

    {  // summation identity
        double worst = 0.0;
        for (int q : {1, 2, 3, 5, 8, 13}) {
            for (double x : {0.0, 0.4, 1.0, 3.7, 9.0, 30.0}) {
                double sum = 0.0;
                for (int r = 0; r < q; ++r) sum += sf::laguerre(r, 0.0, x);
                const double target = sf::laguerre(q - 1, 1.0, x);
                worst = std::max(worst, std::abs(sum - target) /
                                            std::max({std::abs(target), 1.0}));
            }
        }
        out.push_back(Report::make("laguerre-summation-identity",
                                   "sum_{r<q} L^0_r = L^1_{q-1}, q<=13", worst,
                                   1e-12));
    }

    {  // parameter-shift recurrence
        double worst = 0.0;
        for (int r = 0; r <= 6; ++r)
            for (int p = 1; p <= 6; ++p)
                for (double alpha : {0.0, 1.5})
                    for (double x : {0.3, 1.1, 4.2, 12.0}) {
                        double sum = 0.0;
                        for (int s = 0; s <= r; ++s)
                            sum += std::exp(sf::log_factorial(r - s + p - 1) -
                                            sf::log_factorial(p - 1) -
                                            sf::log_factorial(r - s)) *
                                   sf::laguerre(s, alpha, x);
                        const double target = sf::laguerre(r, alpha + p, x);
                        worst = std::max(worst, std::abs(sum - target) /
                                                    std::max(std::abs(target), 1.0));
                    }
        out.push_back(Report::make("laguerre-shift-recurrence",
                                   "L^{a+p}_r = sum binom L^a_s, r,p <= 6", worst,
                                   1e-11));
    }

    {  // exp partial sums: range and monotonicity in k
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> ux(0.0, 120.0);
        int violations = 0;
        for (int t = 0; t < 300; ++t) {
            const double x = ux(rng);
            double prev = -1.0;
            for (int k = 0; k <= 60; ++k) {
                const double v = sf::exp_partial_scaled(k, x);
                if (v < 0.0 || v > 1.0) ++violations;
                if (v < prev - 1e-13) ++violations;
                prev = v;
            }
        }
        out.push_back(Report::make("exp-partial-range-monotone",
                                   "x in [0,120], k <= 60", violations, 0.0));
    }

    {  // Berry-Esseen shape: sup_x |E_{n-1}(x)e^{-x} - erf((n-x)/sqrt n)| <= 2/sqrt n
        std::vector<double> ns{100.0, 400.0, 1600.0};
        std::vector<double> sups;
        double worst_ratio = 0.0;
        for (double n : ns) {
            const double step = 0.02 * std::sqrt(n);
            double sup = 0.0;
            for (double x = 0.0; x <= n + 10.0 * std::sqrt(n); x += step) {
                const double gap =
                    std::abs(sf::exp_partial_scaled(static_cast<int>(n) - 1, x) -
                             sf::normal_cdf((n - x) / std::sqrt(n)));
                sup = std::max(sup, gap);
            }
            sups.push_back(sup);
            worst_ratio = std::max(worst_ratio, sup / (2.0 / std::sqrt(n)));
        }
        bool monotone = sups[0] > sups[1] && sups[1] > sups[2];
        const double rate = as::fit_decay_exponent(ns, sups);
        out.push_back(Report::make("partial-sum-normal-law",
                                   "n in {100,400,1600}, sup_x normalized by 2/sqrt(n)",
                                   monotone ? worst_ratio : 2.0, 1.0, rate));
    }

    {  // real-axis normal cdf against the libm complementary error function
        double worst = 0.0;
        for (double x = -8.0; x <= 8.0; x += 0.05) {
            worst = std::max(worst, std::abs(sf::normal_cdf(x) -
                                             0.5 * std::erfc(-x / std::sqrt(2.0))));
            worst = std::max(
                worst, std::abs(sf::normal_cdf(cplx(x, 0.0)) - sf::normal_cdf(x)));
        }
        out.push_back(
            Report::make("normal-cdf-real-axis", "x in [-8,8]", worst, 1e-14));
    }

    {  // complex normal cdf: complementary symmetry (entire-function identity)
        double worst = 0.0;
        std::mt19937_64 rng(10);
        std::uniform_real_distribution<double> u(-6.0, 6.0);
        for (int t = 0; t < 200; ++t) {
            const cplx a(u(rng), u(rng) / 2.0);
            worst = std::max(worst,
                             std::abs(sf::normal_cdf(a) + sf::normal_cdf(-a) - 1.0));
        }
        out.push_back(Report::make("normal-cdf-complementarity",
                                   "random a, |Re|<=6, |Im|<=3", worst, 1e-12));
    }

    {  // gauss moment recurrence on stored tables
        double worst = 0.0;
        for (cplx a : {cplx(0.0), cplx(1.3, 0.0), cplx(-0.7, 1.1), cplx(2.0, -2.0)}) {
            const auto table = sf::gauss_halfline_moment(16, a);
            const cplx g = std::exp(-0.5 * a * a);
            cplx pw = a;
            for (int k = 2; k <= 16; ++k) {
                const cplx expect = (k - 1.0) * table[k - 2] - pw * g;
                pw *= a;
                worst = std::max(worst, std::abs(table[k] - expect) /
                                            std::max(1.0, std::abs(table[k])));
            }
        }
        out.push_back(Report::make("gauss-moment-recurrence",
                                   "k <= 16, real and complex endpoints", worst,
                                   1e-12));
    }

    {  // bessel ratio: series region endpoints and the first ring radius
        double worst = std::abs(sf::bessel_j1_ratio(0.0) - 1.0);
        const double root = 1.915852985103756;  // half the first J1 zero
        worst = std::max(worst, std::abs(sf::bessel_j1_ratio(root)));
        out.push_back(Report::make("bessel-ratio-endpoints",
                                   "value 1 at s=0; zero at s = j_{1,1}/2", worst,
                                   1e-9));
    }

    return out;
}

// ------------------------------------------------------------------ kernels

std::vector<Report> suite_kernels(const Options&) {
    std::vector<Report> out;

    {  // closed-form approximation and its halving in m (criterion 1)
        auto sup_gap = [](double m, int q) {
            kr::EnsembleParams p{m, static_cast<int>(m), q};
            kr::KernelEvaluator eval(p);
            double sup = 0.0;
            for (int a = 0; a <= 20; ++a) {
                const cplx z(-0.7 + 0.07 * a, 0.0);
                for (int b = 0; b <= 20; ++b) {
                    const cplx w(0.0, -0.7 + 0.07 * b);
                    sup = std::max(sup, std::abs(eval.zhe(z, w) -
                                                 kr::corr_kernel_fock(m, q, z, w)));
                }
            }
            return sup;
        };
        double worst100 = 0.0, worst_ratio = 0.0;
        for (int q : {1, 2, 3}) {
            const double g100 = sup_gap(100.0, q);
            const double g200 = sup_gap(200.0, q);
            worst100 = std::max(worst100, g100);
            worst_ratio = std::max(worst_ratio, g200 / g100);
        }
        out.push_back(Report::make("kernel-closed-form",
                                   "21x21 z,w grid, |z|,|w|<=0.7, m=n=100, q in {1,2,3}",
                                   worst100, 1e-4));
        out.push_back(Report::make("kernel-closed-form-halving",
                                   "sup gap ratio m=200 over m=100", worst_ratio,
                                   0.5));
    }

    {  // orthonormality (criterion 2)
        kr::EnsembleParams p{4.0, 6, 3};
        const auto res = kr::gram_matrix(p);
        double worst = 0.0;
        for (long a = 0; a < p.dim(); ++a)
            for (long b = 0; b < p.dim(); ++b)
                worst = std::max(worst,
                                 std::abs(res.matrix(a, b) - (a == b ? 1.0 : 0.0)));
        out.push_back(Report::make("gram-orthonormality",
                                   "m=4, n=6, q=3, entrywise against identity",
                                   worst, 1e-6));
    }

    {  // positive semidefiniteness on random points
        kr::EnsembleParams p{12.0, 9, 3};
        kr::KernelEvaluator eval(p);
        const auto pts = random_disk_points(12, 1.3, 77);
        Eigen::MatrixXcd gram(pts.size(), pts.size());
        for (size_t a = 0; a < pts.size(); ++a)
            for (size_t b = 0; b < pts.size(); ++b)
                gram(a, b) = eval.zhe(pts[a], pts[b]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
        const double lo = solver.eigenvalues().minCoeff();
        const double hi = solver.eigenvalues().maxCoeff();
        out.push_back(Report::make("kernel-positive-semidefinite",
                                   "12 random points, m=12, n=9, q=3",
                                   std::max(0.0, -lo / hi), 1e-8));
    }

    {  // split consistency and diagonal block positivity
        kr::EnsembleParams p{10.0, 10, 3};
        kr::KernelEvaluator eval(p);
        double worst = 0.0;
        const auto pts = random_disk_points(8, 1.2, 91);
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            const auto [k1, k2] = eval.zhe_split(pts[i], pts[i + 1]);
            const cplx whole = eval.zhe(pts[i], pts[i + 1]);
            worst = std::max(worst, std::abs(k1 + k2 - whole) /
                                        std::max(1.0, std::abs(whole)));
        }
        out.push_back(Report::make("kernel-split-consistency",
                                   "analytic + antianalytic blocks re-sum", worst,
                                   1e-12));
    }

    {  // pure-level reconstruction
        kr::EnsembleParams p{8.0, 8, 3};
        kr::KernelEvaluator eval(p);
        double worst = 0.0;
        const auto pts = random_disk_points(8, 1.1, 55);
        for (size_t i = 0; i + 1 < pts.size(); i += 2) {
            cplx sum = 0.0;
            for (int r = 0; r < p.q; ++r)
                sum += eval.zhe_pure_level(r, pts[i], pts[i + 1]);
            const cplx whole = eval.zhe(pts[i], pts[i + 1]);
            worst = std::max(worst,
                             std::abs(sum - whole) / std::max(1.0, std::abs(whole)));
        }
        out.push_back(Report::make("pure-level-reconstruction",
                                   "sum of level kernels vs full kernel, q=3",
                                   worst, 1e-10));
    }

    {  // diagonal bound and q-monotonicity
        int violations = 0;
        for (const cplx z : random_disk_points(10, 1.8, 13)) {
            double prev = 0.0;
            for (int q = 1; q <= 4; ++q) {
                kr::EnsembleParams p{30.0, 10, q};
                const double d = kr::KernelEvaluator(p).diag(z);
                if (d < prev - 1e-10) ++violations;
                if (d > 30.0 * q * (1.0 + 1e-12)) ++violations;
                prev = d;
            }
        }
        out.push_back(Report::make("kernel-diagonal-bound-monotone",
                                   "Zhe(z,z) <= mq, nondecreasing in q", violations,
                                   0.0));
    }

    {  // geometric decay of the kernel gap at the |zw| = 0.49 edge
        const cplx z(0.7, 0.0);
        std::vector<double> gaps;
        for (double m : {50.0, 100.0, 200.0}) {
            kr::EnsembleParams p{m, static_cast<int>(m), 3};
            gaps.push_back(as::kernel_gap(p, z, z));
        }
        double worst_ratio = 0.0;
        for (size_t i = 1; i < gaps.size(); ++i) {
            if (gaps[i] <= 1e-12) continue;  // decayed to the roundoff floor
            worst_ratio = std::max(worst_ratio, gaps[i] / gaps[i - 1]);
        }
        out.push_back(Report::make("kernel-gap-geometric-decay",
                                   "z=w=0.7, m in {50,100,200}, floor 1e-12",
                                   worst_ratio, 0.5));
    }

    return out;
}

// --------------------------------------------------------------------- bulk

std::vector<Report> suite_bulk(const Options& opt) {
    std::vector<Report> out;
    const double m_main = opt.fast ? 200.0 : 400.0;
    const std::vector<cplx> centers{cplx(0.0), cplx(0.4, 0.0), cplx(0.0, 0.6)};

    {  // bulk L1 law (criterion 3) and center independence
        double worst = 0.0;
        double ratio = 0.0;
        for (int q : {1, 2, 3}) {
            double lo = 1e300, hi = 0.0;
            for (const cplx c : centers) {
                kr::EnsembleParams p{m_main, static_cast<int>(m_main), q};
                const double gap = bz::blowup_l1_gap(p, bz::BlowupFrame{c}, 4.0);
                worst = std::max(worst, gap);
                lo = std::min(lo, gap);
                hi = std::max(hi, gap);
            }
            // center independence within a factor of 2, above a tiny floor
            if (hi > 1e-9) ratio = std::max(ratio, hi / std::max(lo, 1e-12));
        }
        char grid[128];
        std::snprintf(grid, sizeof(grid),
                      "|xi|<=4, m=n=%g, q in {1,2,3}, centers {0, 0.4, 0.6i}",
                      m_main);
        out.push_back(Report::make("bulk-profile-l1", grid, worst,
                                   opt.fast ? 0.1 : 0.05));
        out.push_back(Report::make("bulk-center-independence",
                                   "max/min L1 gap across centers", ratio, 2.0));
    }

    {  // Fresnel ring minima of the q=3 blow-up at the roots of L^1_2
        kr::EnsembleParams p{m_main, static_cast<int>(m_main), 3};
        bz::BerezinEvaluator eval(p, 0.0);
        const double roots[2] = {3.0 - std::sqrt(3.0), 3.0 + std::sqrt(3.0)};
        // scan the radial profile in the t = |xi|^2 variable
        std::vector<double> ts, vals;
        for (double t = 0.2; t <= 6.5; t += 0.005) {
            ts.push_back(t);
            vals.push_back(eval.density(std::sqrt(t) / std::sqrt(p.m)) / p.m);
        }
        std::vector<double> minima;
        for (size_t i = 1; i + 1 < vals.size(); ++i)
            if (vals[i] < vals[i - 1] && vals[i] < vals[i + 1])
                minima.push_back(ts[i]);
        double observed = 0.0;
        for (double root : roots) {
            double best = 1e300;
            for (double t : minima) best = std::min(best, std::abs(t - root));
            observed = std::max(observed, best);
        }
        out.push_back(Report::make("fresnel-ring-minima",
                                   "q=3 radial minima vs roots of L^1_2 in |xi|^2",
                                   observed, 0.1));
    }

    {  // Bessel limit of the q-rescaled profile (criterion 7)
        const int q = 64;
        double sup = 0.0;
        for (double s = 0.0; s <= 3.0; s += 0.005) {
            const double rescaled =
                bz::interior_profile(q, cplx(s / std::sqrt(static_cast<double>(q)), 0.0)) /
                q;
            sup = std::max(sup, std::abs(rescaled - bz::bessel_profile(cplx(s, 0.0))));
        }
        out.push_back(Report::make("bessel-limit",
                                   "q=64 rescaled bulk profile vs J1 law, |xi'|<=3",
                                   sup, 0.02));
    }

    {  // blow-up probability mass concentrates in |xi| <= 8
        const double m = opt.fast ? 100.0 : 144.0;
        double observed = 0.0;
        for (const cplx c : centers) {
            kr::EnsembleParams p{m, static_cast<int>(m), 2};
            bz::BerezinEvaluator eval(p, c);
            auto grid = quad::make_polar_grid(0.0, 8.0 / std::sqrt(m), 64, 12, 96);
            const double mass =
                grid.integrate([&](cplx d) { return eval.density(c + d); });
            if (mass < 0.99) observed = std::max(observed, 0.99 - mass);
            if (mass > 1.001) observed = std::max(observed, mass - 1.001);
        }
        out.push_back(Report::make("blowup-probability-mass",
                                   "mass over |xi|<=8 within [0.99, 1.001]",
                                   observed, 0.0));
    }

    return out;
}

// ----------------------------------------------------------------- boundary

std::vector<Report> suite_boundary(const Options& opt) {
    std::vector<Report> out;
    const double m_main = opt.fast ? 200.0 : 400.0;

    {  // rescaled kernel at the origin vs q/2 (criterion 4a)
        double worst = 0.0;
        for (int q : {1, 2}) {
            kr::EnsembleParams p{m_main, static_cast<int>(m_main), q};
            worst = std::max(worst, as::boundary_kernel_gap(p, 0.0, 0.0));
        }
        out.push_back(Report::make("boundary-kernel-origin",
                                   "xi=eta=0, q in {1,2}, limit q/2", worst, 0.1));
    }

    {  // decay exponent of the origin gap (criterion 4b)
        const std::vector<double> ms = opt.fast
                                           ? std::vector<double>{50.0, 100.0, 200.0}
                                           : std::vector<double>{100.0, 200.0, 400.0, 800.0};
        double worst = 0.0;
        double rate_reported = 0.0;
        for (int q : {1, 2}) {
            std::vector<double> gaps;
            for (double m : ms) {
                kr::EnsembleParams p{m, static_cast<int>(m), q};
                gaps.push_back(as::boundary_kernel_gap(p, 0.0, 0.0));
            }
            const double rate = as::fit_decay_exponent(ms, gaps);
            rate_reported = rate;
            worst = std::max(worst, std::abs(rate - 0.5));
        }
        out.push_back(Report::make("boundary-gap-decay-rate",
                                   "log-log fit over the m grid, window [0.3,0.7]",
                                   worst, 0.2, rate_reported));
    }

    {  // profile match on |xi| <= 2 and its shrink when m quadruples
        auto sup_gap = [](double m, int q) {
            kr::EnsembleParams p{m, static_cast<int>(m), q};
            bz::BerezinEvaluator eval(p, 1.0);
            double sup = 0.0;
            for (double re = -2.0; re <= 2.0 + 1e-9; re += 0.25) {
                for (double im = -2.0; im <= 2.0 + 1e-9; im += 0.25) {
                    const cplx xi(re, im);
                    if (std::abs(xi) > 2.0) continue;
                    const double density =
                        eval.density(1.0 + xi / std::sqrt(m)) / m;
                    sup = std::max(sup,
                                   std::abs(density - bz::boundary_profile(q, xi)));
                }
            }
            return sup;
        };
        double worst = 0.0;
        for (int q : {1, 2, 3}) worst = std::max(worst, sup_gap(m_main, q));
        out.push_back(Report::make("boundary-profile-match",
                                   "sup over |xi|<=2, q<=3, center 1", worst, 0.2));

        const double factor = sup_gap(4.0 * m_main, 2) / sup_gap(m_main, 2);
        const double outside =
            factor < 0.3 ? 0.3 - factor : (factor > 0.8 ? factor - 0.8 : 0.0);
        out.push_back(Report::make("boundary-profile-shrink",
                                   "sup gap factor under m -> 4m, window [0.3,0.8]",
                                   outside, 0.0, factor));
    }

    {  // 1-point intensity blow-up against the Hermite half-line law
        kr::EnsembleParams p{m_main, static_cast<int>(m_main), 3};
        double worst = 0.0;
        for (double s = -2.0; s <= 2.0 + 1e-9; s += 0.2) {
            worst = std::max(worst,
                             std::abs(bz::one_point_intensity_blowup(p, cplx(s, 0.0)) -
                                      bz::boundary_intensity_limit(3, s)));
        }
        out.push_back(Report::make("boundary-intensity-law",
                                   "Re xi in [-2,2], q=3, vs Hermite half-line sum",
                                   worst, 0.1));
    }

    {  // directional limits of the intensity
        kr::EnsembleParams p{m_main, static_cast<int>(m_main), 2};
        double worst =
            std::abs(bz::one_point_intensity_blowup(p, cplx(-4.0, 0.0)) - 2.0);
        worst = std::max(worst,
                         std::abs(bz::one_point_intensity_blowup(p, 0.0) - 1.0));
        worst = std::max(worst, bz::one_point_intensity_blowup(p, cplx(4.0, 0.0)));
        out.push_back(Report::make("boundary-intensity-directions",
                                   "q filled, q/2 at the edge, vacated outside",
                                   worst, 0.1));
    }

    {  // semicircle approximation of the filled-level density at q = 64
        const int q = 64;
        const double rq = std::sqrt(static_cast<double>(q));
        double sup16 = 0.0, sup64 = 0.0;
        for (double s = -rq; s <= rq + 1e-9; s += rq / 64.0) {
            sup64 = std::max(sup64, std::abs(bz::boundary_intensity_limit(q, s) -
                                             bz::semicircle_intensity(q, s)) /
                                        q);
        }
        for (double s = -4.0; s <= 4.0 + 1e-9; s += 4.0 / 64.0) {
            sup16 = std::max(sup16, std::abs(bz::boundary_intensity_limit(16, s) -
                                             bz::semicircle_intensity(16, s)) /
                                        16.0);
        }
        const double observed = (sup64 < sup16) ? sup64 : 1.0 + sup64;
        out.push_back(Report::make("semicircle-approximation",
                                   "normalized sup gap at q=64, improving from q=16",
                                   observed, 0.05));
    }

    return out;
}

// ----------------------------------------------------------------- exterior

std::vector<Report> suite_exterior(const Options& opt) {
    std::vector<Report> out;
    const double m_main = opt.fast ? 100.0 : 200.0;
    const cplx z(1.3, 0.0);

    {
        kr::EnsembleParams p{m_main, static_cast<int>(m_main), 2};
        const auto mass = as::exterior_mass_outside(p, z, 1.1);
        // the boundary layer is ~m^{-1/2} wide, so the reduced-scale run
        // carries a proportionally wider tolerance
        out.push_back(Report::make("exterior-mass-outside", "z=1.3, rho=1.1, q=2",
                                   mass.value, opt.fast ? 0.15 : 0.05));
    }

    {
        int violations = 0;
        double prev = 1.0;
        const std::vector<double> ms =
            opt.fast ? std::vector<double>{50.0, 100.0, 200.0}
                     : std::vector<double>{100.0, 200.0, 400.0};
        for (double m : ms) {
            kr::EnsembleParams p{m, static_cast<int>(m), 2};
            const double mass = as::exterior_mass_outside(p, z, 1.1).value;
            if (mass > prev + 1e-12) ++violations;
            prev = mass;
        }
        out.push_back(Report::make("exterior-mass-monotone",
                                   "mass outside 1.1 decreasing in m", violations,
                                   0.0));
    }

    {
        kr::EnsembleParams p{m_main, static_cast<int>(m_main), 2};
        out.push_back(Report::make(
            "exterior-moment-probability", "l=0 total Berezin mass",
            std::abs(as::exterior_moment(p, z, 0) - cplx(1.0)), 1e-6));
        double worst = 0.0;
        for (int l = 1; l <= 4; ++l)
            worst = std::max(worst,
                             std::abs(as::exterior_moment(p, z, l) - std::pow(z, -l)));
        out.push_back(Report::make("exterior-moment-limit",
                                   "pv moments l in 1..4 vs z^{-l}, z=1.3", worst,
                                   0.05));
    }

    {
        double worst = 0.0;
        for (cplx zz : {cplx(1.3, 0.0), cplx(1.5, 0.0), cplx(0.0, 2.0), cplx(1.2, 0.4)})
            for (int l = 0; l <= 4; ++l)
                worst = std::max(worst,
                                 std::abs(as::harmonic_moment(zz, l) - std::pow(zz, -l)));
        out.push_back(Report::make("harmonic-moment-exact",
                                   "Poisson-kernel moments vs z^{-l}, l<=4", worst,
                                   1e-10));
    }

    {  // angular exactness: doubling the nodes changes nothing
        kr::EnsembleParams p{40.0, 40, 2};
        const int base = 2 * (p.n + p.q + 2) + 1;
        const cplx a = as::exterior_moment(p, z, 2, base);
        const cplx b = as::exterior_moment(p, z, 2, 2 * base);
        out.push_back(Report::make("exterior-angular-exactness",
                                   "trigonometric exactness of the angular rule",
                                   std::abs(a - b), 1e-12));
    }

    return out;
}

// ---------------------------------------------------------------------- dpp

std::vector<Report> suite_dpp(const Options& opt) {
    std::vector<Report> out;

    {  // fixed cardinality (criterion 8, part 1)
        kr::EnsembleParams p{5.0, 5, 2};
        dpp::DppSampler sampler(p);
        const int trials = opt.fast ? 2000 : 10000;
        int violations = 0;
        for (int t = 0; t < trials; ++t)
            if (sampler.sample(40000 + t).points.size() !=
                static_cast<size_t>(p.dim()))
                ++violations;
        out.push_back(Report::make("dpp-cardinality",
                                   "every sample has exactly nq points",
                                   violations, 0.0));
    }

    {  // empirical intensity on a 3x3 coarse grid (criterion 8, part 2)
        kr::EnsembleParams p{2.0, 2, 1};
        dpp::DppSampler sampler(p);
        kr::KernelEvaluator eval(p);
        const int samples = 2000;
        const double lo = -1.5, cell = 1.0;
        double counts[3][3] = {};
        double sq_counts[3][3] = {};
        for (int t = 0; t < samples; ++t) {
            int local[3][3] = {};
            for (const cplx& zp : sampler.sample(12345 + t).points) {
                const int cx = static_cast<int>(std::floor((zp.real() - lo) / cell));
                const int cy = static_cast<int>(std::floor((zp.imag() - lo) / cell));
                if (cx < 0 || cx > 2 || cy < 0 || cy > 2) continue;
                ++local[cx][cy];
            }
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    counts[a][b] += local[a][b];
                    sq_counts[a][b] += local[a][b] * local[a][b];
                }
        }
        const auto& gl = quad::gauss_legendre(24);
        double worst = 0.0;
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                double expected = 0.0;
                for (size_t i = 0; i < gl.nodes.size(); ++i)
                    for (size_t j = 0; j < gl.nodes.size(); ++j) {
                        const double x = lo + cell * (a + 0.5 + 0.5 * gl.nodes[i]);
                        const double y = lo + cell * (b + 0.5 + 0.5 * gl.nodes[j]);
                        expected += 0.25 * cell * cell * gl.weights[i] *
                                    gl.weights[j] * eval.diag(cplx(x, y)) / kPi;
                    }
                const double mean = counts[a][b] / samples;
                double var = sq_counts[a][b] / samples - mean * mean;
                if (var <= 0.0) var = std::max(expected, 1e-12);
                const double zscore =
                    (mean - expected) / std::sqrt(var / samples);
                worst = std::max(worst, std::abs(zscore));
            }
        }
        out.push_back(Report::make("dpp-intensity-grid",
                                   "m=n=2, q=1, 3x3 grid, 2000 samples, |z|<=4",
                                   worst, 4.0));
    }

    {  // the simulation-figure parameters sample quickly (criterion 8, part 3)
        const auto start = std::chrono::steady_clock::now();
        kr::EnsembleParams p{61.0, 61, 3};
        const auto config = dpp::sample_configuration(p, 1);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        out.push_back(Report::make("dpp-sample-runtime",
                                   "m=n=61, q=3 (183 points), seconds",
                                   config.points.size() == 183 ? seconds : 1e9,
                                   30.0));
    }

    {  // radial law of the single-point process
        kr::EnsembleParams p{1.0, 1, 1};
        dpp::DppSampler sampler(p);
        const int trials = opt.fast ? 4000 : 10000;
        double mean_r2 = 0.0;
        for (int t = 0; t < trials; ++t)
            mean_r2 += std::norm(sampler.sample(900 + t).points[0]);
        mean_r2 /= trials;
        out.push_back(Report::make("dpp-radial-mean",
                                   "m=n=q=1: E[r^2] = 1 over the seed sweep",
                                   std::abs(mean_r2 - 1.0), 0.03));
    }

    {  // determinant identity constancy (criterion 9)
        kr::EnsembleParams p{5.0, 4, 2};
        double lo = 1e300, hi = -1e300;
        for (unsigned trial = 0; trial < 20; ++trial) {
            const auto pts = random_disk_points(8, 1.4, 600 + trial);
            const double ratio = dpp::det_identity_ratio(p, pts);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        out.push_back(Report::make("det-identity-constancy",
                                   "20 random 8-point configurations, m=5,n=4,q=2",
                                   hi - lo, 1e-6));
    }

    {  // repulsion: duplicated points annihilate the intensity
        kr::EnsembleParams p{10.0, 6, 2};
        kr::KernelEvaluator eval(p);
        double worst = 0.0;
        for (const cplx z : random_disk_points(5, 1.2, 19)) {
            std::vector<cplx> dup{z, z, cplx(0.3, -0.4)};
            const double det = dpp::joint_intensity(p, dup);
            const double scale =
                eval.diag(z) * eval.diag(z) * eval.diag(cplx(0.3, -0.4));
            worst = std::max(worst, std::abs(det) / scale);
        }
        out.push_back(Report::make("joint-intensity-duplicate",
                                   "relative determinant at a repeated point",
                                   worst, 1e-10));
    }

    {  // gauge invariance of the joint intensity
        kr::EnsembleParams p{12.0, 6, 2};
        kr::KernelEvaluator eval(p);
        auto pts = random_disk_points(4, 1.1, 29);
        std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        const double base = dpp::joint_intensity(p, pts);
        double worst = 0.0;
        for (const cplx c : {cplx(0.8, 0.0), cplx(-0.3, 1.1)}) {
            Eigen::MatrixXcd g(pts.size(), pts.size());
            for (size_t i = 0; i < pts.size(); ++i)
                for (size_t j = 0; j < pts.size(); ++j)
                    g(i, j) = std::polar(1.0, (c * pts[i]).imag()) *
                              eval.zhe(pts[i], pts[j]) *
                              std::polar(1.0, -(c * pts[j]).imag());
            const double gauged =
                Eigen::PartialPivLU<Eigen::MatrixXcd>(g).determinant().real();
            worst = std::max(worst, std::abs(gauged - base) / std::abs(base));
        }
        out.push_back(Report::make("dpp-gauge-invariance",
                                   "unimodular kernel gauge leaves intensities",
                                   worst, 1e-12));
    }

    return out;
}

// --------------------------------------------------------------- transforms

std::vector<Report> suite_transforms(const Options&) {
    std::vector<Report> out;
    namespace tf = polyg::transforms;

    {  // isometry by quadrature
        std::mt19937_64 rng(31);
        std::normal_distribution<double> g(0.0, 1.0);
        double worst = 0.0;
        for (int r : {0, 1, 3}) {
            for (double m : {1.0, 2.0}) {
                tf::CoefficientVector f;
                f.tag = tf::BasisTag::monomial_analytic;
                f.coefficients.resize(21);
                for (auto& c : f.coefficients) c = cplx(g(rng), g(rng));
                const auto image = tf::t_op_apply(r, m, f);
                const int deg = 21 + r;
                const double radius = std::sqrt((4.0 * (deg + 2) + 40.0) / m);
                auto grid =
                    quad::make_polar_grid(0.0, radius, 32, 24, 2 * (deg + 2) + 1);
                const double sq = grid.integrate([&](cplx z) {
                    return std::norm(image.evaluate(z)) * std::exp(-m * std::norm(z));
                });
                worst = std::max(worst, std::abs(std::sqrt(sq) - f.norm()) /
                                            f.norm());
            }
        }
        out.push_back(Report::make("t-op-isometry",
                                   "random degree-20 vectors, r in {0,1,3}", worst,
                                   1e-8));
    }

    {  // semigroup law through the closed-form derivative action:
        // T_1[g] = dg/dz - conj(z) g applied to g = T_{r-1}[e_j]
        double worst = 0.0;
        for (int r : {1, 2, 3, 5}) {
            for (int j = 0; j <= 12; ++j) {
                for (const cplx z : random_disk_points(4, 1.6, 100 + 13 * r + j)) {
                    const double x = std::norm(z);
                    cplx lhs;
                    if (j >= r - 1) {
                        // g = c z^{a} L^{a}_{r-1}(x), a = j-r+1
                        const int a = j - r + 1;
                        const double c = std::exp(
                            0.5 * (sf::log_factorial(r - 1) - sf::log_factorial(j)));
                        cplx za = std::pow(z, a);
                        cplx dz = 0.0;
                        if (a > 0)
                            dz += static_cast<double>(a) * std::pow(z, a - 1) *
                                  sf::laguerre(r - 1, a, x);
                        if (r - 1 > 0)
                            dz -= za * std::conj(z) * sf::laguerre(r - 2, a + 1, x);
                        lhs = c * (dz - std::conj(z) * za * sf::laguerre(r - 1, a, x));
                    } else {
                        // g = c (-1)^{r-1-j} conj(z)^{b} L^{b}_{j}(x), b = r-1-j
                        const int b = r - 1 - j;
                        const double c =
                            std::exp(0.5 * (sf::log_factorial(j) -
                                            sf::log_factorial(r - 1))) *
                            ((b % 2 == 0) ? 1.0 : -1.0);
                        const cplx zb = std::pow(std::conj(z), b);
                        cplx dz = 0.0;
                        if (j > 0)
                            dz -= zb * std::conj(z) * sf::laguerre(j - 1, b + 1, x);
                        lhs = c * (dz - std::conj(z) * zb * sf::laguerre(j, b, x));
                    }
                    const cplx rhs = std::sqrt(static_cast<double>(r)) *
                                     tf::t_op_basis_image(r, 1.0, j, z);
                    worst = std::max(worst, std::abs(lhs - rhs) /
                                                std::max({std::abs(rhs), 1.0}));
                }
            }
        }
        out.push_back(Report::make("t-op-semigroup",
                                   "T_1 T_{r-1} = sqrt(r) T_r on degrees <= 12",
                                   worst, 1e-10));
    }

    {  // pure-level projection residual (two constructions)
        kr::EnsembleParams p{2.0, 5, 3};
        const auto pts = random_disk_points(20, 1.6, 71);
        double worst = 0.0;
        for (int r : {1, 2})
            worst = std::max(worst, tf::pure_level_projection_check(p, r, pts));
        out.push_back(Report::make("pure-level-projection",
                                   "m=2, n=5, q=3, 20 random points, r in {1,2}",
                                   worst, 1e-9));
    }

    {  // Christoffel-Darboux: sum form vs ratio form
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const double x = u(rng);
            double y = u(rng);
            if (std::abs(x - y) < 1e-6) y += 1.0;
            const double sum = bz::christoffel_darboux_sum(8, x, y);
            const double ratio =
                (sf::hermite_prob(8, x) * sf::hermite_prob(7, y) -
                 sf::hermite_prob(7, x) * sf::hermite_prob(8, y)) /
                (std::exp(sf::log_factorial(7)) * (x - y));
            worst = std::max(worst, std::abs(sum - ratio) /
                                        std::max({std::abs(sum), 1.0}));
        }
        out.push_back(Report::make("christoffel-darboux",
                                   "sum vs ratio form, q=8, random pairs", worst,
                                   1e-10));
    }

    {  // poly-Bargmann kernel symmetry
        std::mt19937_64 rng(41);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        double worst = 0.0;
        for (int r : {0, 1, 3, 6}) {
            for (int trial = 0; trial < 6; ++trial) {
                const cplx xi(u(rng), u(rng)), eta(u(rng), u(rng));
                const cplx a = tf::poly_bargmann_kernel(r, xi, eta);
                const cplx b = tf::poly_bargmann_kernel(r, eta, xi);
                worst = std::max(worst, std::abs(a - std::conj(b)) /
                                            std::max(1.0, std::abs(a)));
            }
        }
        out.push_back(Report::make("poly-bargmann-symmetry",
                                   "K(xi,eta) = conj K(eta,xi)", worst, 1e-11));
    }

    {  // level orthogonality by quadrature
        const double m = 2.0;
        tf::CoefficientVector f;
        f.tag = tf::BasisTag::monomial_analytic;
        f.coefficients = {cplx(0.7, 0.1), cplx(-0.3, 0.5), cplx(0.2, -0.9),
                          cplx(1.1, 0.0)};
        const auto i0 = tf::t_op_apply(0, m, f);
        const auto i1 = tf::t_op_apply(1, m, f);
        const auto i2 = tf::t_op_apply(2, m, f);
        const int deg = 8;
        auto grid = quad::make_polar_grid(
            0.0, std::sqrt((4.0 * deg + 40.0) / m), 32, 24, 2 * deg + 1);
        auto inner = [&](const tf::TOpResult& a, const tf::TOpResult& b) {
            const double re = grid.integrate([&](cplx z) {
                return (a.evaluate(z) * std::conj(b.evaluate(z)) *
                        std::exp(-m * std::norm(z)))
                    .real();
            });
            const double im = grid.integrate([&](cplx z) {
                return (a.evaluate(z) * std::conj(b.evaluate(z)) *
                        std::exp(-m * std::norm(z)))
                    .imag();
            });
            return std::abs(cplx(re, im));
        };
        const double worst =
            std::max({inner(i0, i1), inner(i1, i2), inner(i0, i2)});
        out.push_back(Report::make("level-orthogonality",
                                   "quadrature inner products across levels",
                                   worst, 1e-8));
    }

    {  // Bargmann relabeling preserves coefficients exactly
        tf::CoefficientVector f;
        f.tag = tf::BasisTag::hermite_line;
        f.coefficients = {cplx(0.3, -1.0), cplx(0.0, 0.7), cplx(2.0, 0.0)};
        const auto g = tf::bargmann_apply(f);
        const double observed =
            (g.coefficients == f.coefficients && g.norm() == f.norm()) ? 0.0 : 1.0;
        out.push_back(Report::make("bargmann-isometry",
                                   "diagonal relabeling, norms equal exactly",
                                   observed, 0.0));
    }

    return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "specfun", "kernels", "bulk", "boundary", "exterior", "dpp", "transforms"};
    return names;
}

bool is_suite(const std::string& name) {
    if (name == "all") return true;
    for (const auto& s : suite_names())
        if (s == name) return true;
    return false;
}

std::vector<Report> run_suite(const std::string& name, const Options& opt) {
    if (name == "specfun") return suite_specfun(opt);
    if (name == "kernels") return suite_kernels(opt);
    if (name == "bulk") return suite_bulk(opt);
    if (name == "boundary") return suite_boundary(opt);
    if (name == "exterior") return suite_exterior(opt);
    if (name == "dpp") return suite_dpp(opt);
    if (name == "transforms") return suite_transforms(opt);
    if (name == "all") {
        std::vector<Report> out;
        for (const auto& s : suite_names()) {
            auto part = run_suite(s, opt);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw std::domain_error("unknown suite: " + name);
}

std::vector<CriterionResult> run_acceptance() {
    const Options full{};
    std::vector<CriterionResult> results;
    auto add = [&results](int number, std::string name, std::vector<Report> details) {
        CriterionResult r;
        r.number = number;
        r.name = std::move(name);
        r.details = std::move(details);
        r.passed = true;
        for (const auto& d : r.details) r.passed = r.passed && d.passed;
        results.push_back(std::move(r));
    };

    auto pick = [](const std::vector<Report>& reports,
                   std::initializer_list<const char*> names) {
        std::vector<Report> out;
        for (const char* n : names)
            for (const auto& r : reports)
                if (r.law == n) out.push_back(r);
        return out;
    };

    const auto kernels = suite_kernels(full);
    add(1, "kernel closed form",
        pick(kernels, {"kernel-closed-form", "kernel-closed-form-halving"}));
    add(2, "orthonormality", pick(kernels, {"gram-orthonormality"}));

    const auto bulk = suite_bulk(full);
    add(3, "bulk profile", pick(bulk, {"bulk-profile-l1"}));

    const auto boundary = suite_boundary(full);
    add(4, "boundary law",
        pick(boundary, {"boundary-kernel-origin", "boundary-gap-decay-rate"}));

    const auto exterior = suite_exterior(full);
    add(5, "exterior limits",
        pick(exterior, {"exterior-mass-outside", "exterior-moment-probability",
                        "exterior-moment-limit", "harmonic-moment-exact"}));

    const auto specfun = suite_specfun(full);
    add(6, "partial-sum normal law", pick(specfun, {"partial-sum-normal-law"}));

    add(7, "bessel limit", pick(bulk, {"bessel-limit"}));

    const auto dpp_reports = suite_dpp(full);
    add(8, "dpp sampler",
        pick(dpp_reports,
             {"dpp-cardinality", "dpp-intensity-grid", "dpp-sample-runtime"}));
    add(9, "determinant identity",
        pick(dpp_reports, {"det-identity-constancy", "joint-intensity-duplicate"}));

    const auto transforms = suite_transforms(full);
    add(10, "operator calculus",
        pick(transforms, {"t-op-isometry", "t-op-semigroup",
                          "pure-level-projection", "christoffel-darboux"}));

    add(11, "laguerre inequalities",
        pick(specfun, {"laguerre-estimate-inequalities"}));

    return results;
}

}  // namespace polyg::verify
