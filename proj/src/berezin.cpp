#include "polyg/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "polyg/parallel.hpp"
#include "polyg/quadrature.hpp"
#include "polyg/specfun.hpp"
#include "polyg/transforms.hpp"

namespace polyg::berezin {

namespace {

namespace sf = polyg::specfun;

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Pi = 2.5066282746310005024;

// Limit profile for a frame: bulk Laguerre-Gauss inside, Hermite law on
// the circle (rotated so the formula at center 1 applies), zero outside.
double limit_profile(const EnsembleParams& p, const BlowupFrame& frame, cplx xi) {
    switch (frame.classify()) {
        case BlowupFrame::Region::interior:
            return interior_profile(p.q, xi);
        case BlowupFrame::Region::boundary: {
            const cplx rot = frame.center / std::abs(frame.center);
            return boundary_profile(p.q, std::conj(rot) * xi);
        }
        case BlowupFrame::Region::exterior:
            return 0.0;
    }
    return 0.0;
}

}  // namespace

BerezinEvaluator::BerezinEvaluator(const EnsembleParams& p, cplx center)
    : eval_(p), center_(center), center_features_(p.dim()) {
    eval_.features(center_, center_features_);
    center_diag_ = eval_.diag(center_);
    if (!(center_diag_ > 0.0))
        throw DegenerateCenterError("berezin: kernel diagonal vanishes at center");
}

double BerezinEvaluator::density(cplx w) const {
    if (w == center_) return center_diag_;  // same diagonal path as the blow-up
    thread_local std::vector<cplx> feats;
    feats.resize(center_features_.size());
    eval_.features(w, feats);
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
    for (size_t a = 0; a < feats.size(); ++a) {
        const cplx& fz = center_features_[a];
        const cplx& fw = feats[a];
        const double re = fz.real() * fw.real() + fz.imag() * fw.imag();
        const double im = fz.imag() * fw.real() - fz.real() * fw.imag();
        double y = re - cr;
        double t = sr + y;
        cr = (t - sr) - y;
        sr = t;
        y = im - ci;
        t = si + y;
        ci = (t - si) - y;
        si = t;
    }
    return (sr * sr + si * si) / center_diag_;
}

double berezin_density(const EnsembleParams& p, cplx z, cplx w) {
    return BerezinEvaluator(p, z).density(w);
}

double blowup_density(const EnsembleParams& p, const BlowupFrame& frame, cplx xi) {
    BerezinEvaluator eval(p, frame.center);
    return eval.density(frame.center + xi / std::sqrt(p.m)) / p.m;
}

double interior_profile(int q, cplx xi) {
    if (q < 1) throw std::domain_error("interior_profile: q must be >= 1");
    const double x = std::norm(xi);
    const double lag = sf::laguerre(q - 1, 1.0, x);
    return lag * lag * std::exp(-x) / q;
}

double bessel_profile(cplx xi_prime) {
    const double ratio = sf::bessel_j1_ratio(std::abs(xi_prime));
    return ratio * ratio;
}

cplx boundary_kernel_limit(int q, cplx xi, cplx eta) {
    if (q < 1 || q > 64)
        throw std::domain_error("boundary_kernel_limit: q out of range");
    cplx sum = 0.0;
    for (int r = 0; r < q; ++r)
        sum += transforms::poly_bargmann_kernel(r, xi, eta);
    return sum;
}

double boundary_profile(int q, cplx xi) {
    const cplx k = boundary_kernel_limit(q, xi, 0.0);
    return (2.0 / q) * std::exp(-std::norm(xi)) * std::norm(k);
}

double one_point_intensity_blowup(const EnsembleParams& p, cplx xi) {
    p.validate();
    const cplx z = 1.0 + xi / std::sqrt(p.m);
    return kernel::KernelEvaluator(p).diag(z) / p.m;
}

double boundary_intensity_limit(int q, double re_xi) {
    if (q < 1 || q > 64)
        throw std::domain_error("boundary_intensity_limit: q out of range");
    const double a = -2.0 * re_xi;
    // J_r = int_{-inf}^{a} H_r^2 e^{-t^2/2} dt via
    //   J_r = r J_{r-1} - H_r(a) H_{r-1}(a) e^{-a^2/2}
    const double g = std::exp(-0.5 * a * a);
    double total = 0.0;
    double j = kSqrt2Pi * sf::normal_cdf(a);
    total += j / kSqrt2Pi;
    double log_rf = 0.0;  // log r!
    for (int r = 1; r < q; ++r) {
        j = r * j - sf::hermite_prob(r, a) * sf::hermite_prob(r - 1, a) * g;
        log_rf += std::log(static_cast<double>(r));
        total += j * std::exp(-log_rf) / kSqrt2Pi;
    }
    return total;
}

double semicircle_intensity(int q, double s) {
    if (q < 1) throw std::domain_error("semicircle_intensity: q must be >= 1");
    const double u = std::clamp(-s / std::sqrt(static_cast<double>(q)), -1.0, 1.0);
    auto primitive = [](double t) {
        return 0.5 * (t * std::sqrt(std::max(0.0, 1.0 - t * t)) + std::asin(t));
    };
    const double integral = primitive(u) + kPi / 4.0;
    return std::clamp(2.0 * q / kPi * integral, 0.0, static_cast<double>(q));
}

double christoffel_darboux_sum(int q, double x, double y) {
    if (q < 1) throw std::domain_error("christoffel_darboux_sum: q must be >= 1");
    double sum = 0.0;
    double hx_prev = 0.0, hx = 1.0;  // H_{r-1}, H_r
    double hy_prev = 0.0, hy = 1.0;
    double inv_rf = 1.0;  // 1/r!
    for (int r = 0; r < q; ++r) {
        sum += hx * hy * inv_rf;
        const double nx = x * hx - r * hx_prev;
        const double ny = y * hy - r * hy_prev;
        hx_prev = hx;
        hx = nx;
        hy_prev = hy;
        hy = ny;
        inv_rf /= (r + 1);
    }
    return sum;
}

ProfileSweep sweep_blowup(const EnsembleParams& p, const BlowupFrame& frame,
                          double extent, int resolution) {
    p.validate();
    if (!(extent > 0.0)) throw std::domain_error("sweep_blowup: extent must be positive");
    if (resolution < 1 || resolution > 4096)
        throw std::domain_error("sweep_blowup: resolution out of range");
    BerezinEvaluator eval(p, frame.center);
    const double sqrt_m = std::sqrt(p.m);
    const double cell = 2.0 * extent / resolution;

    ProfileSweep sweep;
    sweep.samples.resize(static_cast<size_t>(resolution) * resolution);
    par::parallel_for(resolution, [&](size_t row) {
        const double xi_im = -extent + (row + 0.5) * cell;
        for (int col = 0; col < resolution; ++col) {
            const double xi_re = -extent + (col + 0.5) * cell;
            const cplx xi(xi_re, xi_im);
            ProfileSample s;
            s.xi = xi;
            s.density = eval.density(frame.center + xi / sqrt_m) / p.m;
            s.limit_density = limit_profile(p, frame, xi);
            s.gap = std::abs(s.density - s.limit_density);
            sweep.samples[row * resolution + col] = s;
        }
    });

    const double cell_area = cell * cell / kPi;  // dA = dx dy / pi
    for (const ProfileSample& s : sweep.samples) {
        if (std::abs(s.xi) > extent) continue;
        sweep.l1_gap += s.gap * cell_area;
        sweep.sup_gap = std::max(sweep.sup_gap, s.gap);
    }
    return sweep;
}

double blowup_l1_gap(const EnsembleParams& p, const BlowupFrame& frame,
                     double radius) {
    p.validate();
    BerezinEvaluator eval(p, frame.center);
    const double sqrt_m = std::sqrt(p.m);
    const int panels = std::max(24, static_cast<int>(std::ceil(8 * radius)));
    auto grid = quad::make_polar_grid(0.0, radius, panels, 12, 128);
    std::vector<double> ring(grid.radii.size());
    par::parallel_for(grid.radii.size(), [&](size_t j) {
        double sum = 0.0;
        for (int k = 0; k < grid.angular_nodes; ++k) {
            const double theta = 2.0 * kPi * k / grid.angular_nodes;
            const cplx xi = std::polar(grid.radii[j], theta);
            const double density =
                eval.density(frame.center + xi / sqrt_m) / p.m;
            sum += std::abs(density - limit_profile(p, frame, xi));
        }
        ring[j] = grid.radial_weights[j] * sum;
    });
    double total = 0.0;
    for (double v : ring) total += v;
    return 2.0 * total / grid.angular_nodes;
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileSample>& samples) {
    os << "xi_re,xi_im,density,limit_density,gap\n";
    char line[256];
    for (const ProfileSample& s : samples) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      s.xi.real(), s.xi.imag(), s.density, s.limit_density, s.gap);
        os << line;
    }
}

}  // namespace polyg::berezin
