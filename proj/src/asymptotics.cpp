#include "polyg/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "polyg/berezin.hpp"
#include "polyg/parallel.hpp"
#include "polyg/quadrature.hpp"
#include "polyg/specfun.hpp"

namespace polyg::asymptotics {

namespace {

namespace sf = polyg::specfun;

constexpr double kPi = 3.14159265358979323846;

// shared polar machinery: angular-first integral of w^{-l} berd(w) over
// radii [r0, r1]
cplx berezin_angular_first(const berezin::BerezinEvaluator& eval, int l,
                           double r0, double r1, int angular_nodes) {
    const int panels =
        std::max(16, static_cast<int>(std::ceil((r1 - r0) *
                                                std::sqrt(eval.params().m))));
    auto grid = quad::make_polar_grid(r0, r1, panels, 12, angular_nodes);
    std::vector<cplx> ring(grid.radii.size());
    par::parallel_for(grid.radii.size(), [&](size_t j) {
        const double r = grid.radii[j];
        cplx sum = 0.0;
        for (int k = 0; k < grid.angular_nodes; ++k) {
            const double theta = 2.0 * kPi * k / grid.angular_nodes;
            const double berd = eval.density(std::polar(r, theta));
            sum += berd * std::polar(1.0, -l * theta);
        }
        // w^{-l} = r^{-l} e^{-il theta}; the angular sum vanishes to order
        // r^{l} at small radii, so the product stays finite
        ring[j] = grid.radial_weights[j] * sum * std::pow(r, static_cast<double>(-l));
    });
    cplx total = 0.0;
    for (const cplx& v : ring) total += v;
    return 2.0 * total / static_cast<double>(grid.angular_nodes);
}

double tail_radius(const EnsembleParams& p) {
    return std::sqrt((4.0 * (p.n + p.q) + 36.0) / p.m);
}

}  // namespace

std::string reports_to_json(std::span<const VerificationReport> reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const VerificationReport& r : reports) {
        nlohmann::json item{{"law", r.law},
                            {"grid", r.grid},
                            {"observed_error", r.observed_error},
                            {"tolerance", r.tolerance},
                            {"passed", r.passed}};
        if (r.rate_estimate)
            item["rate_estimate"] = *r.rate_estimate;
        else
            item["rate_estimate"] = nullptr;
        arr.push_back(std::move(item));
    }
    return arr.dump(2);
}

cplx szego_residual(int k, int l, cplx zeta) {
    if (k < 1 || l < 1 || k > 10000 || l > 10000)
        throw std::domain_error("szego_residual: indices out of range");
    const cplx zp = (static_cast<double>(l) / k) * zeta;  // reduce E_k(l zeta) to E_k(k zeta')
    const double mod = std::abs(zp);
    if (std::abs(mod - 1.0) < 1e-12)
        throw std::domain_error("szego_residual: |zeta| = 1 excluded");
    if (std::abs(zp * std::exp(1.0 - zp)) >= 1.0 - 1e-12)
        throw std::domain_error("szego_residual: |zeta e^{1-zeta}| >= 1 excluded");

    const cplx x = static_cast<double>(k) * zp;
    const cplx log_pref = 0.5 * std::log(2.0 * kPi * k) -
                          static_cast<double>(k) * (std::log(zp) + 1.0 - zp);
    if (mod < 1.0) {
        // 1 - E_k e^{-k zeta'} = (2 pi k)^{-1/2} (zeta' e^{1-zeta'})^k
        //                        zeta'/(1-zeta') (1 + eps)
        const cplx log_deficit = sf::log_exp_partial_deficit(k, x);
        const cplx one_plus_eps =
            std::exp(log_deficit + log_pref) * (1.0 - zp) / zp;
        return one_plus_eps - 1.0;
    }
    // E_k e^{-k zeta'} = (2 pi k)^{-1/2} (zeta' e^{1-zeta'})^k
    //                    zeta'/(zeta'-1) (1 + eps)
    const cplx log_value = sf::log_exp_partial_scaled(k, x);
    const cplx one_plus_eps = std::exp(log_value + log_pref) * (zp - 1.0) / zp;
    return one_plus_eps - 1.0;
}

double kernel_gap(const EnsembleParams& p, cplx z, cplx w) {
    if (std::abs(z * w) >= 1.0)
        throw std::domain_error("kernel_gap: needs |zw| < 1");
    return std::abs(kernel::corr_kernel_poly(p, z, w) -
                    kernel::corr_kernel_fock(p.m, p.q, z, w));
}

QuadResult exterior_mass_outside(const EnsembleParams& p, cplx z, double rho) {
    p.validate();
    if (std::abs(z) <= 1.0)
        throw std::domain_error("exterior_mass_outside: center must be exterior");
    if (rho <= 1.0) throw std::domain_error("exterior_mass_outside: rho must exceed 1");
    berezin::BerezinEvaluator eval(p, z);
    QuadResult result;
    const double r1 = std::max(rho * 1.05, tail_radius(p));
    result.accuracy_warning = r1 < 2.0 * std::sqrt((p.n + p.q) / p.m);
    const int angular = 2 * (p.n + p.q) + 1;
    result.value = berezin_angular_first(eval, 0, rho, r1, angular).real();
    return result;
}

cplx exterior_moment(const EnsembleParams& p, cplx z, int l, int angular_nodes) {
    p.validate();
    if (std::abs(z) <= 1.0)
        throw std::domain_error("exterior_moment: center must be exterior");
    if (l < 0) throw std::domain_error("exterior_moment: l must be >= 0");
    berezin::BerezinEvaluator eval(p, z);
    if (angular_nodes <= 0) angular_nodes = 2 * (p.n + p.q + l) + 1;
    return berezin_angular_first(eval, l, 0.0, tail_radius(p), angular_nodes);
}

cplx exterior_moment(const EnsembleParams& p, cplx z, int l) {
    return exterior_moment(p, z, l, 0);
}

cplx harmonic_moment(cplx z, int l) {
    if (std::abs(z) <= 1.0)
        throw std::domain_error("harmonic_moment: z must be exterior");
    if (l < 0) throw std::domain_error("harmonic_moment: l must be >= 0");
    const double pref = std::norm(z) - 1.0;
    cplx prev = 0.0;
    for (int nodes = 256; nodes <= (1 << 20); nodes *= 2) {
        cplx sum = 0.0;
        for (int j = 0; j < nodes; ++j) {
            const double theta = 2.0 * kPi * j / nodes;
            const cplx w = std::polar(1.0, theta);
            sum += std::polar(1.0, -l * theta) * (pref / std::norm(z - w));
        }
        sum /= static_cast<double>(nodes);
        if (nodes > 256 && std::abs(sum - prev) < 1e-13) return sum;
        prev = sum;
    }
    return prev;
}

double boundary_kernel_gap(const EnsembleParams& p, cplx xi, cplx eta) {
    p.validate();
    if (std::abs(xi) > 4.0 || std::abs(eta) > 4.0)
        throw std::domain_error("boundary_kernel_gap: |xi|, |eta| <= 4 required");
    const double sqrt_m = std::sqrt(p.m);
    const cplx z = 1.0 + xi / sqrt_m;
    const cplx w = 1.0 + eta / sqrt_m;
    const cplx zhe = kernel::corr_kernel_poly(p, z, w);
    // residual exponent of e^{-m - sqrt(m)(xi+conj eta)} e^{+m(|z|^2+|w|^2)/2}:
    // real part (|xi|^2+|eta|^2)/2, imaginary part sqrt(m)(Im eta - Im xi)
    const double log_scale = 0.5 * (std::norm(xi) + std::norm(eta));
    const double phase = sqrt_m * (eta.imag() - xi.imag());
    const cplx rescaled =
        zhe / p.m * std::exp(log_scale) * std::polar(1.0, phase);
    return std::abs(rescaled - berezin::boundary_kernel_limit(p.q, xi, eta));
}

double fit_decay_exponent(std::span<const double> ms, std::span<const double> gaps) {
    if (ms.size() != gaps.size() || ms.size() < 2)
        throw std::domain_error("fit_decay_exponent: need matching arrays, size >= 2");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (size_t i = 0; i < ms.size(); ++i) {
        if (!(gaps[i] > 0.0) || !(ms[i] > 0.0)) continue;
        const double x = std::log(ms[i]);
        const double y = std::log(gaps[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw std::domain_error("fit_decay_exponent: too few usable points");
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    return -slope;
}

}  // namespace polyg::asymptotics
