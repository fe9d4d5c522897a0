#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "polyg/kernel.hpp"

// Berezin densities, their m^{-1/2} blow-ups at interior and boundary
// centers, the limiting profiles (Laguerre-Gauss bulk, Hermite boundary,
// Bessel large-q), and the 1-point intensity with its semicircle
// approximation.

namespace polyg::berezin {

using cplx = std::complex<double>;
using kernel::EnsembleParams;

// Thrown when the kernel diagonal at the requested center vanishes.
struct DegenerateCenterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rescaling frame xi = m^{1/2} (z - center); the exponent 1/2 is the
// characteristic scale at interior and boundary points alike.
struct BlowupFrame {
    static constexpr double scale_exponent = 0.5;

    cplx center = 0.0;
    double boundary_tolerance = 1e-9;

    enum class Region { interior, boundary, exterior };
    Region classify() const {
        const double r = std::abs(center);
        if (r < 1.0 - boundary_tolerance) return Region::interior;
        if (r > 1.0 + boundary_tolerance) return Region::exterior;
        return Region::boundary;
    }
};

struct ProfileSample {
    cplx xi;
    double density = 0.0;
    double limit_density = 0.0;
    double gap = 0.0;
};

// Berezin density |Zhe(z,w)|^2 / Zhe(z,z); a probability density in w
// against dA = dx dy / pi. Evaluating at w == z takes the dedicated real
// diagonal path.
double berezin_density(const EnsembleParams& p, cplx z, cplx w);

// m^{-1} berd(center + m^{-1/2} xi)
double blowup_density(const EnsembleParams& p, const BlowupFrame& frame, cplx xi);

// bulk limit q^{-1} L^1_{q-1}(|xi|^2)^2 e^{-|xi|^2}
double interior_profile(int q, cplx xi);

// large-q rescaled bulk limit J_1(2|xi'|)^2 / |xi'|^2
double bessel_profile(cplx xi_prime);

// boundary kernel limit: sum over levels r < q of the poly-Bargmann
// reproducing kernels (the blow-up limit of the rescaled kernel at 1)
cplx boundary_kernel_limit(int q, cplx xi, cplx eta);

// boundary blow-up Berezin limit (2/q) e^{-|xi|^2} |boundary_kernel_limit(q, xi, 0)|^2.
// The Gaussian factor is forced by the rescaling identity that connects
// the blow-up kernel to the density; without it the expression is not
// even integrable.
double boundary_profile(int q, cplx xi);

// Zhe(z, z)/m at z = 1 + m^{-1/2} xi
double one_point_intensity_blowup(const EnsembleParams& p, cplx xi);

// its m -> infinity limit: sum_{r<q} (r! sqrt(2 pi))^{-1}
// int_{-inf}^{-2s} H_r^2 e^{-t^2/2} dt, evaluated by a stable
// integration-by-parts recurrence (usable up to q = 64)
double boundary_intensity_limit(int q, double re_xi);

// semicircle approximation (2q/pi) int_{-1}^{-q^{-1/2} s} sqrt(1-tau^2) dtau,
// clamped to [0, q]
double semicircle_intensity(int q, double s);

// sum_{r<q} H_r(x) H_r(y) / r!
double christoffel_darboux_sum(int q, double x, double y);

// Fixed-center density evaluator; pure and reentrant.
class BerezinEvaluator {
  public:
    BerezinEvaluator(const EnsembleParams& p, cplx center);
    double density(cplx w) const;
    double center_diag() const { return center_diag_; }
    const EnsembleParams& params() const { return eval_.params(); }

  private:
    kernel::KernelEvaluator eval_;
    cplx center_;
    std::vector<cplx> center_features_;
    double center_diag_;
};

// Square-grid sweep of the blow-up density against the classified limit
// profile: resolution^2 samples of xi over [-extent, extent]^2 (cell
// centers), plus the L1 and sup gaps over the inscribed disk |xi| <=
// extent computed from the same cells. Exterior centers carry a zero
// limit profile. Parallel across rows with a deterministic assembly.
struct ProfileSweep {
    std::vector<ProfileSample> samples;  // row-major over the grid
    double l1_gap = 0.0;
    double sup_gap = 0.0;
};

ProfileSweep sweep_blowup(const EnsembleParams& p, const BlowupFrame& frame,
                          double extent, int resolution);

// L1 distance over the disk |xi| <= radius between the blow-up density and
// the classified limit profile, by polar quadrature (independent of the
// square sweep grid).
double blowup_l1_gap(const EnsembleParams& p, const BlowupFrame& frame,
                     double radius);

// CSV serialization: header xi_re,xi_im,density,limit_density,gap with
// 17-significant-digit values.
void write_profile_csv(std::ostream& os, const std::vector<ProfileSample>& samples);

}  // namespace polyg::berezin
