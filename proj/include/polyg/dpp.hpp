#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "polyg/kernel.hpp"

// Exact sampling of the nq-point determinantal process (sequential
// conditional-density scheme for projection kernels), the polyanalytic
// Vandermonde determinant, the joint-intensity determinant, and empirical
// intensity validation.

namespace polyg::dpp {

using cplx = std::complex<double>;
using kernel::EnsembleParams;

struct SamplerStallError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sample of the process: exactly n*q points (projection processes have
// almost-surely fixed cardinality).
struct Configuration {
    std::vector<cplx> points;
    EnsembleParams params;
    std::uint64_t seed = 0;
};

// Inverse-CDF table for the radial law of the proposal density
// Zhe(z,z)/(nq); the diagonal depends on |z| only.
class RadialSampler {
  public:
    explicit RadialSampler(const kernel::KernelEvaluator& eval);

    double sample_radius(double u) const;  // u uniform in [0, 1)
    double normalization_defect() const { return defect_; }
    double max_cell_mass() const { return max_cell_mass_; }
    size_t cell_count() const { return cdf_.size() - 1; }

  private:
    std::vector<double> edges_;  // radii, ascending
    std::vector<double> cdf_;    // cumulative mass at edges, 0 -> 1
    double defect_ = 0.0;
    double max_cell_mass_ = 0.0;
};

// Sampler instance owning the per-parameter tables; sample() is
// deterministic in the seed and instances are independent across workers.
class DppSampler {
  public:
    explicit DppSampler(const EnsembleParams& p);
    Configuration sample(std::uint64_t seed) const;
    const RadialSampler& radial() const { return radial_; }
    const kernel::KernelEvaluator& evaluator() const { return eval_; }

  private:
    EnsembleParams p_;
    kernel::KernelEvaluator eval_;
    RadialSampler radial_;
};

Configuration sample_configuration(const EnsembleParams& p, std::uint64_t seed);

// k-point intensity det[Zhe(z_i, z_j)]; points are canonically ordered
// internally, so the value is exactly permutation invariant.
double joint_intensity(const EnsembleParams& p, std::span<const cplx> points);

// Determinant of the nq x nq matrix of mixed monomials conj(z)^s z^t
// (rows ordered s-major), in log-magnitude/phase form via row-equilibrated
// pivoted LU. A repeated point gives the zero determinant.
kernel::ScaledComplex vandermonde_poly(std::span<const cplx> points, int n, int q);

// log det[Zhe(z_i,z_j)] - (2 log|Delta_q| - m sum |z_i|^2); configuration
// independent (it equals the log normalization constant). Throws on
// singular configurations where both sides degenerate.
double det_identity_ratio(const EnsembleParams& p, std::span<const cplx> points);

struct IntensityBin {
    double r_lo = 0.0;
    double r_hi = 0.0;
    double observed_mean = 0.0;
    double expected_mean = 0.0;
    double z_score = 0.0;
};

// Observed vs expected counts per radial annulus over >= 50 configurations
// with identical parameters; expected means are radial quadratures of the
// 1-point intensity.
std::vector<IntensityBin> empirical_intensity(std::span<const Configuration> configs,
                                              std::span<const double> annuli);

// Artifacts: points CSV (header re,im) and the metadata sidecar JSON.
void write_configuration_csv(std::ostream& os, const Configuration& config);
std::string configuration_metadata_json(const Configuration& config);

}  // namespace polyg::dpp
