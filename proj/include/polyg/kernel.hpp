#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

// The weighted orthonormal basis of the polyanalytic polynomial space, the
// polynomial correlation kernel, its closed-form full-space counterpart,
// the analytic/antianalytic split and the pure-level sub-kernels.
//
// Everything is exposed in correlation scaling
//   Zhe(z, w) = K(z, w) e^{-m(|z|^2+|w|^2)/2},
// the gauge-invariant observable; the unscaled kernel K overflows already
// for moderate m.

namespace polyg::kernel {

using cplx = std::complex<double>;

// Parameters (m, n, q) of the weighted polynomial space: weight scale m,
// analytic degree bound n (degrees <= n-1), polyanalytic degree q
// (antianalytic degrees <= q-1). The space has dimension n*q.
struct EnsembleParams {
    double m = 1.0;
    int n = 1;
    int q = 1;

    long dim() const { return static_cast<long>(n) * q; }
    void validate() const;  // throws std::domain_error on violation
};

// log-magnitude/phase representation for products whose magnitude leaves
// the double range. Zero is encoded by log_magnitude = -infinity.
struct ScaledComplex {
    double log_magnitude = -std::numeric_limits<double>::infinity();
    double phase = 0.0;  // radians in (-pi, pi]

    static ScaledComplex from(cplx v);
    static ScaledComplex from_parts(double log_mag, double phase);
    bool is_zero() const { return std::isinf(log_magnitude) && log_magnitude < 0; }
    cplx value() const;  // may overflow/underflow by design
    ScaledComplex operator*(const ScaledComplex& o) const;
    ScaledComplex operator/(const ScaledComplex& o) const;
};

enum class BasisFamily { analytic, antianalytic };

// Index of one orthonormal basis element:
//   analytic      (i, r): z^i L^i_r(m|z|^2) side,  0<=i<=n-r-1, 0<=r<=q-1
//   antianalytic  (j, k): conj(z)^k L^k_j side,    0<=j<=q-k-1, 1<=k<=q-1
struct BasisIndex {
    BasisFamily family = BasisFamily::analytic;
    int i_or_j = 0;  // monomial degree (analytic) / Laguerre degree (anti)
    int r_or_k = 0;  // Laguerre degree (analytic) / conjugate power (anti)

    // Landau level the element belongs to: r for the analytic side,
    // j + k for the antianalytic side.
    int level() const {
        return family == BasisFamily::analytic ? r_or_k : i_or_j + r_or_k;
    }
    // total degree in (z, conj z), the summation order key
    int total_degree() const {
        return family == BasisFamily::analytic ? i_or_j + 2 * r_or_k
                                               : r_or_k + 2 * i_or_j;
    }
    bool valid_for(const EnsembleParams& p) const;
};

// All n*q basis indices, sorted by total degree (deterministic order used
// by every compensated summation in this module).
std::vector<BasisIndex> enumerate_basis(const EnsembleParams& p);

// Weighted basis element phi(z) = e(z) e^{-m|z|^2/2}; magnitudes are
// assembled in the log domain so the m^{(i+1)/2} z^i factors never
// overflow.
cplx basis_weighted(const EnsembleParams& p, const BasisIndex& index, cplx z);

// Evaluator caching the per-parameter normalization tables. Pure and
// reentrant: eval/diag may be called concurrently from many threads.
class KernelEvaluator {
  public:
    explicit KernelEvaluator(const EnsembleParams& p);

    const EnsembleParams& params() const { return p_; }
    const std::vector<BasisIndex>& indices() const { return indices_; }

    // feature map: out[a] = phi_a(z) in index order; out.size() == dim
    void features(cplx z, std::span<cplx> out) const;

    // Zhe_{m,n,q}(z, w), compensated summation over the feature products.
    cplx zhe(cplx z, cplx w) const;

    // diagonal Zhe(z, z) >= 0 through a dedicated real path
    double diag(cplx z) const;

    // analytic-side and antianalytic-side blocks; their sum is zhe(z, w)
    std::pair<cplx, cplx> zhe_split(cplx z, cplx w) const;

    // correlation kernel of the pure level-r subspace, 0 <= r <= q-1
    cplx zhe_pure_level(int r, cplx z, cplx w) const;

  private:
    EnsembleParams p_;
    std::vector<BasisIndex> indices_;
    std::vector<double> log_norm_;   // -log sqrt of the norm ratio per index
    std::vector<double> log_fact_;   // log i!, i <= n
    void fill_features(cplx z, std::span<cplx> out) const;
};

// One-shot conveniences (tests, small callers).
cplx corr_kernel_poly(const EnsembleParams& p, cplx z, cplx w);
std::pair<cplx, cplx> corr_kernel_split(const EnsembleParams& p, cplx z, cplx w);
cplx corr_subkernel_pure(const EnsembleParams& p, int r, cplx z, cplx w);

// Full-space kernel in correlation form,
//   Zhe_{m,q}(z,w) = m L^1_{q-1}(m|z-w|^2) e^{-m|z-w|^2/2} e^{i m Im(z conj w)},
// computed from this polar decomposition.
cplx corr_kernel_fock(double m, int q, cplx z, cplx w);

// Numeric Gram matrix of the weighted basis over the plane by tensor polar
// quadrature (Gauss-Legendre radial x uniform angular). Zero fields in the
// spec pick defaults sized from the Laguerre root bound.
struct QuadratureSpec {
    double radius = 0.0;
    int radial_panels = 0;
    int radial_order = 24;
    int angular_nodes = 0;
};

struct GramResult {
    Eigen::MatrixXcd matrix;
    bool accuracy_warning = false;  // quadrature spec below requirements
};

GramResult gram_matrix(const EnsembleParams& p, QuadratureSpec spec = {});

}  // namespace polyg::kernel
