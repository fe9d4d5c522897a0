#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyg/kernel.hpp"

// Numerical verification of the limit theorems: Szego partial-sum
// expansions, the kernel-gap decay, exterior-point Berezin behavior (mass
// concentration, principal-value moments, harmonic-measure limit), and the
// boundary blow-up law.

namespace polyg::asymptotics {

using cplx = std::complex<double>;
using kernel::EnsembleParams;

// One verified law: passed holds exactly when observed_error <= tolerance.
struct VerificationReport {
    std::string law;
    std::string grid;
    double observed_error = 0.0;
    double tolerance = 0.0;
    std::optional<double> rate_estimate;
    bool passed = false;

    static VerificationReport make(std::string law, std::string grid,
                                   double observed, double tolerance,
                                   std::optional<double> rate = std::nullopt) {
        VerificationReport r;
        r.law = std::move(law);
        r.grid = std::move(grid);
        r.observed_error = observed;
        r.tolerance = tolerance;
        r.rate_estimate = rate;
        r.passed = observed <= tolerance;
        return r;
    }
};

// JSON array serialization: [{law, grid, observed_error, tolerance,
// rate_estimate, passed}, ...]
std::string reports_to_json(std::span<const VerificationReport> reports);

// Multiplicative residual epsilon of the Szego expansion solved from the
// partial-sum value E_k(l zeta) e^{-l zeta}: the |zeta'| < 1 branch solves
// the interior expansion, |zeta'| > 1 the exterior one, where
// zeta' = (l/k) zeta reduces the two-index form to the classical one.
// Requires |zeta' e^{1-zeta'}| < 1 and |zeta'| != 1.
cplx szego_residual(int k, int l, cplx zeta);

// |Zhe_poly - Zhe_fock| at (z, w); needs |zw| < 1
double kernel_gap(const EnsembleParams& p, cplx z, cplx w);

struct QuadResult {
    double value = 0.0;
    bool accuracy_warning = false;
};

// Berezin mass outside radius rho for an exterior center, by polar
// quadrature out to the Laguerre-tail cutoff.
QuadResult exterior_mass_outside(const EnsembleParams& p, cplx z, double rho);

// pv integral of w^{-l} against the Berezin density, angular-first: the
// uniform angular grid integrates the finitely many angular modes exactly,
// which removes the w = 0 singularity for l >= 1. Converges to z^{-l}.
cplx exterior_moment(const EnsembleParams& p, cplx z, int l);

// optional angular override for the exactness property test (0 = auto)
cplx exterior_moment(const EnsembleParams& p, cplx z, int l, int angular_nodes);

// Harmonic-measure moment of the exterior disk: integral of w^{-l} against
// the Poisson kernel (|z|^2-1)/|z - e^{i theta}|^2 dtheta/(2 pi); equals
// z^{-l} up to quadrature error below 1e-10.
cplx harmonic_moment(cplx z, int l);

// | m^{-1} e^{-m - sqrt(m)(xi + conj eta)} K_{m,n,q}(1 + m^{-1/2} xi,
//   1 + m^{-1/2} eta) - boundary_kernel_limit(q, xi, eta) |
// with the first term assembled from the correlation kernel in the log
// domain (the residual exponent is O(1) plus a pure phase).
double boundary_kernel_gap(const EnsembleParams& p, cplx xi, cplx eta);

// Least-squares decay exponent: minus the slope of log(gap) against
// log(m). Skips nonpositive gaps.
double fit_decay_exponent(std::span<const double> ms, std::span<const double> gaps);

}  // namespace polyg::asymptotics
