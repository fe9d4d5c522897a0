#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "polyg/kernel.hpp"

// Finite-dimensional operator calculus: the T_r / T_{m,r} operators on
// basis coefficients, the Bargmann transform on Hermite coefficients, the
// poly-Bargmann reproducing kernels, and the pure-level decomposition
// check they induce.

namespace polyg::transforms {

using cplx = std::complex<double>;

enum class BasisTag {
    monomial_analytic,     // coefficients against e_{j,m} = m^{(j+1)/2} z^j / sqrt(j!)
    hermite_line,          // normalized Hermite functions on the real line
    pure_level,            // T_{m,r} images of the monomial basis
    polyanalytic_monomial  // raw conj(z)^s z^t monomials
};

struct CoefficientVector {
    BasisTag tag = BasisTag::monomial_analytic;
    int level = 0;  // meaningful for pure_level
    std::vector<cplx> coefficients;

    double norm() const;
};

// T_{m,r} applied to the j-th orthonormal basis element of the analytic
// space, through the closed forms
//   j >= r:  sqrt(r!/j!) z^{j-r} L^{j-r}_r(|z|^2)
//   j <= r:  (-1)^{r-j} sqrt(j!/r!) conj(z)^{r-j} L^{r-j}_j(|z|^2)
// dilated to weight scale m. The j <= r constant is sometimes misprinted
// as sqrt(n!/r!) with an n that is not in scope; sqrt(j!/r!) is forced by
// the isometry and by consistency of the two branches at j = r.
cplx t_op_basis_image(int r, double m, int j, cplx z);

struct TOpResult {
    CoefficientVector pure_level;          // same coefficients, pure-level tag
    std::function<cplx(cplx)> evaluate;    // pointwise (unweighted) image
};

// Applies T_{m,r} to a monomial-analytic coefficient vector. The induced
// map is diagonal on coefficients and isometric on the weighted space.
TOpResult t_op_apply(int r, double m, const CoefficientVector& input);

// Bargmann transform on finite Hermite expansions: the r-th normalized
// Hermite function maps to z^r/sqrt(r!), so the coefficient sequence is
// carried over unchanged.
CoefficientVector bargmann_apply(const CoefficientVector& input);

// Reproducing kernel of the level-r poly-Bargmann image of L^2(R_-):
//   e^{xi conj(eta)}/(r! sqrt(2 pi)) *
//     int_{-inf}^{-xi-conj(eta)} H_r(t+xi-eta) H_r(t+conj(eta)-conj(xi)) e^{-t^2/2} dt
// evaluated by expanding the Hermite product into monomials in t and
// contracting against the half-line Gaussian moment table. The monomial
// contraction cancels like (2r-1)!!/r!, so levels above 12 switch to an
// integration-by-parts recurrence for the same integral; both routes are
// exact in exact arithmetic and quadrature-free.
cplx poly_bargmann_kernel(int r, cplx xi, cplx eta);

// Compares the pure level-r correlation kernel with the Gram sum of the
// T_{m,r} images of the weighted monomial basis over all pairs of sample
// points; returns the largest absolute residual.
double pure_level_projection_check(const kernel::EnsembleParams& p, int r,
                                   std::span<const cplx> points);

}  // namespace polyg::transforms
