#include "polyg/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "polyg/quadrature.hpp"
#include "polyg/specfun.hpp"

namespace polyg::kernel {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_phase(double phi) {
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi > kPi) phi -= 2.0 * kPi;
    if (phi <= -kPi) phi += 2.0 * kPi;
    return phi;
}

// Compensated complex accumulator (Kahan on both components).
struct KahanComplex {
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
    void add(double re, double im) {
        double yr = re - cr;
        double tr = sr + yr;
        cr = (tr - sr) - yr;
        sr = tr;
        double yi = im - ci;
        double ti = si + yi;
        ci = (ti - si) - yi;
        si = ti;
    }
    cplx sum() const { return {sr, si}; }
};

struct KahanReal {
    double s = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// phi_a(z) * conj(phi_b(w)) with operand-symmetric products, so that
// swapping (z, w) yields the exact complex conjugate.
inline void conj_product(cplx a, cplx b, double& re, double& im) {
    re = a.real() * b.real() + a.imag() * b.imag();
    im = a.imag() * b.real() - a.real() * b.imag();
}

// Laguerre values L^alpha_r(x) for all alpha < amax, r < q, flattened as
// lag[alpha * q + r]; one three-term recurrence sweep per alpha.
void laguerre_table(int amax, int q, double x, std::vector<double>& lag) {
    lag.resize(static_cast<size_t>(amax) * q);
    for (int alpha = 0; alpha < amax; ++alpha) {
        double* row = lag.data() + static_cast<size_t>(alpha) * q;
        row[0] = 1.0;
        if (q > 1) row[1] = 1.0 + alpha - x;
        for (int r = 1; r + 1 < q; ++r)
            row[r + 1] =
                ((2.0 * r + 1.0 + alpha - x) * row[r] - (r + alpha) * row[r - 1]) /
                (r + 1.0);
    }
}

struct Scratch {
    std::vector<double> lag;
    std::vector<double> logh;
    std::vector<cplx> feat_z;
    std::vector<cplx> feat_w;
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

}  // namespace

void EnsembleParams::validate() const {
    if (!(m > 0.0)) throw std::domain_error("EnsembleParams: m must be positive");
    if (m > 1e6) throw std::domain_error("EnsembleParams: m exceeds 1e6");
    if (n < 1 || q < 1) throw std::domain_error("EnsembleParams: n, q must be >= 1");
    if (q > n) throw std::domain_error("EnsembleParams: requires q <= n");
    if (dim() > 100000) throw std::domain_error("EnsembleParams: n*q exceeds 1e5");
}

ScaledComplex ScaledComplex::from(cplx v) {
    ScaledComplex s;
    if (v == cplx(0.0)) return s;
    s.log_magnitude = std::log(std::abs(v));
    s.phase = std::arg(v);
    return s;
}

ScaledComplex ScaledComplex::from_parts(double log_mag, double phase) {
    ScaledComplex s;
    s.log_magnitude = log_mag;
    s.phase = wrap_phase(phase);
    return s;
}

cplx ScaledComplex::value() const {
    if (is_zero()) return {0.0, 0.0};
    return std::polar(std::exp(log_magnitude), phase);
}

ScaledComplex ScaledComplex::operator*(const ScaledComplex& o) const {
    if (is_zero() || o.is_zero()) return {};
    return from_parts(log_magnitude + o.log_magnitude, phase + o.phase);
}

ScaledComplex ScaledComplex::operator/(const ScaledComplex& o) const {
    if (o.is_zero()) throw std::domain_error("ScaledComplex: division by zero");
    if (is_zero()) return {};
    return from_parts(log_magnitude - o.log_magnitude, phase - o.phase);
}

bool BasisIndex::valid_for(const EnsembleParams& p) const {
    if (family == BasisFamily::analytic) {
        return r_or_k >= 0 && r_or_k <= p.q - 1 && i_or_j >= 0 &&
               i_or_j <= p.n - r_or_k - 1;
    }
    return r_or_k >= 1 && r_or_k <= p.q - 1 && i_or_j >= 0 &&
           i_or_j <= p.q - r_or_k - 1;
}

std::vector<BasisIndex> enumerate_basis(const EnsembleParams& p) {
    p.validate();
    std::vector<BasisIndex> out;
    out.reserve(p.dim());
    for (int r = 0; r < p.q; ++r)
        for (int i = 0; i <= p.n - r - 1; ++i)
            out.push_back({BasisFamily::analytic, i, r});
    for (int k = 1; k < p.q; ++k)
        for (int j = 0; j <= p.q - k - 1; ++j)
            out.push_back({BasisFamily::antianalytic, j, k});
    std::stable_sort(out.begin(), out.end(),
                     [](const BasisIndex& a, const BasisIndex& b) {
                         if (a.total_degree() != b.total_degree())
                             return a.total_degree() < b.total_degree();
                         if (a.family != b.family)
                             return a.family == BasisFamily::analytic;
                         if (a.r_or_k != b.r_or_k) return a.r_or_k < b.r_or_k;
                         return a.i_or_j < b.i_or_j;
                     });
    return out;
}

cplx basis_weighted(const EnsembleParams& p, const BasisIndex& index, cplx z) {
    p.validate();
    if (!index.valid_for(p)) throw std::domain_error("basis_weighted: invalid index");
    namespace sf = polyg::specfun;
    const double x = p.m * std::norm(z);
    const double rho = std::abs(z);
    if (index.family == BasisFamily::analytic) {
        const int i = index.i_or_j, r = index.r_or_k;
        const double lag = sf::laguerre(r, i, x);
        if (rho == 0.0) return i == 0 ? cplx(std::sqrt(p.m) * lag, 0.0) : cplx(0.0);
        const double logmag = 0.5 * (sf::log_factorial(r) - sf::log_factorial(r + i)) +
                              0.5 * (i + 1) * std::log(p.m) + i * std::log(rho) -
                              0.5 * x;
        return std::exp(logmag) * lag * std::polar(1.0, i * std::arg(z));
    }
    const int j = index.i_or_j, k = index.r_or_k;
    if (rho == 0.0) return {0.0, 0.0};
    const double lag = sf::laguerre(j, k, x);
    const double logmag = 0.5 * (sf::log_factorial(j) - sf::log_factorial(j + k)) +
                          0.5 * (k + 1) * std::log(p.m) + k * std::log(rho) - 0.5 * x;
    return std::exp(logmag) * lag * std::polar(1.0, -k * std::arg(z));
}

KernelEvaluator::KernelEvaluator(const EnsembleParams& p) : p_(p) {
    p_.validate();
    namespace sf = polyg::specfun;
    indices_ = enumerate_basis(p_);
    log_fact_.resize(p_.n + p_.q + 1);
    for (size_t i = 0; i < log_fact_.size(); ++i)
        log_fact_[i] = sf::log_factorial(static_cast<int>(i));
    log_norm_.resize(indices_.size());
    for (size_t a = 0; a < indices_.size(); ++a) {
        const BasisIndex& ix = indices_[a];
        if (ix.family == BasisFamily::analytic) {
            // sqrt(r! i! / (r+i)!); the 1/sqrt(i!) of the coherent factor
            // lives in logh so both pieces stay inside the double range
            log_norm_[a] = 0.5 * (log_fact_[ix.r_or_k] + log_fact_[ix.i_or_j] -
                                  log_fact_[ix.r_or_k + ix.i_or_j]);
        } else {
            log_norm_[a] =
                0.5 * (log_fact_[ix.i_or_j] - log_fact_[ix.i_or_j + ix.r_or_k]);
        }
    }
}

void KernelEvaluator::fill_features(cplx z, std::span<cplx> out) const {
    const double x = p_.m * std::norm(z);
    const double rho = std::abs(z);
    const double theta = std::arg(z);
    const double logm = std::log(p_.m);
    const double logrho = rho > 0.0 ? std::log(rho) : 0.0;

    Scratch& s = scratch();
    laguerre_table(p_.n, p_.q, x, s.lag);
    s.logh.resize(p_.n);
    for (int i = 0; i < p_.n; ++i)
        s.logh[i] = 0.5 * (i + 1) * logm + i * logrho - 0.5 * x - 0.5 * log_fact_[i];

    for (size_t a = 0; a < indices_.size(); ++a) {
        const BasisIndex& ix = indices_[a];
        if (ix.family == BasisFamily::analytic) {
            const int i = ix.i_or_j, r = ix.r_or_k;
            if (rho == 0.0) {
                out[a] = (i == 0) ? cplx(std::sqrt(p_.m), 0.0) : cplx(0.0);
                continue;
            }
            // log_norm carries the +log sqrt(i!) cancelling the coherent
            // factor's 1/sqrt(i!), leaving sqrt(r!/(r+i)!) m^{(i+1)/2} rho^i e^{-x/2}
            const double mag = std::exp(s.logh[i] + log_norm_[a]) *
                               s.lag[static_cast<size_t>(i) * p_.q + r];
            out[a] = mag * std::polar(1.0, i * theta);
        } else {
            const int j = ix.i_or_j, k = ix.r_or_k;
            if (rho == 0.0) {
                out[a] = {0.0, 0.0};
                continue;
            }
            const double mag =
                std::exp(log_norm_[a] + 0.5 * (k + 1) * logm + k * logrho - 0.5 * x) *
                s.lag[static_cast<size_t>(k) * p_.q + j];
            out[a] = mag * std::polar(1.0, -k * theta);
        }
    }
}

void KernelEvaluator::features(cplx z, std::span<cplx> out) const {
    if (out.size() != static_cast<size_t>(p_.dim()))
        throw std::domain_error("features: output span has wrong size");
    fill_features(z, out);
}

cplx KernelEvaluator::zhe(cplx z, cplx w) const {
    Scratch& s = scratch();
    s.feat_z.resize(p_.dim());
    fill_features(z, s.feat_z);
    s.feat_w.resize(p_.dim());
    fill_features(w, s.feat_w);
    KahanComplex acc;
    for (size_t a = 0; a < s.feat_z.size(); ++a) {
        double re, im;
        conj_product(s.feat_z[a], s.feat_w[a], re, im);
        acc.add(re, im);
    }
    return acc.sum();
}

double KernelEvaluator::diag(cplx z) const {
    Scratch& s = scratch();
    s.feat_z.resize(p_.dim());
    fill_features(z, s.feat_z);
    KahanReal acc;
    for (const cplx& v : s.feat_z)
        acc.add(v.real() * v.real() + v.imag() * v.imag());
    return acc.s;
}

std::pair<cplx, cplx> KernelEvaluator::zhe_split(cplx z, cplx w) const {
    Scratch& s = scratch();
    s.feat_z.resize(p_.dim());
    fill_features(z, s.feat_z);
    s.feat_w.resize(p_.dim());
    fill_features(w, s.feat_w);
    KahanComplex acc1, acc2;
    for (size_t a = 0; a < s.feat_z.size(); ++a) {
        double re, im;
        conj_product(s.feat_z[a], s.feat_w[a], re, im);
        if (indices_[a].family == BasisFamily::analytic)
            acc1.add(re, im);
        else
            acc2.add(re, im);
    }
    return {acc1.sum(), acc2.sum()};
}

cplx KernelEvaluator::zhe_pure_level(int r, cplx z, cplx w) const {
    if (r < 0 || r >= p_.q)
        throw std::domain_error("zhe_pure_level: level out of range");
    Scratch& s = scratch();
    s.feat_z.resize(p_.dim());
    fill_features(z, s.feat_z);
    s.feat_w.resize(p_.dim());
    fill_features(w, s.feat_w);
    KahanComplex acc;
    for (size_t a = 0; a < s.feat_z.size(); ++a) {
        if (indices_[a].level() != r) continue;
        double re, im;
        conj_product(s.feat_z[a], s.feat_w[a], re, im);
        acc.add(re, im);
    }
    return acc.sum();
}

cplx corr_kernel_poly(const EnsembleParams& p, cplx z, cplx w) {
    return KernelEvaluator(p).zhe(z, w);
}

std::pair<cplx, cplx> corr_kernel_split(const EnsembleParams& p, cplx z, cplx w) {
    return KernelEvaluator(p).zhe_split(z, w);
}

cplx corr_subkernel_pure(const EnsembleParams& p, int r, cplx z, cplx w) {
    return KernelEvaluator(p).zhe_pure_level(r, z, w);
}

cplx corr_kernel_fock(double m, int q, cplx z, cplx w) {
    if (!(m > 0.0) || q < 1) throw std::domain_error("corr_kernel_fock: bad m or q");
    const double d2 = std::norm(z - w);
    const double mag =
        m * polyg::specfun::laguerre(q - 1, 1.0, m * d2) * std::exp(-0.5 * m * d2);
    // e^{m z conj(w)} carries phase m Im(z conj(w))
    const double phase = m * (z.imag() * w.real() - z.real() * w.imag());
    return mag * std::polar(1.0, phase);
}

GramResult gram_matrix(const EnsembleParams& p, QuadratureSpec spec) {
    p.validate();
    const double required_radius = 2.0 * std::sqrt((p.n + p.q) / p.m);
    // default: m R^2 = 4(n+q) + 36, the +36 covers the small-space tail
    if (spec.radius <= 0.0)
        spec.radius = std::sqrt((4.0 * (p.n + p.q) + 36.0) / p.m);
    if (spec.angular_nodes <= 0) spec.angular_nodes = 2 * (p.n + p.q) + 1;
    if (spec.radial_panels <= 0)
        spec.radial_panels =
            std::max(8, static_cast<int>(std::ceil(spec.radius * std::sqrt(p.m))));
    if (spec.radial_order <= 0) spec.radial_order = 24;

    GramResult result;
    result.accuracy_warning = spec.radius < required_radius * (1.0 - 1e-12) ||
                              spec.angular_nodes < 2 * (p.n + p.q) + 1;

    const long d = p.dim();
    result.matrix = Eigen::MatrixXcd::Zero(d, d);
    KernelEvaluator eval(p);
    auto grid = polyg::quad::make_polar_grid(0.0, spec.radius, spec.radial_panels,
                                             spec.radial_order, spec.angular_nodes);
    Eigen::VectorXcd phi(d);
    std::vector<cplx> buf(d);
    for (size_t jr = 0; jr < grid.radii.size(); ++jr) {
        for (int ka = 0; ka < grid.angular_nodes; ++ka) {
            const double theta = 2.0 * kPi * ka / grid.angular_nodes;
            eval.features(std::polar(grid.radii[jr], theta), buf);
            for (long a = 0; a < d; ++a) phi[a] = buf[a];
            result.matrix.noalias() +=
                (2.0 * grid.radial_weights[jr] / grid.angular_nodes) * phi *
                phi.adjoint();
        }
    }
    return result;
}

}  // namespace polyg::kernel
