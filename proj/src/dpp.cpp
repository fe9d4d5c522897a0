#include "polyg/dpp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "polyg/quadrature.hpp"
#include "polyg/specfun.hpp"

namespace polyg::dpp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// xoshiro256++ seeded through splitmix64: reproducible across platforms,
// and distinct seeds give statistically independent streams.
struct Rng {
    std::uint64_t s[4];

    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s) {
            x += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            w = z ^ (z >> 31);
        }
    }
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }
    std::uint64_t next() {
        const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }
    double uniform() {  // in [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

// log |det| and phase via row-equilibrated partial-pivot LU.
kernel::ScaledComplex log_det_lu(Eigen::MatrixXcd a) {
    const long n = a.rows();
    double log_mag = 0.0;
    double phase = 0.0;
    for (long r = 0; r < n; ++r) {
        double scale = a.row(r).cwiseAbs().maxCoeff();
        if (scale == 0.0) return {};  // zero row: determinant vanishes
        a.row(r) /= scale;
        log_mag += std::log(scale);
    }
    for (long c = 0; c < n; ++c) {
        long pivot_row = c;
        double best = std::abs(a(c, c));
        for (long r = c + 1; r < n; ++r) {
            if (std::abs(a(r, c)) > best) {
                best = std::abs(a(r, c));
                pivot_row = r;
            }
        }
        if (best == 0.0) return {};
        if (pivot_row != c) {
            a.row(pivot_row).swap(a.row(c));
            phase += kPi;  // row swap flips the sign
        }
        const cplx pivot = a(c, c);
        log_mag += std::log(std::abs(pivot));
        phase += std::arg(pivot);
        for (long r = c + 1; r < n; ++r) {
            const cplx f = a(r, c) / pivot;
            a.row(r).tail(n - c - 1) -= f * a.row(c).tail(n - c - 1);
            a(r, c) = 0.0;
        }
    }
    return kernel::ScaledComplex::from_parts(log_mag, phase);
}

Eigen::MatrixXcd correlation_matrix(const kernel::KernelEvaluator& eval,
                                    std::span<const cplx> points) {
    const long k = static_cast<long>(points.size());
    Eigen::MatrixXcd a(k, k);
    for (long i = 0; i < k; ++i) {
        a(i, i) = eval.diag(points[i]);
        for (long j = i + 1; j < k; ++j) {
            a(i, j) = eval.zhe(points[i], points[j]);
            a(j, i) = std::conj(a(i, j));  // one triangle computed
        }
    }
    return a;
}

}  // namespace

RadialSampler::RadialSampler(const kernel::KernelEvaluator& eval) {
    const EnsembleParams& p = eval.params();
    const double total_mass = static_cast<double>(p.dim());
    const double r_max = std::sqrt((4.0 * (p.n + p.q) + 40.0) / p.m);
    const auto& gl = quad::gauss_legendre(4);

    size_t cells = 4096;
    for (int round = 0; round < 4; ++round) {
        edges_.assign(cells + 1, 0.0);
        cdf_.assign(cells + 1, 0.0);
        max_cell_mass_ = 0.0;
        const double h = r_max / cells;
        double cum = 0.0;
        for (size_t c = 0; c < cells; ++c) {
            const double lo = c * h;
            const double mid = lo + 0.5 * h;
            double mass = 0.0;
            for (size_t j = 0; j < gl.nodes.size(); ++j) {
                const double r = mid + 0.5 * h * gl.nodes[j];
                mass += 0.5 * h * gl.weights[j] * 2.0 * r * eval.diag(r);
            }
            mass /= total_mass;
            max_cell_mass_ = std::max(max_cell_mass_, mass);
            cum += mass;
            edges_[c + 1] = lo + h;
            cdf_[c + 1] = cum;
        }
        if (max_cell_mass_ <= 1e-3) break;
        cells *= 2;
    }
    defect_ = std::abs(1.0 - cdf_.back());
    if (defect_ > 1e-9)
        throw std::runtime_error("RadialSampler: radial mass does not close to 1");
    const double total = cdf_.back();
    for (double& v : cdf_) v /= total;
    cdf_.front() = 0.0;
    cdf_.back() = 1.0;
    max_cell_mass_ /= total;
}

double RadialSampler::sample_radius(double u) const {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    size_t hi = std::min(static_cast<size_t>(it - cdf_.begin()), cdf_.size() - 1);
    if (hi == 0) hi = 1;
    const size_t lo = hi - 1;
    const double span = cdf_[hi] - cdf_[lo];
    const double t = span > 0.0 ? (u - cdf_[lo]) / span : 0.5;
    return edges_[lo] + t * (edges_[hi] - edges_[lo]);
}

DppSampler::DppSampler(const EnsembleParams& p)
    : p_(p), eval_(p), radial_(eval_) {
    if (p_.dim() > 5000)
        throw std::domain_error("DppSampler: n*q above the 5000-point sampling cap");
}

Configuration DppSampler::sample(std::uint64_t seed) const {
    const long n = p_.dim();
    Rng rng(seed);
    Configuration config;
    config.params = p_;
    config.seed = seed;
    config.points.reserve(n);

    Eigen::MatrixXcd used(n, n);  // orthonormal directions, one column per point
    Eigen::VectorXcd phi(n), coef(n), v(n);
    std::vector<cplx> buf(n);

    for (long k = 0; k < n; ++k) {
        long stall = 0;
        while (true) {
            const double r = radial_.sample_radius(rng.uniform());
            const double theta = 2.0 * kPi * rng.uniform();
            const cplx z = std::polar(r, theta);
            eval_.features(z, buf);
            for (long a = 0; a < n; ++a) phi[a] = buf[a];
            const double diag = phi.squaredNorm();
            double proj_sq = 0.0;
            if (k > 0) {
                coef.head(k).noalias() = used.leftCols(k).adjoint() * phi;
                proj_sq = coef.head(k).squaredNorm();
            }
            const double residual = std::max(0.0, diag - proj_sq);
            if (diag > 0.0 && rng.uniform() * diag <= residual) {
                v = phi;
                if (k > 0) {
                    v.noalias() -= used.leftCols(k) * coef.head(k);
                    // second orthogonalization pass
                    coef.head(k).noalias() = used.leftCols(k).adjoint() * v;
                    v.noalias() -= used.leftCols(k) * coef.head(k);
                }
                const double vnorm = v.norm();
                if (vnorm > 0.0) {
                    used.col(k) = v / vnorm;
                    config.points.push_back(z);
                    break;
                }
            }
            if (diag <= 0.0 || residual < 1e-6 * diag) {
                if (++stall >= 1000000)
                    throw SamplerStallError("sampler stalled: acceptance below 1e-6");
            } else {
                stall = 0;
            }
        }
    }
    return config;
}

Configuration sample_configuration(const EnsembleParams& p, std::uint64_t seed) {
    return DppSampler(p).sample(seed);
}

double joint_intensity(const EnsembleParams& p, std::span<const cplx> points) {
    if (points.empty()) throw std::domain_error("joint_intensity: needs k >= 1 points");
    std::vector<cplx> pts(points.begin(), points.end());
    // canonical order makes the determinant exactly permutation invariant
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    kernel::KernelEvaluator eval(p);
    Eigen::MatrixXcd a = correlation_matrix(eval, pts);
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(a).determinant().real();
}

kernel::ScaledComplex vandermonde_poly(std::span<const cplx> points, int n, int q) {
    if (n < 1 || q < 1) throw std::domain_error("vandermonde_poly: bad n or q");
    const long dim = static_cast<long>(n) * q;
    if (static_cast<long>(points.size()) != dim)
        throw std::domain_error("vandermonde_poly: point count must equal n*q");
    Eigen::MatrixXcd a(dim, dim);
    for (int s = 0; s < q; ++s) {
        for (int t = 0; t < n; ++t) {
            const long row = static_cast<long>(s) * n + t;
            for (long col = 0; col < dim; ++col) {
                const cplx z = points[col];
                cplx value = 1.0;
                for (int u = 0; u < s; ++u) value *= std::conj(z);
                for (int u = 0; u < t; ++u) value *= z;
                a(row, col) = value;
            }
        }
    }
    return log_det_lu(std::move(a));
}

double det_identity_ratio(const EnsembleParams& p, std::span<const cplx> points) {
    p.validate();
    if (static_cast<long>(points.size()) != p.dim())
        throw std::domain_error("det_identity_ratio: point count must equal n*q");
    kernel::KernelEvaluator eval(p);
    Eigen::MatrixXcd a = correlation_matrix(eval, points);
    kernel::ScaledComplex det_zhe = log_det_lu(std::move(a));
    kernel::ScaledComplex delta = vandermonde_poly(points, p.n, p.q);
    if (det_zhe.is_zero() || delta.is_zero())
        throw std::domain_error("det_identity_ratio: singular configuration");
    double weight = 0.0;
    for (const cplx& z : points) weight += std::norm(z);
    return det_zhe.log_magnitude - (2.0 * delta.log_magnitude - p.m * weight);
}

std::vector<IntensityBin> empirical_intensity(std::span<const Configuration> configs,
                                              std::span<const double> annuli) {
    if (configs.size() < 50)
        throw std::domain_error("empirical_intensity: needs >= 50 configurations");
    for (size_t i = 1; i < annuli.size(); ++i)
        if (!(annuli[i] > annuli[i - 1]))
            throw std::domain_error("empirical_intensity: bin edges must increase");
    if (annuli.size() < 2)
        throw std::domain_error("empirical_intensity: needs at least one bin");
    const EnsembleParams p = configs.front().params;
    for (const Configuration& c : configs)
        if (c.params.m != p.m || c.params.n != p.n || c.params.q != p.q)
            throw std::domain_error("empirical_intensity: mixed parameters");

    kernel::KernelEvaluator eval(p);
    const size_t bins = annuli.size() - 1;
    std::vector<IntensityBin> out(bins);
    std::vector<std::vector<int>> counts(bins, std::vector<int>(configs.size(), 0));
    for (size_t c = 0; c < configs.size(); ++c) {
        for (const cplx& z : configs[c].points) {
            const double r = std::abs(z);
            auto it = std::upper_bound(annuli.begin(), annuli.end(), r);
            if (it == annuli.begin() || it == annuli.end()) continue;
            counts[it - annuli.begin() - 1][c] += 1;
        }
    }
    for (size_t b = 0; b < bins; ++b) {
        IntensityBin& bin = out[b];
        bin.r_lo = annuli[b];
        bin.r_hi = annuli[b + 1];
        double mean = 0.0;
        for (int v : counts[b]) mean += v;
        mean /= static_cast<double>(configs.size());
        double var = 0.0;
        for (int v : counts[b]) var += (v - mean) * (v - mean);
        var /= std::max<size_t>(1, configs.size() - 1);
        bin.observed_mean = mean;
        const int panels = std::max(8, static_cast<int>(std::ceil(
                                           (bin.r_hi - bin.r_lo) * std::sqrt(p.m))));
        bin.expected_mean = quad::integrate(
            [&](double r) { return 2.0 * r * eval.diag(r); }, bin.r_lo, bin.r_hi,
            panels, 12);
        // Poisson fallback keeps near-empty bins finite when the sample
        // variance degenerates to zero.
        const double var_eff = var > 0.0 ? var : std::max(bin.expected_mean, 1e-12);
        const double se = std::sqrt(var_eff / static_cast<double>(configs.size()));
        bin.z_score = (bin.observed_mean - bin.expected_mean) / se;
    }
    return out;
}

void write_configuration_csv(std::ostream& os, const Configuration& config) {
    os << "re,im\n";
    char line[96];
    for (const cplx& z : config.points) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g\n", z.real(), z.imag());
        os << line;
    }
}

std::string configuration_metadata_json(const Configuration& config) {
    nlohmann::json meta{{"m", config.params.m},
                        {"n", config.params.n},
                        {"q", config.params.q},
                        {"seed", config.seed}};
    return meta.dump(2);
}

}  // namespace polyg::dpp
