#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace polyg::quad {

// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int order);

// Composite Gauss-Legendre over [a, b].
template <typename F>
double integrate(F&& f, double a, double b, int panels, int order) {
    const GaussLegendre& gl = gauss_legendre(order);
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        double s = 0.0;
        for (size_t j = 0; j < gl.nodes.size(); ++j)
            s += gl.weights[j] * f(mid + 0.5 * h * gl.nodes[j]);
        total += 0.5 * h * s;
    }
    return total;
}

// Composite Gauss-Legendre of a complex-valued function along the straight
// segment from a to b in the complex plane.
template <typename F>
std::complex<double> integrate_segment(F&& f, std::complex<double> a,
                                       std::complex<double> b, int panels,
                                       int order) {
    const GaussLegendre& gl = gauss_legendre(order);
    const std::complex<double> h = (b - a) / static_cast<double>(panels);
    std::complex<double> total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const std::complex<double> lo = a + static_cast<double>(p) * h;
        const std::complex<double> mid = lo + 0.5 * h;
        std::complex<double> s = 0.0;
        for (size_t j = 0; j < gl.nodes.size(); ++j)
            s += gl.weights[j] * f(mid + 0.5 * h * gl.nodes[j]);
        total += 0.5 * h * s;
    }
    return total;
}

// Tensor polar grid covering the disk (or annulus) r in [r0, r1] with
// composite Gauss-Legendre radial nodes and a uniform angular grid. The
// uniform angular rule is exact for trigonometric polynomials of degree
// < angular_nodes, which is what kernel products produce.
struct PolarGrid {
    std::vector<double> radii;
    std::vector<double> radial_weights;  // includes the radius factor r
    int angular_nodes = 0;

    // integral over the annulus of f against dA = dx dy / pi:
    //   (2 / angular_nodes) * sum_j w_j * sum_k f(r_j e^{i theta_k})
    template <typename F>
    double integrate(F&& f) const {
        double total = 0.0;
        for (size_t j = 0; j < radii.size(); ++j) {
            double ring = 0.0;
            for (int k = 0; k < angular_nodes; ++k) {
                const double theta = 2.0 * 3.14159265358979323846 * k / angular_nodes;
                ring += f(std::polar(radii[j], theta));
            }
            total += radial_weights[j] * ring;
        }
        return 2.0 * total / angular_nodes;
    }
};

PolarGrid make_polar_grid(double r0, double r1, int radial_panels,
                          int radial_order, int angular_nodes);

}  // namespace polyg::quad
