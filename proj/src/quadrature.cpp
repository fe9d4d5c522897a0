#include "polyg/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace polyg::quad {

namespace {

GaussLegendre compute_gauss_legendre(int n) {
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    // Newton iteration on P_n, symmetric roots.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[i] = w;
        gl.weights[n - 1 - i] = w;
    }
    return gl;
}

std::mutex g_gl_mutex;
std::map<int, GaussLegendre> g_gl_cache;

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
    if (order < 1) throw std::domain_error("gauss_legendre: order must be >= 1");
    std::lock_guard<std::mutex> lock(g_gl_mutex);
    auto it = g_gl_cache.find(order);
    if (it == g_gl_cache.end())
        it = g_gl_cache.emplace(order, compute_gauss_legendre(order)).first;
    return it->second;
}

PolarGrid make_polar_grid(double r0, double r1, int radial_panels,
                          int radial_order, int angular_nodes) {
    if (!(r1 > r0) || r0 < 0.0)
        throw std::domain_error("make_polar_grid: need 0 <= r0 < r1");
    if (radial_panels < 1 || angular_nodes < 1)
        throw std::domain_error("make_polar_grid: bad grid sizes");
    PolarGrid grid;
    grid.angular_nodes = angular_nodes;
    const GaussLegendre& gl = gauss_legendre(radial_order);
    const double h = (r1 - r0) / radial_panels;
    for (int p = 0; p < radial_panels; ++p) {
        const double mid = r0 + (p + 0.5) * h;
        for (size_t j = 0; j < gl.nodes.size(); ++j) {
            const double r = mid + 0.5 * h * gl.nodes[j];
            grid.radii.push_back(r);
            grid.radial_weights.push_back(0.5 * h * gl.weights[j] * r);
        }
    }
    return grid;
}

}  // namespace polyg::quad
