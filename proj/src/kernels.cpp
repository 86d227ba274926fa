#include "lcmq/kernels.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lcmq {

double kernel_value(const KernelSpec& spec, double r) {
    const double q = r / spec.shape;
    const double mq = std::sqrt(1.0 + q * q);
    if (spec.family == Family::MQ) return mq;
    return mq + r * r * r * r * r;
}

double kernel_laplacian(const KernelSpec& spec, double r, int d) {
    if (d != 1 && d != 2) throw std::invalid_argument("kernel laplacian: d must be 1 or 2");

    // phi = sqrt(1 + (r/c)^2): phi'' = 1 / (c^2 phi^3) and the radial term
    // (d-1) phi' / r reduces to (d-1) / (c^2 phi), so the sum is finite for
    // every r and equals d / c^2 at r = 0.
    const double c2 = spec.shape * spec.shape;
    const double q = r / spec.shape;
    const double phi = std::sqrt(1.0 + q * q);
    double lap = 1.0 / (c2 * phi * phi * phi) + (d - 1) / (c2 * phi);

    // Laplacian of r^5 in d dimensions: 5 (d + 3) r^3.
    if (spec.family == Family::CMQ) lap += 5.0 * (d + 3) * r * r * r;
    return lap;
}

double apply_operator(const KernelSpec& spec, OperatorTag op, double r, int d) {
    return op == OperatorTag::Identity ? kernel_value(spec, r)
                                       : kernel_laplacian(spec, r, d);
}

double kernel_check(int samples, unsigned long long seed, bool corrupt,
                    std::optional<Family> only_family) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> r_draw(1e-3, 3.0);
    std::uniform_real_distribution<double> c_draw(0.1, 5.0);
    std::uniform_int_distribution<int> coin(0, 1);

    const double h = 1e-4;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Family drawn = coin(rng) ? Family::CMQ : Family::MQ;
        const KernelSpec spec{only_family.value_or(drawn), c_draw(rng)};
        const double r = r_draw(rng);
        const int d = 1 + coin(rng);

        // Central differences of x -> phi(|x - y|) with y at the origin and
        // x = (r, 0): the 1D second derivative or the 2D five-point stencil.
        const double f0 = kernel_value(spec, r);
        double fd = (kernel_value(spec, r + h) - 2.0 * f0 + kernel_value(spec, std::abs(r - h))) /
                    (h * h);
        if (d == 2) {
            const double r_side = std::sqrt(r * r + h * h);
            fd += (2.0 * kernel_value(spec, r_side) - 2.0 * f0) / (h * h);
        }

        double analytic = kernel_laplacian(spec, r, d);
        if (corrupt) analytic *= 1.0 + 1e-3;

        const double rel = std::abs(analytic - fd) / (1.0 + std::abs(analytic));
        worst = std::max(worst, rel);
    }
    return worst;
}

}  // namespace lcmq
