#pragma once

#include <optional>

namespace lcmq {

// CMQ is the multiquadric sqrt(1 + (r/c)^2) augmented with an r^5 term that
// keeps the radial profile strictly convex in r^2 near the origin; MQ is the
// plain multiquadric.
enum class Family { CMQ, MQ };

struct KernelSpec {
    Family family = Family::CMQ;
    double shape = 0.8;
};

enum class OperatorTag { Identity, Laplacian };

double kernel_value(const KernelSpec& spec, double r);

// Laplacian of the radial profile in d spatial dimensions. Finite at r = 0,
// where it equals d / c^2 for either family.
double kernel_laplacian(const KernelSpec& spec, double r, int d);

double apply_operator(const KernelSpec& spec, OperatorTag op, double r, int d);

// Compares the analytic Laplacians against central differences over `samples`
// random (family, r, c, d) draws and returns the worst relative discrepancy.
// With corrupt = true the analytic value is deliberately biased so callers
// can confirm the check is capable of failing; only_family restricts the
// draws to one kernel family.
double kernel_check(int samples, unsigned long long seed, bool corrupt = false,
                    std::optional<Family> only_family = std::nullopt);

}  // namespace lcmq
