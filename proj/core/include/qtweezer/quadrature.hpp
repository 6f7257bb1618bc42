#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qtweezer {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int order);

/// Radial scheme for the tweezer-scale integrals: composite Gauss-Legendre on [0, extent * a_a],
/// panels doubled until every integrand is stable to `rtol` of its absolute integral.
struct QuadratureSpec {
    double rtol = 1e-8;
    double extent = 8.0;        // radial cutoff in tweezer oscillator lengths
    int nodes_per_panel = 16;
    int initial_panels = 2;
    int max_levels = 12;
    int angular_order = 0;      // 0 selects an order from k * r_max
};

struct FamilyIntegral {
    std::vector<double> values;
    std::vector<double> achieved;   // |I_L - I_{L-1}| / int |f| at the accepted level
    std::vector<int> unconverged;   // indices that never met the tolerance
    int levels_used = 0;
};

/// Integrates `count` functions over [a, b] simultaneously. `eval(x, out)` writes all values at x.
/// Each member is frozen at the first refinement level where it converges, so a member's result
/// does not depend on which other members share the call.
FamilyIntegral integrate_family(std::size_t count, double a, double b,
                                const std::function<void(double, std::span<double>)>& eval,
                                const QuadratureSpec& spec);

/// Single-function convenience wrapper around integrate_family.
double integrate(double a, double b, const std::function<double(double)>& f, const QuadratureSpec& spec,
                 double* achieved = nullptr);

/// Neumaier-compensated running sum; order of additions is the caller's responsibility.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + correction_; }

private:
    double sum_ = 0.0;
    double correction_ = 0.0;
};

} // namespace qtweezer
