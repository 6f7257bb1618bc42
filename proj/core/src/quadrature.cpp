#include "qtweezer/quadrature.hpp"

#include "qtweezer/errors.hpp"
#include "qtweezer/units.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qtweezer {

namespace {

// Returns P_n(x) and P_n'(x).
std::pair<double, double> legendre_with_derivative(int n, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

} // namespace

GaussRule gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(constants::pi * (i + 0.75) / (order + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre_with_derivative(order, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre_with_derivative(order, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

namespace {

struct LevelSums {
    std::vector<double> value;
    std::vector<double> magnitude;
};

LevelSums composite(std::size_t count, double a, double b, int panels, const GaussRule& rule,
                    const std::function<void(double, std::span<double>)>& eval) {
    LevelSums s;
    std::vector<CompensatedSum> value(count), magnitude(count);
    std::vector<double> buf(count);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double x = lo + 0.5 * h * (rule.nodes[q] + 1.0);
            const double w = 0.5 * h * rule.weights[q];
            eval(x, buf);
            for (std::size_t i = 0; i < count; ++i) {
                value[i].add(w * buf[i]);
                magnitude[i].add(w * std::abs(buf[i]));
            }
        }
    }
    s.value.resize(count);
    s.magnitude.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        s.value[i] = value[i].value();
        s.magnitude[i] = magnitude[i].value();
    }
    return s;
}

} // namespace

FamilyIntegral integrate_family(std::size_t count, double a, double b,
                                const std::function<void(double, std::span<double>)>& eval,
                                const QuadratureSpec& spec) {
    if (!(spec.rtol > 0.0)) throw std::invalid_argument("integrate_family: rtol must be positive");
    FamilyIntegral out;
    out.values.assign(count, 0.0);
    out.achieved.assign(count, 0.0);
    std::vector<bool> done(count, false);
    std::size_t remaining = count;

    const GaussRule rule = gauss_legendre(spec.nodes_per_panel);
    int panels = spec.initial_panels;
    LevelSums prev = composite(count, a, b, panels, rule, eval);
    for (int level = 1; level <= spec.max_levels && remaining > 0; ++level) {
        panels *= 2;
        LevelSums cur = composite(count, a, b, panels, rule, eval);
        for (std::size_t i = 0; i < count; ++i) {
            if (done[i]) continue;
            const double scale = cur.magnitude[i];
            const double diff = std::abs(cur.value[i] - prev.value[i]);
            const double rel = scale > 0.0 ? diff / scale : 0.0;
            if (rel <= spec.rtol) {
                out.values[i] = cur.value[i];
                out.achieved[i] = rel;
                done[i] = true;
                --remaining;
            } else {
                out.values[i] = cur.value[i];
                out.achieved[i] = rel;
            }
        }
        out.levels_used = level;
        prev = std::move(cur);
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (!done[i]) out.unconverged.push_back(static_cast<int>(i));
    }
    return out;
}

double integrate(double a, double b, const std::function<double(double)>& f, const QuadratureSpec& spec,
                 double* achieved) {
    auto res = integrate_family(
        1, a, b, [&](double x, std::span<double> out) { out[0] = f(x); }, spec);
    if (!res.unconverged.empty()) {
        throw NumericalError("quadrature", "tolerance " + std::to_string(spec.rtol) + " not reached after " +
                                               std::to_string(spec.max_levels) + " refinements");
    }
    if (achieved) *achieved = res.achieved[0];
    return res.values[0];
}

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        correction_ += (sum_ - t) + x;
    } else {
        correction_ += (x - t) + sum_;
    }
    sum_ = t;
}

} // namespace qtweezer
