#include "mnl/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mnl {

double Anisotropy::max_weight() const {
    return *std::max_element(a.begin(), a.end());
}

bool Anisotropy::is_isotropic() const {
    return std::all_of(a.begin(), a.end(), [](double w) { return w == 1.0; });
}

void Anisotropy::validate() const {
    if (a.empty()) throw std::invalid_argument("Anisotropy: empty weight vector");
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!(a[k] >= 1.0) || !std::isfinite(a[k]))
            throw std::invalid_argument("Anisotropy: weight on axis " +
                                        std::to_string(k + 1) +
                                        " must be >= 1");
}

std::vector<double> aniso_dilate(double t, const Anisotropy& a,
                                 std::span<const double> x) {
    a.validate();
    if (!(t >= 0.0))
        throw std::invalid_argument("aniso_dilate: t must be >= 0");
    if (x.size() != a.ndim())
        throw std::invalid_argument("aniso_dilate: dimension mismatch");
    std::vector<double> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        y[k] = std::pow(t, a.a[k]) * x[k];
    return y;
}

double aniso_distance(std::span<const double> x, const Anisotropy& a) {
    a.validate();
    if (x.size() != a.ndim())
        throw std::invalid_argument("aniso_distance: dimension mismatch");
    double absmax = 0.0;
    for (double v : x) {
        if (!std::isfinite(v))
            throw std::invalid_argument("aniso_distance: non-finite input");
        absmax = std::max(absmax, std::fabs(v));
    }
    // Underflow guard: t^{-2a_j} overflows long before this triggers.
    if (absmax < 1e-300) return 0.0;

    // Sandwich bracket: max |x_k|^{1/a_k} <= |x|_a <= sum |x_k|^{1/a_k}.
    double lo = 0.0, hi = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        double r = std::pow(std::fabs(x[k]), 1.0 / a.a[k]);
        lo = std::max(lo, r);
        hi += r;
    }
    if (hi <= lo) return lo;  // single active axis

    // Safeguarded Newton on u = log t; G(u) = g(e^u) is smooth and monotone.
    double ulo = std::log(lo), uhi = std::log(hi);
    double u = 0.5 * (ulo + uhi);
    for (int it = 0; it < 100; ++it) {
        double t = std::exp(u);
        double g = 0.0, dg = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            double term = x[j] * x[j] * std::pow(t, -2.0 * a.a[j]);
            g += term;
            dg -= 2.0 * a.a[j] * term;
        }
        g -= 1.0;
        if (g > 0.0) ulo = u; else uhi = u;
        double step = (dg != 0.0) ? -g / dg : 0.0;
        double unew = u + step;
        if (!(unew > ulo && unew < uhi)) unew = 0.5 * (ulo + uhi);
        if (std::fabs(unew - u) < 1e-15 * (1.0 + std::fabs(u))) {
            u = unew;
            break;
        }
        u = unew;
    }
    return std::exp(u);
}

double supporting_function_rect(std::span<const double> R,
                                std::span<const double> y) {
    if (R.size() != y.size())
        throw std::invalid_argument("supporting_function_rect: length mismatch");
    double h = 0.0;
    for (std::size_t k = 0; k < R.size(); ++k) {
        if (!(R[k] > 0.0))
            throw std::invalid_argument(
                "supporting_function_rect: nonpositive half-side on axis " +
                std::to_string(k + 1));
        h += R[k] * std::fabs(y[k]);
    }
    return h;
}

}  // namespace mnl
