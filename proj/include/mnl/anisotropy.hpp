#pragma once

#include <span>
#include <vector>

namespace mnl {

/// Per-axis dilation weights a_k >= 1; (1,...,1) is the isotropic case.
struct Anisotropy {
    std::vector<double> a;

    static Anisotropy isotropic(std::size_t n) {
        return Anisotropy{std::vector<double>(n, 1.0)};
    }
    std::size_t ndim() const { return a.size(); }
    double max_weight() const;
    bool is_isotropic() const;
    void validate() const;  // throws std::invalid_argument
};

/// (t^{a_1} x_1, ..., t^{a_n} x_n) for t >= 0.
std::vector<double> aniso_dilate(double t, const Anisotropy& a,
                                 std::span<const double> x);

/// The anisotropic distance |x|_a: the unique t > 0 with
/// sum_j x_j^2 t^{-2 a_j} = 1, and 0 for x = 0. Relative accuracy 1e-12.
double aniso_distance(std::span<const double> x, const Anisotropy& a);

/// Supporting function of the rectangle {|xi_k| <= R_k}: sum_k R_k |y_k|.
double supporting_function_rect(std::span<const double> R,
                                std::span<const double> y);

}  // namespace mnl
