#pragma once

#include <limits>
#include <span>
#include <vector>

#include "mnl/grid.hpp"

namespace mnl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Per-axis integrability exponents p_k in (0, inf]; infinity means the
/// essential supremum (grid maximum) on that axis.
struct MixedExponents {
    std::vector<double> p;

    static MixedExponents uniform(std::size_t n, double value) {
        return MixedExponents{std::vector<double>(n, value)};
    }
    std::size_t ndim() const { return p.size(); }
    double min() const;
    bool all_finite() const;
    void validate() const;  // throws std::invalid_argument

    bool operator==(const MixedExponents&) const = default;
};

/// Iterated mixed quasi-norm: p_1-mean in x_1 first (Riemann sum with
/// weight L_k/N_k), then x_2, ..., x_n outermost.
double mixed_lp_norm(const SampledField& field, const MixedExponents& p);

/// Same reduction applied to a raw nonnegative array on the grid.
double mixed_lp_norm_of_abs(const GridSpec& spec, std::vector<double> absvals,
                            const MixedExponents& p);

/// Parameters of the weighted sequence quasi-norm l^s_q.
struct SeqNormParams {
    double s = 0.0;
    double q = kInf;
    double base = 2.0;

    void validate() const;
};

/// (sum_j base^{s j q} |a_j|^q)^{1/q}, or sup_j base^{s j} |a_j| for q = inf.
double weighted_seq_norm(std::span<const cplx> seq, const SeqNormParams& params);

struct InterpolationResult {
    double lhs = 0.0;    // l^{theta s0 + (1-theta) s1}_q norm
    double rhs = 0.0;    // l^{s0}_inf^theta * l^{s1}_inf^{1-theta}
    double ratio = 0.0;  // lhs / rhs; 0 with degenerate flag on 0/0
    bool degenerate = false;
};

InterpolationResult interpolation_ratio(std::span<const cplx> seq, double s0,
                                        double s1, double theta, double q,
                                        double base = 2.0);

struct SubadditivityResult {
    double lambda = 1.0;
    double lhs = 0.0;  // ||f+g||^lambda
    double rhs = 0.0;  // ||f||^lambda + ||g||^lambda
    bool holds = false;
};

/// lambda-power subadditivity of the mixed quasi-norm,
/// lambda = min(1, p_1, ..., p_n).
SubadditivityResult power_subadditivity_check(const SampledField& f,
                                              const SampledField& g,
                                              const MixedExponents& p);

}  // namespace mnl
