#include "mnl/mixed_norm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mnl {

double MixedExponents::min() const {
    double m = kInf;
    for (double v : p) m = std::min(m, v);
    return m;
}

bool MixedExponents::all_finite() const {
    return std::all_of(p.begin(), p.end(),
                       [](double v) { return v < kInf; });
}

void MixedExponents::validate() const {
    if (p.empty())
        throw std::invalid_argument("MixedExponents: empty exponent vector");
    for (std::size_t k = 0; k < p.size(); ++k)
        if (!(p[k] > 0.0))
            throw std::invalid_argument("MixedExponents: exponent on axis " +
                                        std::to_string(k + 1) +
                                        " must be positive");
}

double mixed_lp_norm_of_abs(const GridSpec& spec, std::vector<double> vals,
                            const MixedExponents& p) {
    p.validate();
    if (p.ndim() != spec.ndim())
        throw std::invalid_argument(
            "mixed_lp_norm: exponent count does not match grid dimension");

    // Reduce axis 1 (contiguous) first; after each pass the remaining array
    // is row-major over the surviving axes with the next axis contiguous.
    std::vector<double> cur = std::move(vals);
    for (std::size_t ax = 0; ax < spec.ndim(); ++ax) {
        const std::size_t n = spec.dims[ax];
        const double h = spec.periods[ax] / static_cast<double>(n);
        const std::size_t lines = cur.size() / n;
        std::vector<double> next(lines);
        const double pk = p.p[ax];
        if (pk == kInf) {
            for (std::size_t l = 0; l < lines; ++l) {
                double m = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    m = std::max(m, cur[l * n + j]);
                next[l] = m;
            }
        } else {
            for (std::size_t l = 0; l < lines; ++l) {
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    acc += std::pow(cur[l * n + j], pk);
                next[l] = std::pow(acc * h, 1.0 / pk);
            }
        }
        cur = std::move(next);
    }
    return cur[0];
}

double mixed_lp_norm(const SampledField& field, const MixedExponents& p) {
    std::vector<double> absvals(field.values().size());
    for (std::size_t i = 0; i < absvals.size(); ++i) {
        const cplx& v = field.values()[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("mixed_lp_norm: non-finite value");
        absvals[i] = std::abs(v);
    }
    return mixed_lp_norm_of_abs(field.spec(), std::move(absvals), p);
}

void SeqNormParams::validate() const {
    if (!(base > 1.0))
        throw std::invalid_argument("SeqNormParams: base must be > 1");
    if (!(q > 0.0))
        throw std::invalid_argument("SeqNormParams: q must be positive");
    if (!std::isfinite(s))
        throw std::invalid_argument("SeqNormParams: s must be finite");
}

double weighted_seq_norm(std::span<const cplx> seq, const SeqNormParams& params) {
    params.validate();
    if (seq.empty())
        throw std::invalid_argument("weighted_seq_norm: empty sequence");
    if (params.q == kInf) {
        double m = 0.0;
        for (std::size_t j = 0; j < seq.size(); ++j)
            m = std::max(m, std::pow(params.base, params.s *
                                     static_cast<double>(j)) * std::abs(seq[j]));
        return m;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < seq.size(); ++j) {
        double w = std::pow(params.base, params.s * static_cast<double>(j));
        acc += std::pow(w * std::abs(seq[j]), params.q);
    }
    return std::pow(acc, 1.0 / params.q);
}

InterpolationResult interpolation_ratio(std::span<const cplx> seq, double s0,
                                        double s1, double theta, double q,
                                        double base) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("interpolation_ratio: theta must be in (0,1)");
    if (!(s1 < s0))
        throw std::invalid_argument("interpolation_ratio: requires s1 < s0");

    const double s_mid = theta * s0 + (1.0 - theta) * s1;
    InterpolationResult res;
    res.lhs = weighted_seq_norm(seq, {s_mid, q, base});
    double n0 = weighted_seq_norm(seq, {s0, kInf, base});
    double n1 = weighted_seq_norm(seq, {s1, kInf, base});
    res.rhs = std::pow(n0, theta) * std::pow(n1, 1.0 - theta);
    if (res.rhs == 0.0) {
        if (res.lhs == 0.0) {
            res.ratio = 0.0;
            res.degenerate = true;
        } else {
            res.ratio = kInf;
        }
    } else {
        res.ratio = res.lhs / res.rhs;
    }
    return res;
}

SubadditivityResult power_subadditivity_check(const SampledField& f,
                                              const SampledField& g,
                                              const MixedExponents& p) {
    if (!(f.spec() == g.spec()))
        throw std::invalid_argument("power_subadditivity_check: grid mismatch");
    p.validate();

    SubadditivityResult res;
    res.lambda = std::min(1.0, p.min());
    std::vector<cplx> sum(f.values().size());
    for (std::size_t i = 0; i < sum.size(); ++i)
        sum[i] = f.values()[i] + g.values()[i];
    SampledField fg(f.spec(), std::move(sum));
    res.lhs = std::pow(mixed_lp_norm(fg, p), res.lambda);
    res.rhs = std::pow(mixed_lp_norm(f, p), res.lambda) +
              std::pow(mixed_lp_norm(g, p), res.lambda);
    res.holds = res.lhs <= res.rhs * (1.0 + 1e-10);
    return res;
}

}  // namespace mnl
