#include "mnl/space_norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mnl {

void SpaceParams::validate() const {
    aniso.validate();
    p.validate();
    if (!(q > 0.0)) throw std::invalid_argument("SpaceParams: q must be positive");
    if (!std::isfinite(s))
        throw std::invalid_argument("SpaceParams: s must be finite");
    if (family == SpaceFamily::triebel && !p.all_finite())
        throw std::invalid_argument(
            "SpaceParams: the F-family requires all p_k finite");
}

namespace {

void check_bands(std::span<const SampledField> bands) {
    if (bands.empty())
        throw std::invalid_argument("space norm: empty band list");
    for (const SampledField& b : bands)
        if (!(b.spec() == bands[0].spec()))
            throw std::invalid_argument("space norm: bands on different grids");
}

}  // namespace

double besov_norm(std::span<const SampledField> bands,
                  const SpaceParams& params) {
    params.validate();
    if (params.family != SpaceFamily::besov)
        throw std::invalid_argument("besov_norm: params.family must be besov");
    check_bands(bands);

    if (params.q == kInf) {
        double m = 0.0;
        for (std::size_t j = 0; j < bands.size(); ++j)
            m = std::max(m, std::pow(2.0, params.s * static_cast<double>(j)) *
                                mixed_lp_norm(bands[j], params.p));
        return m;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < bands.size(); ++j) {
        double w = std::pow(2.0, params.s * static_cast<double>(j));
        acc += std::pow(w * mixed_lp_norm(bands[j], params.p), params.q);
    }
    return std::pow(acc, 1.0 / params.q);
}

double triebel_norm(std::span<const SampledField> bands,
                    const SpaceParams& params) {
    params.validate();
    if (params.family != SpaceFamily::triebel)
        throw std::invalid_argument("triebel_norm: params.family must be triebel");
    check_bands(bands);

    const std::size_t total = bands[0].values().size();
    std::vector<double> inner(total, 0.0);
    if (params.q == kInf) {
        for (std::size_t j = 0; j < bands.size(); ++j) {
            double w = std::pow(2.0, params.s * static_cast<double>(j));
            for (std::size_t i = 0; i < total; ++i)
                inner[i] = std::max(inner[i], w * std::abs(bands[j].values()[i]));
        }
    } else {
        for (std::size_t j = 0; j < bands.size(); ++j) {
            double w = std::pow(2.0, params.s * static_cast<double>(j));
            for (std::size_t i = 0; i < total; ++i)
                inner[i] += std::pow(w * std::abs(bands[j].values()[i]), params.q);
        }
        const double invq = 1.0 / params.q;
        for (double& v : inner) v = std::pow(v, invq);
    }
    return mixed_lp_norm_of_abs(bands[0].spec(), std::move(inner), params.p);
}

EmbeddingTriple bfb_embedding_check(std::span<const SampledField> bands,
                                    double s, const Anisotropy& aniso,
                                    const MixedExponents& p, double q) {
    p.validate();
    if (!p.all_finite())
        throw std::invalid_argument("bfb_embedding_check: requires finite p_k");

    const double pmin = *std::min_element(p.p.begin(), p.p.end());
    const double pmax = *std::max_element(p.p.begin(), p.p.end());

    EmbeddingTriple t;
    t.besov_min = besov_norm(bands, {s, aniso, p, pmin, SpaceFamily::besov});
    t.triebel_mid = triebel_norm(bands, {s, aniso, p, q, SpaceFamily::triebel});
    t.besov_max = besov_norm(bands, {s, aniso, p, pmax, SpaceFamily::besov});
    t.ratio_lower = t.besov_min > 0.0 ? t.triebel_mid / t.besov_min : 0.0;
    t.ratio_upper = t.besov_max > 0.0 ? t.triebel_mid / t.besov_max : 0.0;
    return t;
}

}  // namespace mnl
