#pragma once

#include <span>

#include "mnl/anisotropy.hpp"
#include "mnl/mixed_norm.hpp"

namespace mnl {

enum class SpaceFamily { besov, triebel };

/// Parameters of B^{s,a}_{p,q} / F^{s,a}_{p,q}; the F-family requires all
/// p_k finite.
struct SpaceParams {
    double s = 0.0;
    Anisotropy aniso;
    MixedExponents p;
    double q = kInf;
    SpaceFamily family = SpaceFamily::besov;

    void validate() const;
};

/// (sum_j 2^{s j q} ||u_j||_{L_p}^q)^{1/q}, sup over j for q = inf.
double besov_norm(std::span<const SampledField> bands, const SpaceParams& params);

/// || (sum_j 2^{s q j} |u_j(.)|^q)^{1/q} ||_{L_p}; pointwise sup for q = inf.
double triebel_norm(std::span<const SampledField> bands,
                    const SpaceParams& params);

struct EmbeddingTriple {
    double besov_min = 0.0;   // B^{s,a}_{p,min p_k}
    double triebel_mid = 0.0; // F^{s,a}_{p,q}
    double besov_max = 0.0;   // B^{s,a}_{p,max p_k}
    double ratio_lower = 0.0; // triebel_mid / besov_min
    double ratio_upper = 0.0; // besov_max > 0 ? triebel_mid / besov_max : 0
};

/// The chain B_{p,min p} -> F_{p,q} -> B_{p,max p}; the constants from the
/// generalised Minkowski inequality are recorded, not assumed to be 1.
EmbeddingTriple bfb_embedding_check(std::span<const SampledField> bands,
                                    double s, const Anisotropy& aniso,
                                    const MixedExponents& p, double q);

}  // namespace mnl
