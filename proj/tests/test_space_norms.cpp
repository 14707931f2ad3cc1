#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mnl/space_norms.hpp"
#include "mnl/verifier.hpp"

using namespace mnl;

namespace {

constexpr double tau = 2.0 * std::numbers::pi;

std::vector<SampledField> random_bands(const GridSpec& spec, int jmax,
                                       std::uint64_t seed, int trial) {
    EnsembleSpec es;
    es.grid = spec;
    es.kind = EnsembleKind::lp_bands;
    es.band_jmax = jmax;
    es.seed = seed;
    return generate_band_sequence(es, trial);
}

std::vector<SampledField> constant_bands(const GridSpec& spec,
                                         const std::vector<cplx>& coeffs) {
    std::vector<SampledField> bands;
    for (const cplx& c : coeffs)
        bands.emplace_back(spec, std::vector<cplx>(spec.size(), c));
    return bands;
}

}  // namespace

TEST_CASE("single active band: both norms collapse to 2^{s j} ||u_j||_p") {
    GridSpec spec{{32, 32}, {tau, tau}};
    auto all = random_bands(spec, 2, 111, 0);
    MixedExponents p{{2.0, 3.0}};
    Anisotropy a = Anisotropy::isotropic(2);
    for (std::size_t j = 0; j < all.size(); ++j) {
        std::vector<SampledField> bands;
        for (std::size_t i = 0; i < all.size(); ++i)
            bands.push_back(i == j ? all[i]
                                   : SampledField(spec, std::vector<cplx>(
                                                            spec.size(), 0.0)));
        double expect = std::pow(2.0, 0.7 * static_cast<double>(j)) *
                        mixed_lp_norm(all[j], p);
        for (double q : {0.5, 1.0, 2.0, kInf}) {
            CHECK(besov_norm(bands, {0.7, a, p, q, SpaceFamily::besov}) ==
                  doctest::Approx(expect).epsilon(1e-12));
            CHECK(triebel_norm(bands, {0.7, a, p, q, SpaceFamily::triebel}) ==
                  doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("constant bands reduce to the weighted sequence norm") {
    GridSpec spec{{8, 8}, {1.0, 1.0}};  // unit measure
    std::vector<cplx> coeffs{1.0, cplx(0.0, 0.5), -0.25, cplx(2.0, -1.0)};
    auto bands = constant_bands(spec, coeffs);
    Anisotropy a = Anisotropy::isotropic(2);
    MixedExponents p{{3.0, 1.5}};
    for (double s : {-1.0, 0.0, 0.8})
        for (double q : {0.5, 1.0, 2.0, kInf}) {
            double seq = weighted_seq_norm(coeffs, {s, q, 2.0});
            CHECK(besov_norm(bands, {s, a, p, q, SpaceFamily::besov}) ==
                  doctest::Approx(seq).epsilon(1e-12));
            CHECK(triebel_norm(bands, {s, a, p, q, SpaceFamily::triebel}) ==
                  doctest::Approx(seq).epsilon(1e-12));
        }
}

TEST_CASE("q = p with uniform exponents: Besov and Triebel norms coincide") {
    GridSpec spec{{32, 32}, {tau, tau}};
    Anisotropy a = Anisotropy::isotropic(2);
    for (int trial = 0; trial < 4; ++trial) {
        auto bands = random_bands(spec, 2, 113, trial);
        for (double p : {1.0, 2.0, 3.5}) {
            MixedExponents pe = MixedExponents::uniform(2, p);
            double b = besov_norm(bands, {0.4, a, pe, p, SpaceFamily::besov});
            double f = triebel_norm(bands, {0.4, a, pe, p, SpaceFamily::triebel});
            CHECK(b == doctest::Approx(f).epsilon(1e-11));
        }
    }
}

TEST_CASE("both norms are nonincreasing in q") {
    GridSpec spec{{32, 32}, {tau, tau}};
    Anisotropy a = Anisotropy::isotropic(2);
    MixedExponents p{{1.5, 4.0}};
    const double qs[] = {0.5, 1.0, 2.0, 8.0, kInf};
    for (int trial = 0; trial < 4; ++trial) {
        auto bands = random_bands(spec, 2, 117, trial);
        double prev_b = kInf, prev_f = kInf;
        for (double q : qs) {
            double b = besov_norm(bands, {0.3, a, p, q, SpaceFamily::besov});
            double f = triebel_norm(bands, {0.3, a, p, q, SpaceFamily::triebel});
            CHECK(b <= prev_b * (1.0 + 1e-12));
            CHECK(f <= prev_f * (1.0 + 1e-12));
            prev_b = b;
            prev_f = f;
        }
    }
}

TEST_CASE("embedding chain B_{p,min p} -> F_{p,q} -> B_{p,max p}") {
    GridSpec spec{{32, 32}, {tau, tau}};
    Anisotropy a = Anisotropy::isotropic(2);
    MixedExponents p{{1.0, 3.0}};
    for (int trial = 0; trial < 6; ++trial) {
        auto bands = random_bands(spec, 2, 119, trial);
        for (double q : {1.0, 2.0, 3.0}) {  // min p <= q <= max p
            auto t = bfb_embedding_check(bands, 0.5, a, p, q);
            CHECK(t.triebel_mid <= t.besov_min * (1.0 + 1e-10));
            CHECK(t.besov_max <= t.triebel_mid * (1.0 + 1e-10));
            CHECK(t.ratio_lower <= 1.0 + 1e-10);
            CHECK(t.ratio_upper >= 1.0 - 1e-10);
        }
    }
}

TEST_CASE("parameter validation") {
    GridSpec spec{{8, 8}, {1.0, 1.0}};
    auto bands = constant_bands(spec, {1.0, 0.5});
    Anisotropy a = Anisotropy::isotropic(2);

    CHECK_THROWS_AS(
        triebel_norm(bands, {0.0, a, MixedExponents{{2.0, kInf}}, 2.0,
                             SpaceFamily::triebel}),
        std::invalid_argument);
    CHECK_NOTHROW(besov_norm(
        bands, {0.0, a, MixedExponents{{2.0, kInf}}, 2.0, SpaceFamily::besov}));
    CHECK_THROWS_AS(
        besov_norm(bands,
                   {0.0, a, MixedExponents{{2.0, 2.0}}, 0.0, SpaceFamily::besov}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        besov_norm(bands,
                   {0.0, a, MixedExponents{{2.0, 2.0}}, 2.0, SpaceFamily::triebel}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        besov_norm({}, {0.0, a, MixedExponents{{2.0, 2.0}}, 2.0,
                        SpaceFamily::besov}),
        std::invalid_argument);

    GridSpec other{{4, 4}, {1.0, 1.0}};
    std::vector<SampledField> mixed{
        SampledField(spec, std::vector<cplx>(spec.size(), 1.0)),
        SampledField(other, std::vector<cplx>(other.size(), 1.0))};
    CHECK_THROWS_AS(
        besov_norm(mixed, {0.0, a, MixedExponents{{2.0, 2.0}}, 2.0,
                           SpaceFamily::besov}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        bfb_embedding_check(bands, 0.0, a, MixedExponents{{2.0, kInf}}, 2.0),
        std::invalid_argument);
}
