#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mnl/littlewood_paley.hpp"
#include "mnl/mixed_norm.hpp"
#include "mnl/space_norms.hpp"

#include <json.hpp>

namespace mnl {

// --- deterministic per-trial RNG -------------------------------------------

/// splitmix64 stream keyed by (seed, trial); identical output regardless of
/// standard library or scheduling, so parallel and serial runs agree.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial);
    std::uint64_t next_u64();
    double uniform();      // [0, 1)
    double normal();       // standard normal, Box-Muller
    cplx complex_normal(); // (normal + i normal) / sqrt(2)

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// --- ensembles -------------------------------------------------------------

enum class EnsembleKind { random_rect, dirichlet, gaussian_bump, lp_bands };

/// Deterministic seeded field ensemble. `rect` is the per-axis physical
/// spectral half-side; for lp_bands `band_jmax` selects the decomposition
/// depth and `aniso` the distance function.
struct EnsembleSpec {
    GridSpec grid;
    EnsembleKind kind = EnsembleKind::random_rect;
    std::vector<double> rect;
    double sigma = 0.0;     // gaussian_bump width in index units; 0 = auto
    Anisotropy aniso;       // lp_bands only; empty = isotropic
    int band_jmax = 0;      // lp_bands only
    int count = 1;
    std::uint64_t seed = 0;
};

/// One ensemble member; streams are derived from (seed, trial).
SampledField generate_trial(const EnsembleSpec& spec, int trial);

/// For scalar kinds: `count` independent fields. For lp_bands: the
/// Littlewood-Paley bands of the trial-0 random field.
std::vector<SampledField> generate(const EnsembleSpec& spec);

/// Band sequence of the given trial's random field (lp_bands machinery).
std::vector<SampledField> generate_band_sequence(const EnsembleSpec& spec,
                                                 int trial);

// --- ratio trials ----------------------------------------------------------

struct RatioTrial {
    int trial = 0;
    double lhs = 0.0;
    double rhs_scale = 1.0;
    double rhs_norm = 0.0;
    double ratio = 0.0;  // lhs / (rhs_scale * rhs_norm)
    bool skipped = false;
    double R = std::numeric_limits<double>::quiet_NaN();  // sweep rows only
};

/// Unmixed Nikol'skij-Plancherel-Polya ratio for spectrum in the Euclidean
/// ball of radius R: lhs = ||f||_r, rhs = R^{n/p - n/r} ||f||_p.
RatioTrial npp_ratio(const SampledField& f, double p, double r, double R);

/// Rectangle version: rhs_scale = prod_k R_k^{1/p_k - 1/r_k}.
RatioTrial mixed_npp_ratio(const SampledField& f, const MixedExponents& p,
                           const MixedExponents& r, std::span<const double> R);

/// Sequence version under the geometric rectangle condition:
/// lhs = ||(sum_j |f_j|^q)^{1/q}||_{L_r},
/// rhs = ||sup_j prod_k R_k^{j(1/p_k - 1/r_k)} |f_j| ||_{L_p}.
RatioTrial seq_npp_ratio(std::span<const SampledField> fs,
                         const MixedExponents& p, const MixedExponents& r,
                         std::span<const double> Rbase, double A, double q);

/// Sobolev embedding ratio under the balance
/// s - sum a_k/p_k = t - sum a_k/r_k (to 1e-12), r_k >= p_k, s > t.
/// F-variant: lhs = F^{t,a}_{r,q}, rhs = F^{s,a}_{p,inf};
/// B-variant: lhs = B^{t,a}_{r,q}, rhs = B^{s,a}_{p,q}.
RatioTrial sobolev_ratio(const SampledField& u, const LPFamily& family,
                         double s, double t, const MixedExponents& p,
                         const MixedExponents& r, double q,
                         SpaceFamily target = SpaceFamily::triebel);

// --- reports ---------------------------------------------------------------

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS residual of the least-squares fit
};

struct SweepPoint {
    double R = 0.0;
    double c_emp = 0.0;
};

struct VerificationReport {
    nlohmann::json config;
    std::vector<RatioTrial> trials;
    std::vector<SweepPoint> sweep;  // scaling sweeps only
    double c_emp = 0.0;
    std::optional<ScalingFit> fit;
    std::optional<double> predicted_slope;
    double slope_tol = 0.15;
    int skipped = 0;
    bool pass = false;
    std::vector<std::string> notes;

    nlohmann::json to_json(bool with_timestamp = true) const;
    void write_csv(std::ostream& os) const;
};

/// Scaling sweep of c_emp(R) = max_trials ||f||_r / ||f||_p (no scale
/// division) over a geometric R list; the fitted log2-log2 slope is
/// compared against n/p - n/r. Needs at least 3 R values.
struct SweepConfig {
    GridSpec grid;
    std::vector<EnsembleKind> kinds = {EnsembleKind::dirichlet,
                                       EnsembleKind::gaussian_bump,
                                       EnsembleKind::random_rect};
    double p = 1.0;
    double r = kInf;
    std::vector<double> R_list;
    int trials = 8;  // per random kind and R
    std::uint64_t seed = 0;
    double slope_tol = 0.15;
};

VerificationReport scaling_sweep(const SweepConfig& config);

/// Aggregate helper: max ratio over non-skipped trials.
double empirical_constant(std::span<const RatioTrial> trials);

/// Least-squares line through (x_i, y_i).
ScalingFit fit_line(std::span<const double> x, std::span<const double> y);

/// Trial parallelism helper; thread count from MNL_THREADS (default 1).
/// Results depend only on the trial index, never on scheduling.
void parallel_for_trials(int count, const std::function<void(int)>& body);

/// Atomically write `text` to `path` (temp file + rename).
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& text);

}  // namespace mnl
