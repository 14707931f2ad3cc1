#pragma once

#include <span>
#include <vector>

#include "mnl/anisotropy.hpp"
#include "mnl/grid.hpp"

namespace mnl {

/// Smooth radial cutoff: 1 on [0,1], 0 on [2,inf), C^inf bridge
/// h(2-t)/(h(2-t)+h(t-1)) with h(s) = exp(-1/s) for s > 0 in between.
struct CutoffProfile {
    double operator()(double t) const;
};

CutoffProfile make_cutoff();

/// Window stack Phi_0..Phi_jmax evaluated on the integer-frequency lattice:
/// Psi_j(xi) = psi(2^{-j} |xi|_a), Phi_0 = Psi_0, Phi_j = Psi_j - Psi_{j-1}.
struct LPFamily {
    GridSpec grid;
    Anisotropy aniso;
    int jmax = 0;
    std::vector<std::vector<double>> windows;  // (jmax+1) x grid.size()
    std::vector<double> lattice_dist;          // |xi|_a per lattice point
};

/// Rejects jmax for which the top corona does not fit inside the Nyquist
/// box, via the sandwich bound 2^{a_k (jmax+1)} < Nyquist_k per axis.
LPFamily build_family(const GridSpec& spec, const Anisotropy& aniso, int jmax);

/// Band-pass decomposition u_j = F^{-1}(Phi_j u^). Requires every active
/// mode of the input to satisfy |xi|_a <= 2^{jmax-1}, so sum_j u_j = u.
std::vector<SampledField> decompose(const SampledField& field,
                                    const LPFamily& family);

struct SpectralRectangle {
    std::vector<double> radius;  // per-axis physical half-sides R_k
    bool zero_field = false;
};

/// Minimal axis-aligned rectangle containing all modes with
/// |coef| > threshold * max|coef|.
SpectralRectangle spectral_rectangle(const SampledField& field,
                                     double threshold = 1e-12);

/// Geometric rectangle condition: the j-th field's spectral rectangle is
/// contained in [-A R_k^j, A R_k^j] per axis.
bool check_rectangle_condition(std::span<const SampledField> fields,
                               std::span<const double> Rbase, double A);

}  // namespace mnl
