#include "mnl/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mnl {

namespace {

double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

double CutoffProfile::operator()(double t) const {
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    const double hi = bump(2.0 - t);
    const double lo = bump(t - 1.0);
    return hi / (hi + lo);
}

CutoffProfile make_cutoff() { return CutoffProfile{}; }

LPFamily build_family(const GridSpec& spec, const Anisotropy& aniso, int jmax) {
    spec.validate();
    aniso.validate();
    if (aniso.ndim() != spec.ndim())
        throw std::invalid_argument("build_family: anisotropy dimension mismatch");
    if (jmax < 0)
        throw std::invalid_argument("build_family: jmax must be >= 0");
    for (std::size_t k = 0; k < spec.ndim(); ++k) {
        // Corona of level jmax reaches |xi_k| up to 2^{a_k (jmax+1)}.
        double reach = std::pow(2.0, aniso.a[k] * (jmax + 1));
        if (!(reach < spec.nyquist(k)))
            throw std::invalid_argument(
                "build_family: jmax " + std::to_string(jmax) +
                " too large for the grid; corona exceeds Nyquist on axis " +
                std::to_string(k + 1));
    }

    LPFamily fam;
    fam.grid = spec;
    fam.aniso = aniso;
    fam.jmax = jmax;

    const std::size_t total = spec.size();
    const std::size_t n = spec.ndim();
    fam.lattice_dist.resize(total);
    std::vector<std::size_t> idx(n);
    std::vector<double> xi(n);
    for (std::size_t flat = 0; flat < total; ++flat) {
        unflatten(spec, flat, idx);
        for (std::size_t ax = 0; ax < n; ++ax)
            xi[ax] = spec.freq(ax, freq_index(idx[ax], spec.dims[ax]));
        fam.lattice_dist[flat] = aniso_distance(xi, aniso);
    }

    CutoffProfile psi = make_cutoff();
    fam.windows.assign(static_cast<std::size_t>(jmax) + 1,
                       std::vector<double>(total));
    std::vector<double> prev(total, 0.0);  // Psi_{j-1}
    for (int j = 0; j <= jmax; ++j) {
        const double scale = std::pow(2.0, -j);
        auto& w = fam.windows[static_cast<std::size_t>(j)];
        for (std::size_t flat = 0; flat < total; ++flat) {
            double cur = psi(scale * fam.lattice_dist[flat]);
            w[flat] = (j == 0) ? cur : cur - prev[flat];
            prev[flat] = cur;
        }
    }
    return fam;
}

std::vector<SampledField> decompose(const SampledField& field,
                                    const LPFamily& family) {
    if (!(field.spec() == family.grid))
        throw std::invalid_argument("decompose: field grid does not match family");
    const auto& spectrum = field.spectrum();

    double maxcoef = 0.0;
    for (const cplx& c : spectrum) maxcoef = std::max(maxcoef, std::abs(c));
    const double floor = 1e-12 * maxcoef;
    const double limit = std::pow(2.0, family.jmax - 1);
    double worst = 0.0;
    for (std::size_t flat = 0; flat < spectrum.size(); ++flat)
        if (std::abs(spectrum[flat]) > floor)
            worst = std::max(worst, family.lattice_dist[flat]);
    if (worst > limit * (1.0 + 1e-12))
        throw std::invalid_argument(
            "decompose: field not band-limited to |xi|_a <= 2^(jmax-1); "
            "largest active |xi|_a = " + std::to_string(worst));

    std::vector<SampledField> bands;
    bands.reserve(family.windows.size());
    for (const auto& w : family.windows) {
        std::vector<cplx> s(spectrum.size());
        for (std::size_t flat = 0; flat < spectrum.size(); ++flat)
            s[flat] = w[flat] * spectrum[flat];
        bands.push_back(from_spectrum_array(field.spec(), std::move(s)));
    }
    return bands;
}

SpectralRectangle spectral_rectangle(const SampledField& field,
                                     double threshold) {
    if (!(threshold >= 0.0 && threshold < 1.0))
        throw std::invalid_argument("spectral_rectangle: threshold must be in [0,1)");
    const auto& spectrum = field.spectrum();
    const GridSpec& spec = field.spec();

    double maxcoef = 0.0;
    for (const cplx& c : spectrum) maxcoef = std::max(maxcoef, std::abs(c));

    SpectralRectangle rect;
    rect.radius.assign(spec.ndim(), 0.0);
    if (maxcoef == 0.0) {
        rect.zero_field = true;
        return rect;
    }
    const double floor = threshold * maxcoef;
    std::vector<std::size_t> idx(spec.ndim());
    for (std::size_t flat = 0; flat < spectrum.size(); ++flat) {
        if (std::abs(spectrum[flat]) <= floor) continue;
        unflatten(spec, flat, idx);
        for (std::size_t ax = 0; ax < spec.ndim(); ++ax) {
            double xi = spec.freq(ax, freq_index(idx[ax], spec.dims[ax]));
            rect.radius[ax] = std::max(rect.radius[ax], std::fabs(xi));
        }
    }
    return rect;
}

bool check_rectangle_condition(std::span<const SampledField> fields,
                               std::span<const double> Rbase, double A) {
    for (double r : Rbase)
        if (!(r > 1.0))
            throw std::invalid_argument(
                "check_rectangle_condition: Rbase entries must be > 1");
    if (!(A > 0.0))
        throw std::invalid_argument("check_rectangle_condition: A must be > 0");

    for (std::size_t j = 0; j < fields.size(); ++j) {
        SpectralRectangle rect = spectral_rectangle(fields[j]);
        if (rect.radius.size() != Rbase.size())
            throw std::invalid_argument(
                "check_rectangle_condition: dimension mismatch");
        for (std::size_t k = 0; k < Rbase.size(); ++k) {
            double bound = A * std::pow(Rbase[k], static_cast<double>(j));
            if (rect.radius[k] > bound * (1.0 + 1e-9)) return false;
        }
    }
    return true;
}

}  // namespace mnl
