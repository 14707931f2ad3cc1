#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace mnl {

using cplx = std::complex<double>;

/// Uniform periodic grid on the box [0,L_1) x ... x [0,L_n).
/// All axis sizes must be even so the integer frequency range
/// [-N_k/2, N_k/2) is symmetric and unambiguous.
struct GridSpec {
    std::vector<std::size_t> dims;     // N_1..N_n, each even and >= 2
    std::vector<double> periods;       // L_1..L_n, each > 0

    std::size_t ndim() const { return dims.size(); }
    std::size_t size() const;          // product of dims

    /// Physical Nyquist angular frequency pi*N_k/L_k for one axis.
    double nyquist(std::size_t axis) const;

    /// Physical angular frequency 2*pi*k/L_k of an integer mode index.
    double freq(std::size_t axis, long k) const;

    void validate() const;             // throws std::invalid_argument

    bool operator==(const GridSpec&) const = default;
};

/// One spectral mode: integer frequency vector plus complex amplitude.
struct Mode {
    std::vector<long> k;
    cplx amp;
};

/// Immutable complex samples on a GridSpec, row-major with axis 1 fastest.
/// The spectrum is cached lazily with compute-once semantics; amplitudes
/// are normalized so that from_spectrum recovers them verbatim.
class SampledField {
public:
    SampledField(GridSpec spec, std::vector<cplx> values);
    SampledField(GridSpec spec, std::vector<cplx> values,
                 std::vector<cplx> spectrum);

    const GridSpec& spec() const { return spec_; }
    const std::vector<cplx>& values() const { return values_; }

    /// Cached amplitudes, same shape as values, frequency k stored at
    /// index k mod N per axis.
    const std::vector<cplx>& spectrum() const;

private:
    GridSpec spec_;
    std::vector<cplx> values_;
    mutable std::shared_ptr<const std::vector<cplx>> spectrum_;
    mutable std::shared_ptr<std::mutex> cache_mutex_;
};

/// Synthesize the trigonometric polynomial sum c_k e^{i 2 pi k.x/L} on the
/// grid. Frequencies must lie strictly inside the Nyquist range; an empty
/// list gives the zero field.
SampledField from_spectrum(const GridSpec& spec, std::span<const Mode> modes);

/// Inverse transform of a full spectrum array (layout as spectrum()).
SampledField from_spectrum_array(const GridSpec& spec,
                                 std::vector<cplx> spectrum);

/// Forward transform; rejects non-finite values.
std::vector<cplx> to_spectrum(const SampledField& field);

// --- multi-index helpers ---------------------------------------------------

/// Signed integer frequency of the flat position along one axis.
inline long freq_index(std::size_t pos, std::size_t n) {
    return pos < n / 2 ? static_cast<long>(pos)
                       : static_cast<long>(pos) - static_cast<long>(n);
}

/// Flat storage position of a signed frequency (k mod N).
inline std::size_t freq_pos(long k, std::size_t n) {
    long m = k % static_cast<long>(n);
    if (m < 0) m += static_cast<long>(n);
    return static_cast<std::size_t>(m);
}

/// Decode a flat row-major index (axis 1 fastest) into per-axis positions.
void unflatten(const GridSpec& spec, std::size_t flat,
               std::span<std::size_t> out);

// --- MNF1 field file format ------------------------------------------------

enum class io_errc {
    bad_magic,
    truncated,
    dim_overflow,
    bad_header,
    io_failure,
};

class io_error : public std::runtime_error {
public:
    io_error(io_errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    io_errc code() const { return code_; }

private:
    io_errc code_;
};

/// "MNF1": magic, u32 LE ndim, ndim x u64 LE dims, ndim x f64 LE periods,
/// then prod(dims) x (f64 re, f64 im) LE, row-major with axis 1 fastest.
void write_field(const SampledField& field, const std::filesystem::path& path);
SampledField read_field(const std::filesystem::path& path);

}  // namespace mnl
