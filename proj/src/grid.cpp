#include "mnl/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace mnl {

namespace {

constexpr std::size_t kMaxNdim = 16;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

std::size_t GridSpec::size() const {
    std::size_t total = 1;
    for (std::size_t n : dims) total *= n;
    return total;
}

double GridSpec::nyquist(std::size_t axis) const {
    return std::numbers::pi * static_cast<double>(dims[axis]) / periods[axis];
}

double GridSpec::freq(std::size_t axis, long k) const {
    return 2.0 * std::numbers::pi * static_cast<double>(k) / periods[axis];
}

void GridSpec::validate() const {
    require(!dims.empty(), "GridSpec: ndim must be >= 1");
    require(dims.size() <= kMaxNdim, "GridSpec: ndim too large");
    require(dims.size() == periods.size(),
            "GridSpec: dims and periods length mismatch");
    for (std::size_t k = 0; k < dims.size(); ++k) {
        require(dims[k] >= 2 && dims[k] % 2 == 0,
                "GridSpec: axis " + std::to_string(k + 1) +
                    " size must be even and >= 2");
        require(periods[k] > 0.0 && std::isfinite(periods[k]),
                "GridSpec: axis " + std::to_string(k + 1) +
                    " period must be positive");
    }
}

void unflatten(const GridSpec& spec, std::size_t flat,
               std::span<std::size_t> out) {
    for (std::size_t ax = 0; ax < spec.ndim(); ++ax) {
        out[ax] = flat % spec.dims[ax];
        flat /= spec.dims[ax];
    }
}

// --- separable DFT ---------------------------------------------------------

namespace {

// Exact N-th roots of unity, sign = -1 forward, +1 inverse.
std::vector<cplx> roots(std::size_t n, int sign) {
    std::vector<cplx> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(j) /
                     static_cast<double>(n);
        w[j] = cplx(std::cos(ang), std::sin(ang));
    }
    return w;
}

// In-place DFT along one axis of the row-major array (axis 1 fastest).
void dft_axis(std::vector<cplx>& data, const GridSpec& spec, std::size_t axis,
              int sign) {
    const std::size_t n = spec.dims[axis];
    std::size_t stride = 1;
    for (std::size_t a = 0; a < axis; ++a) stride *= spec.dims[a];
    const std::size_t total = data.size();
    const std::size_t block = stride * n;
    const auto w = roots(n, sign);

    std::vector<cplx> line(n), out(n);
    for (std::size_t base = 0; base < total; base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            for (std::size_t j = 0; j < n; ++j)
                line[j] = data[base + off + j * stride];
            for (std::size_t k = 0; k < n; ++k) {
                cplx acc = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    acc += line[j] * w[(j * k) % n];
                out[k] = acc;
            }
            for (std::size_t k = 0; k < n; ++k)
                data[base + off + k * stride] = out[k];
        }
    }
}

std::vector<cplx> transform(const GridSpec& spec, std::vector<cplx> data,
                            int sign) {
    for (std::size_t ax = 0; ax < spec.ndim(); ++ax)
        dft_axis(data, spec, ax, sign);
    return data;
}

}  // namespace

SampledField::SampledField(GridSpec spec, std::vector<cplx> values)
    : spec_(std::move(spec)),
      values_(std::move(values)),
      cache_mutex_(std::make_shared<std::mutex>()) {
    spec_.validate();
    require(values_.size() == spec_.size(),
            "SampledField: value count does not match grid size");
}

SampledField::SampledField(GridSpec spec, std::vector<cplx> values,
                           std::vector<cplx> spectrum)
    : SampledField(std::move(spec), std::move(values)) {
    require(spectrum.size() == spec_.size(),
            "SampledField: spectrum size does not match grid size");
    spectrum_ = std::make_shared<const std::vector<cplx>>(std::move(spectrum));
}

const std::vector<cplx>& SampledField::spectrum() const {
    std::lock_guard<std::mutex> lock(*cache_mutex_);
    if (!spectrum_)
        spectrum_ = std::make_shared<const std::vector<cplx>>(to_spectrum(*this));
    return *spectrum_;
}

SampledField from_spectrum(const GridSpec& spec, std::span<const Mode> modes) {
    spec.validate();
    std::vector<cplx> spectrum(spec.size(), cplx(0.0, 0.0));
    for (const Mode& m : modes) {
        require(m.k.size() == spec.ndim(),
                "from_spectrum: mode dimension mismatch");
        std::size_t flat = 0;
        for (std::size_t ax = spec.ndim(); ax-- > 0;) {
            long half = static_cast<long>(spec.dims[ax] / 2);
            if (m.k[ax] <= -half || m.k[ax] >= half)
                throw std::invalid_argument(
                    "from_spectrum: frequency " + std::to_string(m.k[ax]) +
                    " out of Nyquist range on axis " + std::to_string(ax + 1));
            flat = flat * spec.dims[ax] + freq_pos(m.k[ax], spec.dims[ax]);
        }
        spectrum[flat] += m.amp;
    }
    return from_spectrum_array(spec, std::move(spectrum));
}

SampledField from_spectrum_array(const GridSpec& spec,
                                 std::vector<cplx> spectrum) {
    require(spectrum.size() == spec.size(),
            "from_spectrum_array: spectrum size mismatch");
    std::vector<cplx> values = transform(spec, spectrum, +1);
    return SampledField(spec, std::move(values), std::move(spectrum));
}

std::vector<cplx> to_spectrum(const SampledField& field) {
    for (const cplx& v : field.values())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("to_spectrum: non-finite value");
    std::vector<cplx> spectrum =
        transform(field.spec(), field.values(), -1);
    const double norm = 1.0 / static_cast<double>(field.spec().size());
    for (cplx& c : spectrum) c *= norm;
    return spectrum;
}

// --- MNF1 I/O --------------------------------------------------------------

namespace {

template <class T>
void put(std::string& buf, T v) {
    char raw[sizeof(T)];
    std::memcpy(raw, &v, sizeof(T));
    buf.append(raw, sizeof(T));  // little-endian host assumed
}

template <class T>
T take(const std::string& buf, std::size_t& off) {
    if (off + sizeof(T) > buf.size())
        throw io_error(io_errc::truncated, "MNF1: truncated payload");
    T v;
    std::memcpy(&v, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

}  // namespace

void write_field(const SampledField& field, const std::filesystem::path& path) {
    for (const cplx& v : field.values())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("write_field: non-finite value");

    std::string buf;
    buf.reserve(32 + field.values().size() * 16);
    buf.append("MNF1", 4);
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(field.spec().ndim()));
    for (std::size_t n : field.spec().dims)
        put<std::uint64_t>(buf, static_cast<std::uint64_t>(n));
    for (double L : field.spec().periods) put<double>(buf, L);
    for (const cplx& v : field.values()) {
        put<double>(buf, v.real());
        put<double>(buf, v.imag());
    }

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw io_error(io_errc::io_failure, "cannot open " + path.string());
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!os) throw io_error(io_errc::io_failure, "write failed: " + path.string());
}

SampledField read_field(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error(io_errc::io_failure, "cannot open " + path.string());
    std::string buf((std::istreambuf_iterator<char>(is)),
                    std::istreambuf_iterator<char>());

    if (buf.size() < 4 || buf.compare(0, 4, "MNF1") != 0)
        throw io_error(io_errc::bad_magic, "MNF1: bad magic");
    std::size_t off = 4;
    const auto ndim = take<std::uint32_t>(buf, off);
    if (ndim == 0 || ndim > kMaxNdim)
        throw io_error(io_errc::dim_overflow,
                       "MNF1: ndim " + std::to_string(ndim) + " out of range");

    GridSpec spec;
    std::size_t total = 1;
    for (std::uint32_t k = 0; k < ndim; ++k) {
        auto n = take<std::uint64_t>(buf, off);
        if (n < 2 || n > (std::uint64_t{1} << 32) ||
            total > (std::size_t{1} << 40) / n)
            throw io_error(io_errc::dim_overflow, "MNF1: dimension overflow");
        spec.dims.push_back(static_cast<std::size_t>(n));
        total *= static_cast<std::size_t>(n);
    }
    for (std::uint32_t k = 0; k < ndim; ++k)
        spec.periods.push_back(take<double>(buf, off));
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw io_error(io_errc::bad_header, std::string("MNF1: ") + e.what());
    }

    std::vector<cplx> values(total);
    for (std::size_t i = 0; i < total; ++i) {
        double re = take<double>(buf, off);
        double im = take<double>(buf, off);
        values[i] = cplx(re, im);
    }
    if (off != buf.size())
        throw io_error(io_errc::bad_header, "MNF1: trailing bytes");
    return SampledField(std::move(spec), std::move(values));
}

}  // namespace mnl
