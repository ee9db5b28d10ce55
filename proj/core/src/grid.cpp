#include "friedrichs/grid.hpp"

#include "fft.hpp"
#include "friedrichs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace friedrichs {

namespace {

constexpr const char* kModule = "grid";

// Per-length phase tables for the half-offset transform.
struct PhaseTable {
    ComplexVector ramp_forward;   // (-1)^k exp(-i pi k / n)
    ComplexVector ramp_backward;  // (-1)^k exp(+i pi k / n)
    cplx constant_forward;
    cplx constant_backward;
};

std::shared_ptr<const PhaseTable> phase_table(std::size_t n)
{
    static std::mutex mutex;
    static std::map<std::size_t, std::shared_ptr<const PhaseTable>> tables;
    std::lock_guard lock(mutex);
    if (auto it = tables.find(n); it != tables.end()) {
        return it->second;
    }
    auto table = std::make_shared<PhaseTable>();
    table->ramp_forward.resize(n);
    table->ramp_backward.resize(n);
    const double pi = std::numbers::pi;
    for (std::size_t k = 0; k < n; ++k) {
        const double parity = (k % 2 == 0) ? 1.0 : -1.0;
        const double angle = pi * static_cast<double>(k) / static_cast<double>(n);
        table->ramp_forward[k] = parity * std::polar(1.0, -angle);
        table->ramp_backward[k] = parity * std::polar(1.0, angle);
    }
    // exp(sign i 2 pi a^2 / n) = (-1)^{n/2 - 1} exp(sign i pi / (2n))
    const double parity = ((n / 2 - 1) % 2 == 0) ? 1.0 : -1.0;
    const double angle = pi / (2.0 * static_cast<double>(n));
    table->constant_forward = parity * std::polar(1.0, -angle);
    table->constant_backward = parity * std::polar(1.0, angle);
    tables.emplace(n, table);
    return table;
}

} // namespace

UniformGrid::UniformGrid(double half_width, std::size_t point_count)
    : half_width_(half_width), size_(point_count)
{
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw ConfigError(kModule, "half-width L must be positive and finite", format_value(half_width));
    }
    if (point_count < 4 || point_count % 2 != 0) {
        throw ConfigError(kModule, "point count N must be even and at least 4", std::to_string(point_count));
    }
}

std::vector<double> UniformGrid::points() const
{
    std::vector<double> out(size_);
    for (std::size_t k = 0; k < size_; ++k) {
        out[k] = point(k);
    }
    return out;
}

std::vector<double> UniformGrid::half_points() const
{
    std::vector<double> out(half_size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = half_point(j);
    }
    return out;
}

std::size_t UniformGrid::nearest_index(double x) const noexcept
{
    const double pos = x / spacing() + 0.5 * static_cast<double>(size_) - 0.5;
    const double r = std::round(pos);
    if (r <= 0.0) {
        return 0;
    }
    return std::min(static_cast<std::size_t>(r), size_ - 1);
}

UniformGrid UniformGrid::dual() const
{
    return UniformGrid(std::numbers::pi * static_cast<double>(size_) / (2.0 * half_width_), size_);
}

SampledFunction::SampledFunction(const UniformGrid& g) : grid(g), values(g.size()) {}

SampledFunction::SampledFunction(const UniformGrid& g, ComplexVector v) : grid(g), values(std::move(v))
{
    if (values.size() != grid.size()) {
        throw ConfigError(kModule, "sample count must equal grid point count", std::to_string(values.size()));
    }
}

double SampledFunction::norm() const
{
    double acc = 0.0;
    for (const auto& v : values) {
        acc += std::norm(v);
    }
    return std::sqrt(grid.spacing() * acc);
}

double SampledFunction::max_abs() const
{
    double m = 0.0;
    for (const auto& v : values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

cplx inner(const SampledFunction& f, const SampledFunction& g)
{
    if (!(f.grid == g.grid)) {
        throw ConfigError(kModule, "inner product of functions on different grids", "");
    }
    cplx acc{};
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        acc += std::conj(f.values[k]) * g.values[k];
    }
    return f.grid.spacing() * acc;
}

HalfLinePair::HalfLinePair(const UniformGrid& g) : grid(g), first(g.half_size()), second(g.half_size()) {}

HalfLinePair::HalfLinePair(const UniformGrid& g, ComplexVector f1, ComplexVector f2)
    : grid(g), first(std::move(f1)), second(std::move(f2))
{
    if (first.size() != grid.half_size() || second.size() != grid.half_size()) {
        throw ConfigError(kModule, "half-line components must have N/2 samples",
                          std::to_string(first.size()) + "/" + std::to_string(second.size()));
    }
}

double HalfLinePair::norm() const
{
    double acc = 0.0;
    for (std::size_t j = 0; j < first.size(); ++j) {
        acc += std::norm(first[j]) + std::norm(second[j]);
    }
    return std::sqrt(grid.spacing() * acc);
}

namespace detail {

void centered_dft(std::span<cplx> data, double spacing, int sign)
{
    const std::size_t n = data.size();
    if (n % 2 != 0) {
        throw ConfigError(kModule, "transform length must be even", std::to_string(n));
    }
    const auto table = phase_table(n);
    const bool fwd = sign < 0;
    const auto& ramp = fwd ? table->ramp_forward : table->ramp_backward;
    for (std::size_t k = 0; k < n; ++k) {
        data[k] *= ramp[k];
    }
    fft_inplace(data, fwd ? FftSign::forward : FftSign::backward);
    const cplx c = (fwd ? table->constant_forward : table->constant_backward) *
                   (spacing / std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t m = 0; m < n; ++m) {
        data[m] *= c * ramp[m];
    }
}

ComplexVector spectral_upsample(std::span<const cplx> values, double half_width, std::size_t factor)
{
    const std::size_t n = values.size();
    if (factor == 1) {
        return ComplexVector(values.begin(), values.end());
    }
    const double dx = 2.0 * half_width / static_cast<double>(n);
    const double dxi = std::numbers::pi / half_width;
    ComplexVector spec(values.begin(), values.end());
    centered_dft(spec, dx, -1);
    ComplexVector fine(n * factor);
    const std::size_t offset = (n * factor - n) / 2;
    std::copy(spec.begin(), spec.end(), fine.begin() + static_cast<std::ptrdiff_t>(offset));
    centered_dft(fine, dxi, +1);
    return fine;
}

} // namespace detail

SampledFunction fourier_transform(const SampledFunction& f, Direction direction)
{
    SampledFunction out(f.grid.dual(), f.values);
    detail::centered_dft(out.values, f.grid.spacing(), direction == Direction::forward ? -1 : +1);
    return out;
}

SampledFunction negative_halfline_projection(const SampledFunction& f)
{
    // Half-offset frequencies: xi_m < 0 exactly for m < N/2, and no sample
    // falls on xi = 0, so the split needs no band-edge weighting.
    ComplexVector spec = f.values;
    detail::centered_dft(spec, f.grid.spacing(), -1);
    const std::size_t half = spec.size() / 2;
    std::fill(spec.begin() + static_cast<std::ptrdiff_t>(half), spec.end(), cplx{});
    detail::centered_dft(spec, f.grid.dual().spacing(), +1);
    return SampledFunction(f.grid, std::move(spec));
}

HalfLinePair even_odd_map(const SampledFunction& f)
{
    const std::size_t n = f.grid.half_size();
    HalfLinePair out(f.grid);
    const double s = 1.0 / std::numbers::sqrt2;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx pos = f.values[n + j];
        const cplx neg = f.values[n - 1 - j];
        out.first[j] = s * (pos + neg);
        out.second[j] = s * (pos - neg);
    }
    return out;
}

SampledFunction even_odd_inverse(const HalfLinePair& p)
{
    const std::size_t n = p.grid.half_size();
    SampledFunction out(p.grid);
    const double s = 1.0 / std::numbers::sqrt2;
    for (std::size_t j = 0; j < n; ++j) {
        out.values[n + j] = s * (p.first[j] + p.second[j]);
        out.values[n - 1 - j] = s * (p.first[j] - p.second[j]);
    }
    return out;
}

} // namespace friedrichs
