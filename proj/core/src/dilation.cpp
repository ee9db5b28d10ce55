#include "friedrichs/dilation.hpp"

#include "fft.hpp"
#include "friedrichs/errors.hpp"
#include "friedrichs/interpolation.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace friedrichs {

namespace {

constexpr const char* kModule = "grid";
constexpr double kLimitProbe = 40.0;
constexpr double kLimitTolerance = 1e-8;

} // namespace

DilationMultiplier::DilationMultiplier(std::string name, Rule rule, Matrix2c limit_minus, Matrix2c limit_plus)
    : name_(std::move(name)), rule_(std::move(rule)), limit_minus_(limit_minus), limit_plus_(limit_plus)
{
    const double dm = (rule_(-kLimitProbe) - limit_minus_).cwiseAbs().maxCoeff();
    const double dp = (rule_(kLimitProbe) - limit_plus_).cwiseAbs().maxCoeff();
    if (dm > kLimitTolerance || dp > kLimitTolerance) {
        throw ConfigError(kModule, "dilation multiplier '" + name_ + "' does not reach its declared limits",
                          format_value(std::max(dm, dp)));
    }
}

Matrix2c DilationMultiplier::operator()(double xi) const
{
    if (std::isinf(xi)) {
        return xi < 0 ? limit_minus_ : limit_plus_;
    }
    return rule_(xi);
}

cplx phi(double xi)
{
    const double a = std::numbers::pi * xi;
    return {std::tanh(a), 1.0 / std::cosh(a)};
}

DilationMultiplier constant_multiplier(const Matrix2c& value)
{
    return DilationMultiplier("constant", [value](double) { return value; }, value, value);
}

DilationMultiplier phi_multiplier()
{
    return DilationMultiplier(
        "phi", [](double xi) { return Matrix2c(phi(xi) * Matrix2c::Identity()); },
        Matrix2c(-Matrix2c::Identity()), Matrix2c(Matrix2c::Identity()));
}

namespace {

Matrix2c projection_matrix(cplx p)
{
    Matrix2c m;
    m << 0.5, -0.5 * std::conj(p), -0.5 * p, 0.5;
    return m;
}

} // namespace

DilationMultiplier projection_symbol()
{
    return DilationMultiplier(
        "Phi", [](double xi) { return projection_matrix(phi(xi)); }, projection_matrix(-1.0),
        projection_matrix(1.0));
}

DilationCalculus::DilationCalculus(const UniformGrid& grid, const DilationMultiplier& mult, MellinOptions options)
    : grid_(grid), options_(options), constant_(0.5 * (mult.limit_minus() + mult.limit_plus()))
{
    if (options_.oversampling < 4) {
        throw ConfigError(kModule, "Mellin oversampling must be at least 4",
                          std::to_string(options_.oversampling));
    }
    if (!(options_.log_floor > 0.0 && options_.log_floor < 0.5)) {
        throw ConfigError(kModule, "Mellin log floor must lie in (0, 1/2)", format_value(options_.log_floor));
    }
    if (!(options_.mass_tolerance > 0.0)) {
        throw ConfigError(kModule, "Mellin mass tolerance must be positive", format_value(options_.mass_tolerance));
    }

    const double dx = grid_.spacing();
    const double L = grid_.half_width();
    const auto os = static_cast<double>(options_.oversampling);
    const double fine_h = dx / os;
    const double fine_x0 = -L + 0.5 * fine_h;

    // dx/x resolution at x = L matches the oversampled spatial grid.
    log_min_ = std::log(options_.log_floor * dx);
    const double log_max = std::log(L);
    const double range = log_max - log_min_;
    const auto wanted = static_cast<std::size_t>(std::ceil(range / (fine_h / L)));
    log_size_ = std::bit_ceil(std::max<std::size_t>(wanted, 16));
    log_spacing_ = range / static_cast<double>(log_size_);

    forward_first_.resize(log_size_);
    forward_weights_.resize(log_size_);
    forward_scale_.resize(log_size_);
    for (std::size_t n = 0; n < log_size_; ++n) {
        const double s = log_min_ + static_cast<double>(n) * log_spacing_;
        const auto st = uniform_cubic_stencil(fine_x0, fine_h, std::exp(s));
        forward_first_[n] = st.first;
        forward_weights_[n] = st.weights;
        forward_scale_[n] = std::exp(0.5 * s);
    }

    const std::size_t half = grid_.half_size();
    back_first_.resize(half);
    back_weights_.resize(half);
    for (std::size_t j = 0; j < half; ++j) {
        const auto st = uniform_cubic_stencil(log_min_, log_spacing_, std::log(grid_.half_point(j)));
        back_first_[j] = st.first;
        back_weights_[j] = st.weights;
    }

    symbol_.resize(log_size_);
    const double dxi = 2.0 * std::numbers::pi / (static_cast<double>(log_size_) * log_spacing_);
    const auto M = static_cast<std::ptrdiff_t>(log_size_);
    for (std::ptrdiff_t m = 0; m < M; ++m) {
        const std::ptrdiff_t k = (m < M / 2) ? m : m - M;
        const double xi = dxi * static_cast<double>(k);
        if (m == M / 2) {
            symbol_[static_cast<std::size_t>(m)] = 0.5 * (mult(xi) + mult(-xi)) - constant_;
        } else {
            symbol_[static_cast<std::size_t>(m)] = mult(xi) - constant_;
        }
    }
}

HalfLinePair DilationCalculus::apply(const HalfLinePair& p) const
{
    if (!(p.grid == grid_)) {
        throw ConfigError(kModule, "half-line pair lives on a different grid than the dilation plan",
                          std::to_string(p.grid.size()));
    }
    const std::size_t half = grid_.half_size();
    const std::size_t n = grid_.size();
    HalfLinePair out(grid_);
    for (std::size_t j = 0; j < half; ++j) {
        out.first[j] = constant_(0, 0) * p.first[j] + constant_(0, 1) * p.second[j];
        out.second[j] = constant_(1, 0) * p.first[j] + constant_(1, 1) * p.second[j];
    }
    const double norm = p.norm();
    if (norm == 0.0 || symbol_.empty()) {
        return out;
    }

    const double L = grid_.half_width();
    const std::size_t os = options_.oversampling;
    const double fine_h = grid_.spacing() / static_cast<double>(os);
    const double fine_x0 = -L + 0.5 * fine_h;

    // Even extension for the first channel, odd for the second, so both are
    // smooth through the origin before band-limited upsampling.
    std::array<ComplexVector, 2> logs;
    double mass_at_origin = 0.0;
    for (int c = 0; c < 2; ++c) {
        const ComplexVector& comp = (c == 0) ? p.first : p.second;
        const double parity = (c == 0) ? 1.0 : -1.0;
        ComplexVector full(n);
        for (std::size_t j = 0; j < half; ++j) {
            full[half + j] = comp[j];
            full[half - 1 - j] = parity * comp[j];
        }
        const ComplexVector fine = detail::spectral_upsample(full, L, os);
        const std::span<const cplx> fine_view(fine);
        mass_at_origin += std::norm(uniform_cubic(fine_view, fine_x0, fine_h, 0.0));

        ComplexVector& g = logs[static_cast<std::size_t>(c)];
        g.resize(log_size_);
        for (std::size_t m = 0; m < log_size_; ++m) {
            CubicStencil st{forward_first_[m], forward_weights_[m]};
            g[m] = forward_scale_[m] * apply_stencil(fine_view, st);
        }
        detail::fft_inplace(g, detail::FftSign::forward);
    }
    const double x_floor = options_.log_floor * grid_.spacing();
    if (x_floor * mass_at_origin > options_.mass_tolerance * norm * norm) {
        throw NumericalError(kModule, "mass below the log-grid floor exceeds tolerance; enlarge the log window",
                             format_value(x_floor * mass_at_origin / (norm * norm)));
    }

    for (std::size_t m = 0; m < log_size_; ++m) {
        const Matrix2c& r = symbol_[m];
        const cplx a = logs[0][m];
        const cplx b = logs[1][m];
        logs[0][m] = r(0, 0) * a + r(0, 1) * b;
        logs[1][m] = r(1, 0) * a + r(1, 1) * b;
    }

    const auto M = static_cast<std::ptrdiff_t>(log_size_);
    const double inv_m = 1.0 / static_cast<double>(log_size_);
    for (int c = 0; c < 2; ++c) {
        ComplexVector& g = logs[static_cast<std::size_t>(c)];
        detail::fft_inplace(g, detail::FftSign::backward);
        ComplexVector& target = (c == 0) ? out.first : out.second;
        for (std::size_t j = 0; j < half; ++j) {
            cplx acc{};
            for (std::ptrdiff_t i = 0; i < 4; ++i) {
                const std::ptrdiff_t k = ((back_first_[j] + i) % M + M) % M;
                acc += back_weights_[j][static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(k)];
            }
            target[j] += acc * inv_m / std::sqrt(grid_.half_point(j));
        }
    }
    return out;
}

HalfLinePair apply_dilation_function(const HalfLinePair& p, const DilationMultiplier& mult,
                                     const MellinOptions& options)
{
    return DilationCalculus(p.grid, mult, options).apply(p);
}

} // namespace friedrichs
