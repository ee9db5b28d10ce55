#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace friedrichs {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

// Symmetric half-offset grid on [-L, L]:
//
// x_k = (k + 1/2 - N/2) * dx,   dx = 2L / N,   k = 0 .. N-1.
//
// N is even, so x_k = -x_{N-1-k} exactly and no point sits at the origin.
// The positive half x_{N/2 + j} = (j + 1/2) dx is the half-line grid used by
// the even/odd representation.
class UniformGrid {
public:
    UniformGrid(double half_width, std::size_t point_count);

    double half_width() const noexcept { return half_width_; }
    std::size_t size() const noexcept { return size_; }
    std::size_t half_size() const noexcept { return size_ / 2; }
    double spacing() const noexcept { return 2.0 * half_width_ / static_cast<double>(size_); }

    double point(std::size_t k) const noexcept
    {
        return (static_cast<double>(k) + 0.5 - 0.5 * static_cast<double>(size_)) * spacing();
    }
    // j-th point of the positive half, (j + 1/2) dx.
    double half_point(std::size_t j) const noexcept { return (static_cast<double>(j) + 0.5) * spacing(); }
    std::size_t mirror(std::size_t k) const noexcept { return size_ - 1 - k; }
    std::vector<double> points() const;
    std::vector<double> half_points() const;

    // Nearest grid index to x (clamped).
    std::size_t nearest_index(double x) const noexcept;

    // Frequency grid of the discrete transform: same N, spacing pi/L,
    // half-width pi N / (2L). dual().dual() == *this.
    UniformGrid dual() const;

    bool operator==(const UniformGrid& other) const noexcept = default;

private:
    double half_width_;
    std::size_t size_;
};

// Complex samples of a function on a UniformGrid; discrete L2 structure uses
// the weight dx.
struct SampledFunction {
    UniformGrid grid;
    ComplexVector values;

    explicit SampledFunction(const UniformGrid& g);
    SampledFunction(const UniformGrid& g, ComplexVector v);

    template <typename F>
    static SampledFunction from(const UniformGrid& g, F&& fn)
    {
        SampledFunction out(g);
        for (std::size_t k = 0; k < g.size(); ++k) {
            out.values[k] = fn(g.point(k));
        }
        return out;
    }

    double norm() const;
    double max_abs() const;
};

cplx inner(const SampledFunction& f, const SampledFunction& g);

// Element of L2(R+; C^2) sampled on the positive half of `grid`.
struct HalfLinePair {
    UniformGrid grid;
    ComplexVector first;
    ComplexVector second;

    explicit HalfLinePair(const UniformGrid& g);
    HalfLinePair(const UniformGrid& g, ComplexVector f1, ComplexVector f2);

    double norm() const;
};

enum class Direction { forward, inverse };

// Fourier transform (F f)(xi) = (2 pi)^{-1/2} int exp(-i xi y) f(y) dy,
// discretized by the midpoint rule on the half-offset grid and evaluated on
// grid.dual(). The inverse uses exp(+i x xi). Both directions are exactly
// unitary for the dx-weighted norms and inverse(forward(f)) == f up to rounding.
SampledFunction fourier_transform(const SampledFunction& f, Direction direction);

// chi_{(-inf,0)}(D) f: keep the negative-frequency half of the spectrum.
SampledFunction negative_halfline_projection(const SampledFunction& f);

// U f = sqrt(2) (f_e, f_o) restricted to x > 0.
HalfLinePair even_odd_map(const SampledFunction& f);
// [U* (f1, f2)](x) = (f1(|x|) + sgn(x) f2(|x|)) / sqrt(2).
SampledFunction even_odd_inverse(const HalfLinePair& p);

namespace detail {

// In-place centred transform on a half-offset grid of length data.size():
// out_m = (spacing / sqrt(2 pi)) sum_k in_k exp(sign i (k+a)(m+a) 2 pi / n),
// a = (1 - n) / 2. sign = -1 is the forward transform.
void centered_dft(std::span<cplx> data, double spacing, int sign);

// Band-limited (zero-padded) resampling of full-grid samples onto the grid
// with the same half-width and `factor` times as many points.
ComplexVector spectral_upsample(std::span<const cplx> values, double half_width, std::size_t factor);

} // namespace detail

} // namespace friedrichs
