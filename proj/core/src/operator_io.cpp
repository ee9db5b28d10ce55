#include "friedrichs/operator_io.hpp"

#include "friedrichs/errors.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace friedrichs {

namespace {

constexpr const char* kModule = "waveop";
constexpr std::array<char, 8> kMagic{'F', 'R', 'D', 'K', 'O', 'P', 'M', '1'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little, "binary dump assumes a little-endian host");

template <typename T>
void put(std::ofstream& out, T v)
{
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in)
{
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

} // namespace

void write_operator_matrix(const std::filesystem::path& path, const OperatorMatrix& op)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError(kModule, "cannot open matrix dump for writing", path.string());
    }
    out.write(kMagic.data(), kMagic.size());
    put<std::uint64_t>(out, static_cast<std::uint64_t>(op.matrix.rows()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(op.representation));
    put<std::uint32_t>(out, kVersion);
    put<double>(out, op.grid.half_width());
    for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < op.matrix.cols(); ++j) {
            put<double>(out, op.matrix(i, j).real());
            put<double>(out, op.matrix(i, j).imag());
        }
    }
    if (!out) {
        throw ConfigError(kModule, "failed writing matrix dump", path.string());
    }
}

OperatorMatrix read_operator_matrix(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(kModule, "cannot open matrix dump", path.string());
    }
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) {
        throw ConfigError(kModule, "not a matrix dump (bad magic)", path.string());
    }
    const auto n = get<std::uint64_t>(in);
    const auto rep = get<std::uint32_t>(in);
    const auto version = get<std::uint32_t>(in);
    const auto half_width = get<double>(in);
    if (!in || version != kVersion || rep > 1) {
        throw ConfigError(kModule, "unsupported matrix dump header", std::to_string(version));
    }
    OperatorMatrix op{UniformGrid(half_width, static_cast<std::size_t>(n)), static_cast<Representation>(rep),
                      Eigen::MatrixXcd(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))};
    for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < op.matrix.cols(); ++j) {
            const double re = get<double>(in);
            const double im = get<double>(in);
            op.matrix(i, j) = {re, im};
        }
    }
    if (!in) {
        throw ConfigError(kModule, "matrix dump truncated", path.string());
    }
    return op;
}

} // namespace friedrichs
