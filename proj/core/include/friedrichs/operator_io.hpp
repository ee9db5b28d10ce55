#pragma once

#include "friedrichs/waveop.hpp"

#include <filesystem>

namespace friedrichs {

// 32-byte header: magic "FRDKOPM1", uint64 N, uint32 representation,
// uint32 format version, 8 reserved bytes; then row-major complex pairs
// (real, imag) as little-endian doubles. The grid half-width is stored in
// the reserved slot.
void write_operator_matrix(const std::filesystem::path& path, const OperatorMatrix& op);
OperatorMatrix read_operator_matrix(const std::filesystem::path& path);

} // namespace friedrichs
