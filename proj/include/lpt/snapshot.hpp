#pragma once

#include <string>

#include "lpt/field.hpp"

namespace lpt {

/// Field snapshot format: 16-byte header
///   magic "LPTF" | u8 version=1 | u8 d | u16 reserved | u32 n | u32 reserved
/// followed by n^d little-endian float64 values, row-major.
void write_snapshot(const std::string& path, const PhysicalField& f);
PhysicalField read_snapshot(const std::string& path);

}  // namespace lpt
