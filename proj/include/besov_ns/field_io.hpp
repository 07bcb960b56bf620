#pragma once

#include "besov_ns/spectral_field.hpp"

#include <filesystem>
#include <iosfwd>
#include <variant>

namespace besov_ns {

// SFLD1 binary format, little-endian:
//   "SFLD1\0" | u8 n | u8 rank | u32 N | f64 L | u8 dtype | payload
// dtype 0 stores f64 physical samples, dtype 1 complex128 coefficients.
// Payload is components outermost, each in flat grid order.

using StoredField = std::variant<PhysicalField, SpectralField>;

void write_field(std::ostream& out, const SpectralField& f);
void write_field(std::ostream& out, const PhysicalField& f);
void write_field(const std::filesystem::path& path, const SpectralField& f);
void write_field(const std::filesystem::path& path, const PhysicalField& f);

/// Throws std::runtime_error on "bad magic" or a truncated stream.
StoredField read_field(std::istream& in);
StoredField read_field(const std::filesystem::path& path);

/// Reads a field and checks it lives on `expected` ("grid mismatch"
/// otherwise). Physical payloads are transformed.
SpectralField read_spectral(std::istream& in, const Grid& expected);
SpectralField read_spectral(const std::filesystem::path& path, const Grid& expected);

}  // namespace besov_ns
