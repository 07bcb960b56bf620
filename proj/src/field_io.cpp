#include "besov_ns/field_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace besov_ns {

namespace {

constexpr std::array<char, 6> kMagic{'S', 'F', 'L', 'D', '1', '\0'};

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
void put(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(bytes.data(), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), sizeof(T))) throw std::runtime_error("truncated stream");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

void put_header(std::ostream& out, const Grid& g, Rank rank, std::uint8_t dtype) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint8_t>(out, static_cast<std::uint8_t>(g.dim()));
  put<std::uint8_t>(out, static_cast<std::uint8_t>(rank));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.size()));
  put<double>(out, g.period());
  put<std::uint8_t>(out, dtype);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ostream& out) {
  out.flush();
  if (!out) throw std::runtime_error("write failed");
}

}  // namespace

void write_field(std::ostream& out, const SpectralField& f) {
  put_header(out, f.grid(), f.rank(), 1);
  for (int c = 0; c < f.components(); ++c)
    for (Eigen::Index i = 0; i < f.coeffs().rows(); ++i) {
      put<double>(out, f.coeffs()(i, c).real());
      put<double>(out, f.coeffs()(i, c).imag());
    }
  finish(out);
}

void write_field(std::ostream& out, const PhysicalField& f) {
  put_header(out, f.grid(), f.rank(), 0);
  for (int c = 0; c < f.components(); ++c)
    for (Eigen::Index i = 0; i < f.values().rows(); ++i) put<double>(out, f.values()(i, c));
  finish(out);
}

void write_field(const std::filesystem::path& path, const SpectralField& f) {
  auto out = open_out(path);
  write_field(out, f);
}

void write_field(const std::filesystem::path& path, const PhysicalField& f) {
  auto out = open_out(path);
  write_field(out, f);
}

StoredField read_field(std::istream& in) {
  std::array<char, 6> magic{};
  if (!in.read(magic.data(), magic.size())) throw std::runtime_error("bad magic");
  if (magic != kMagic) throw std::runtime_error("bad magic");
  const int n = get<std::uint8_t>(in);
  const int rank_code = get<std::uint8_t>(in);
  const auto N = get<std::uint32_t>(in);
  const double L = get<double>(in);
  const int dtype = get<std::uint8_t>(in);
  if (rank_code > 2) throw std::runtime_error("bad rank code");
  if (dtype > 1) throw std::runtime_error("bad dtype");
  const Grid g = make_grid(n, static_cast<int>(N), L);
  const Rank rank = static_cast<Rank>(rank_code);
  if (dtype == 0) {
    PhysicalField f(g, rank);
    for (int c = 0; c < f.components(); ++c)
      for (Eigen::Index i = 0; i < f.values().rows(); ++i) f.values()(i, c) = get<double>(in);
    return f;
  }
  SpectralField f(g, rank);
  for (int c = 0; c < f.components(); ++c)
    for (Eigen::Index i = 0; i < f.coeffs().rows(); ++i) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      f.coeffs()(i, c) = Complex(re, im);
    }
  return f;
}

StoredField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_field(in);
}

SpectralField read_spectral(std::istream& in, const Grid& expected) {
  StoredField stored = read_field(in);
  SpectralField f = std::holds_alternative<SpectralField>(stored) ? std::get<SpectralField>(std::move(stored))
                                                                  : forward(std::get<PhysicalField>(stored));
  if (f.grid() != expected) throw std::runtime_error("grid mismatch");
  return f;
}

SpectralField read_spectral(const std::filesystem::path& path, const Grid& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_spectral(in, expected);
}

}  // namespace besov_ns
