#pragma once

// Flat binary field files plus a text sidecar. Layout (little-endian):
//
//   offset  size  content
//        0     4  magic "MHSF"
//        4     4  u32 format version (1)
//        8     4  u32 n (complex dimension)
//       12     4  u32 N (points per real axis)
//       16     4  u32 domain: 0 periodic torus, 1 non-periodic chart
//       20     4  u32 kind: 0 potential field, 1 density field
//       24     8  u64 value count (= N^{2n})
//       32   8*c  f64 values, axis 0 (x_1) fastest
//
// The sidecar "<path>.meta" holds the same header as key = value lines plus
// a free-form description.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mhess/torus.hpp"

namespace mhess {

inline constexpr std::uint32_t kFieldFormatVersion = 1;

enum class FieldKind : std::uint32_t { potential = 0, density = 1 };

struct FieldFile {
  TorusGrid grid;
  Domain domain;
  FieldKind kind;
  std::vector<double> values;
};

void write_field_file(const std::filesystem::path& path, const TorusGrid& grid, Domain domain,
                      FieldKind kind, std::span<const double> values,
                      const std::string& description = {});

void write_field(const std::filesystem::path& path, const TorusField& field,
                 const std::string& description = {});

/// Throws std::runtime_error on a malformed or truncated file.
FieldFile read_field_file(const std::filesystem::path& path);

TorusField read_field(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& path);

}  // namespace mhess
