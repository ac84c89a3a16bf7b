#include "mhess/field_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace mhess {

namespace {

constexpr std::array<char, 4> kMagic{'M', 'H', 'S', 'F'};

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; add byte swapping for this target");

template <class T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("field file truncated in header");
  return value;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  auto p = path;
  p += ".meta";
  return p;
}

void write_field_file(const std::filesystem::path& path, const TorusGrid& grid, Domain domain,
                      FieldKind kind, std::span<const double> values,
                      const std::string& description) {
  if (values.size() != grid.size()) throw std::invalid_argument("write_field_file: size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kFieldFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.n()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.points_per_axis()));
  put<std::uint32_t>(out, domain == Domain::periodic ? 0u : 1u);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(kind));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(values.size()));
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed for " + path.string());

  std::ofstream meta(sidecar_path(path));
  meta << "format = MHSF\n"
       << "version = " << kFieldFormatVersion << "\n"
       << "n = " << grid.n() << "\n"
       << "N = " << grid.points_per_axis() << "\n"
       << "h = " << grid.spacing() << "\n"
       << "domain = " << (domain == Domain::periodic ? "periodic" : "chart") << "\n"
       << "kind = " << (kind == FieldKind::potential ? "potential" : "density") << "\n"
       << "points = " << values.size() << "\n"
       << "description = " << description << "\n";
}

void write_field(const std::filesystem::path& path, const TorusField& field,
                 const std::string& description) {
  write_field_file(path, field.grid(), field.domain(), FieldKind::potential, field.values(),
                   description);
}

FieldFile read_field_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open field file " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error(path.string() + " is not an MHSF field file");
  const auto version = get<std::uint32_t>(in);
  if (version != kFieldFormatVersion) {
    throw std::runtime_error("unsupported field format version " + std::to_string(version));
  }
  const auto n = get<std::uint32_t>(in);
  const auto N = get<std::uint32_t>(in);
  const auto domain = get<std::uint32_t>(in);
  const auto kind = get<std::uint32_t>(in);
  const auto count = get<std::uint64_t>(in);
  if (domain > 1 || kind > 1) throw std::runtime_error("bad domain/kind tag in " + path.string());

  TorusGrid grid(static_cast<int>(n), static_cast<int>(N));
  if (count != grid.size()) throw std::runtime_error("value count does not match n and N");
  std::vector<double> values(grid.size());
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!in) throw std::runtime_error("field file truncated: " + path.string());
  return FieldFile{grid, domain == 0 ? Domain::periodic : Domain::chart,
                   static_cast<FieldKind>(kind), std::move(values)};
}

TorusField read_field(const std::filesystem::path& path) {
  FieldFile f = read_field_file(path);
  if (f.kind != FieldKind::potential) {
    throw std::runtime_error(path.string() + " holds a density, not a potential");
  }
  return TorusField(f.grid, f.domain, std::move(f.values));
}

}  // namespace mhess
