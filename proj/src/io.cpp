#include "rotowave/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rotowave::io {

static_assert(std::endian::native == std::endian::little, "snapshot format assumes a little-endian host");

namespace {

constexpr std::array<char, 8> kMagic = {'R', 'W', 'S', 'N', 'A', 'P', '0', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr char kFieldNames[16] = "v1,v2,v3,p";

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

template <typename T>
void put(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("snapshot file truncated");
  return value;
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return kMissing;
  if (value == 0) return "0";  // no "-0"
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                    std::chars_format::general, 17);
  return {buf.data(), result.ptr};
}

std::string format_number(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string(kMissing);
}

std::optional<double> parse_number(const std::string& text) {
  if (text == kMissing) return std::nullopt;
  double value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size())
    throw std::invalid_argument("not a number: '" + text + "'");
  return value;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

void write_probe_csv(const std::filesystem::path& path, const std::vector<ProbeSample>& probe) {
  auto out = open_output(path);
  write_csv_row(out, {"t", "v1", "v2", "v3", "p"});
  for (const auto& s : probe) {
    write_csv_row(out, {format_number(s.t), format_number(s.values(0)), format_number(s.values(1)),
                        format_number(s.values(2)), format_number(s.values(3))});
  }
}

void write_energy_csv(const std::filesystem::path& path, const std::vector<EnergySample>& energy) {
  auto out = open_output(path);
  write_csv_row(out, {"t", "E"});
  for (const auto& s : energy) write_csv_row(out, {format_number(s.t), format_number(s.energy)});
}

void write_snapshots(const std::filesystem::path& path, const Grid& grid,
                     const std::vector<FieldState>& snapshots) {
  auto out = open_output(path, std::ios::out | std::ios::binary);
  out.write(kMagic.data(), kMagic.size());
  put(out, kVersion);
  put(out, static_cast<std::uint32_t>(grid.n1));
  put(out, static_cast<std::uint32_t>(grid.n3));
  put(out, std::uint32_t{4});
  put(out, static_cast<std::uint64_t>(snapshots.size()));
  put(out, grid.L1);
  put(out, grid.L3);
  out.write(kFieldNames, sizeof(kFieldNames));
  for (const auto& s : snapshots) {
    put(out, s.t);
    for (Field f : {Field::v1, Field::v2, Field::v3, Field::p}) {
      const RealField& u = s.field(f);
      if (u.rows() != grid.n1 || u.cols() != grid.n3)
        throw std::invalid_argument("write_snapshots: field shape does not match the grid");
      out.write(reinterpret_cast<const char*>(u.data()),
                static_cast<std::streamsize>(u.size() * sizeof(double)));
    }
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

SnapshotFile read_snapshots(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error(path.string() + " is not a snapshot file");
  if (get<std::uint32_t>(in) != kVersion) throw std::runtime_error("unsupported snapshot version");

  SnapshotFile file;
  file.grid.n1 = static_cast<int>(get<std::uint32_t>(in));
  file.grid.n3 = static_cast<int>(get<std::uint32_t>(in));
  if (get<std::uint32_t>(in) != 4) throw std::runtime_error("unexpected field count");
  const auto count = get<std::uint64_t>(in);
  file.grid.L1 = get<double>(in);
  file.grid.L3 = get<double>(in);
  char names[16];
  in.read(names, sizeof(names));
  if (!in || std::memcmp(names, kFieldNames, sizeof(names)) != 0)
    throw std::runtime_error("unexpected field order");
  file.grid.validate();

  file.snapshots.reserve(count);
  for (std::uint64_t n = 0; n < count; ++n) {
    FieldState s = FieldState::zeros(file.grid, get<double>(in));
    for (Field f : {Field::v1, Field::v2, Field::v3, Field::p}) {
      RealField& u = s.field(f);
      in.read(reinterpret_cast<char*>(u.data()), static_cast<std::streamsize>(u.size() * sizeof(double)));
      if (!in) throw std::runtime_error("snapshot file truncated");
    }
    file.snapshots.push_back(std::move(s));
  }
  return file;
}

}  // namespace rotowave::io
