#include "fracdev/path_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "fracdev/error.hpp"

namespace fracdev::io {

using process::Grid;
using process::Path;

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  require(res.ec == std::errc{} && res.ptr == text.data() + text.size(), errc::io,
          "cannot parse number '" + std::string(text) + "'");
  return value;
}

namespace {

unsigned dyadic_level(std::size_t cells) {
  require(cells >= 1 && std::has_single_bit(cells), errc::non_dyadic,
          "path has " + std::to_string(cells) + " cells; a dyadic grid needs 2^J");
  return static_cast<unsigned>(std::countr_zero(cells));
}

constexpr std::array<char, 8> kMagic = {'F', 'R', 'D', 'V', 'P', 'T', 'H', '1'};

template <class T>
void put(std::ostream& out, T value) {
  static_assert(std::endian::native == std::endian::little, "binary path format assumes little-endian hosts");
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  require(static_cast<bool>(in), errc::io, "truncated binary path file");
  return value;
}

}  // namespace

void write_csv(const Path& path, std::ostream& out) {
  out << "t,value\n";
  for (std::size_t k = 0; k < path.values.size(); ++k) {
    out << format_double(path.grid.time(k)) << ',' << format_double(path.values[k]) << '\n';
  }
  require(static_cast<bool>(out), errc::io, "failed writing CSV path");
}

Path read_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), errc::io, "empty CSV path file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == "t,value", errc::io, "CSV path must start with header 't,value'");
  std::vector<double> times;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    require(comma != std::string::npos, errc::io, "malformed CSV row '" + line + "'");
    times.push_back(parse_double(std::string_view(line).substr(0, comma)));
    values.push_back(parse_double(std::string_view(line).substr(comma + 1)));
  }
  require(times.size() >= 2, errc::io, "CSV path needs at least two rows");
  const Grid grid(dyadic_level(times.size() - 1), times.back());
  for (std::size_t k = 0; k < times.size(); ++k) {
    require(times[k] == grid.time(k), errc::off_grid,
            "row " + std::to_string(k) + ": t = " + format_double(times[k]) + " is not on the uniform grid");
  }
  return Path{grid, std::move(values), std::nullopt, std::nullopt};
}

void write_binary(const Path& path, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, path.grid.level());
  put<double>(out, path.grid.horizon());
  put<std::uint8_t>(out, path.params.has_value());
  if (path.params) {
    put<std::uint8_t>(out, static_cast<std::uint8_t>(path.params->kind()));
    put<double>(out, path.params->alpha().value());
    put<double>(out, path.params->hurst());
    put<std::uint8_t>(out, path.params->normalize_gaussian());
  }
  put<std::uint64_t>(out, path.values.size());
  for (double v : path.values) put<double>(out, v);
  require(static_cast<bool>(out), errc::io, "failed writing binary path");
}

Path read_binary(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  require(static_cast<bool>(in) && magic == kMagic, errc::io, "not a fracdev binary path file");
  const auto level = get<std::uint32_t>(in);
  const auto horizon = get<double>(in);
  Path path{Grid(level, horizon), {}, std::nullopt, std::nullopt};
  if (get<std::uint8_t>(in)) {
    const auto kind = get<std::uint8_t>(in);
    require(kind <= static_cast<std::uint8_t>(process::Kind::balanced), errc::io, "unknown process kind in file");
    const auto alpha = get<double>(in);
    const auto hurst = get<double>(in);
    const auto normalize = get<std::uint8_t>(in);
    path.params.emplace(static_cast<process::Kind>(kind), alpha, hurst, normalize != 0);
  }
  const auto count = get<std::uint64_t>(in);
  require(count == path.grid.points(), errc::io, "value count does not match the grid header");
  path.values.resize(count);
  for (auto& v : path.values) v = get<double>(in);
  return path;
}

void save_path(const Path& path, const std::filesystem::path& file) {
  const bool csv = file.extension() == ".csv";
  std::ofstream out(file, csv ? std::ios::out : std::ios::out | std::ios::binary);
  require(static_cast<bool>(out), errc::io, "cannot open '" + file.string() + "' for writing");
  if (csv) {
    write_csv(path, out);
  } else {
    write_binary(path, out);
  }
}

Path load_path(const std::filesystem::path& file) {
  const bool csv = file.extension() == ".csv";
  std::ifstream in(file, csv ? std::ios::in : std::ios::in | std::ios::binary);
  require(static_cast<bool>(in), errc::io, "cannot open '" + file.string() + "'");
  return csv ? read_csv(in) : read_binary(in);
}

}  // namespace fracdev::io
