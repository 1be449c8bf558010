#include "fslab/io.hpp"

#include "fslab/fieldops.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fslab::io {

static_assert(std::endian::native == std::endian::little,
              "field container assumes a little-endian host");

namespace {
constexpr char kMagic[4] = {'F', 'S', 'L', 'B'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ofstream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
std::uint32_t get_u32(std::ifstream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}
} // namespace

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field(const std::string& path, const Field& f) {
  f.check_valid();
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("write_field: cannot open " + tmp);
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(f.grid.dim));
    put_u32(os, static_cast<std::uint32_t>(f.grid.n));
    const double L = f.grid.L;
    os.write(reinterpret_cast<const char*>(&L), sizeof L);
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
    if (!os) throw std::runtime_error("write_field: short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Field read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_field: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("read_field: bad magic in " + path);
  const std::uint32_t version = get_u32(is);
  if (version != kVersion) throw std::runtime_error("read_field: unsupported version");
  GridSpec g;
  g.dim = static_cast<int>(get_u32(is));
  g.n = static_cast<int>(get_u32(is));
  is.read(reinterpret_cast<char*>(&g.L), sizeof g.L);
  g.validate();
  std::vector<cplx> vals(g.total());
  is.read(reinterpret_cast<char*>(vals.data()),
          static_cast<std::streamsize>(vals.size() * sizeof(cplx)));
  if (!is) throw std::runtime_error("read_field: truncated payload in " + path);
  return Field(g, std::move(vals));
}

void write_profile_csv(const std::string& path, const Field& f) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw std::runtime_error("write_profile_csv: cannot open " + tmp);
    os << "r,re,im\n";
    for (const auto& row : radial_profile(f))
      os << fmt_double(row[0]) << ',' << fmt_double(row[1]) << ',' << fmt_double(row[2]) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

void write_trace_csv(const std::string& path, const EvolutionTrace& tr) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw std::runtime_error("write_trace_csv: cannot open " + tmp);
    os << "t,mass,energy,hs,dist,k_sign\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      os << fmt_double(tr.times[i]) << ',' << fmt_double(tr.mass_series[i]) << ','
         << fmt_double(tr.energy_series[i]) << ',' << fmt_double(tr.hs_series[i]) << ',';
      if (i < tr.orbital_distance_series.size()) os << fmt_double(tr.orbital_distance_series[i]);
      os << ',';
      if (i < tr.K_flags.size()) os << tr.K_flags[i];
      os << '\n';
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_json_atomic(const std::string& path, const nlohmann::json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw std::runtime_error("write_json_atomic: cannot open " + tmp);
    os << j.dump(2) << '\n';
    if (!os) throw std::runtime_error("write_json_atomic: short write");
  }
  std::filesystem::rename(tmp, path);
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw std::runtime_error("write_text_atomic: cannot open " + tmp);
    os << text;
    if (!os) throw std::runtime_error("write_text_atomic: short write");
  }
  std::filesystem::rename(tmp, path);
}

} // namespace fslab::io
