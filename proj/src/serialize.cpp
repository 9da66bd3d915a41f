#include "wglab/serialize.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace wglab {

namespace {

constexpr char kMagic[4] = {'W', 'G', 'F', '1'};
constexpr uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("load_field: truncated stream");
  return v;
}

} // namespace

void save_field(const SpectralField& f, std::ostream& os) {
  os.write(kMagic, 4);
  put<uint32_t>(os, kVersion);
  put<double>(os, f.geometry.lambda);
  put<double>(os, f.geometry.x_half_length);
  put<uint32_t>(os, static_cast<uint32_t>(f.geometry.nx));
  put<uint32_t>(os, static_cast<uint32_t>(f.geometry.ny));
  for (const complexd& z : f.coeffs) {
    put<float>(os, static_cast<float>(z.real()));
    put<float>(os, static_cast<float>(z.imag()));
  }
  if (!os) throw std::runtime_error("save_field: write failure");
}

void save_field(const SpectralField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_field: cannot open " + path);
  save_field(f, os);
}

SpectralField load_field(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("load_field: bad magic");
  uint32_t version = get<uint32_t>(is);
  if (version != kVersion) throw std::runtime_error("load_field: unsupported version");
  WaveguideGeometry g;
  g.lambda = get<double>(is);
  g.x_half_length = get<double>(is);
  g.nx = static_cast<int>(get<uint32_t>(is));
  g.ny = static_cast<int>(get<uint32_t>(is));
  g.validate();
  SpectralField f(g);
  for (complexd& z : f.coeffs) {
    float re = get<float>(is);
    float im = get<float>(is);
    z = complexd(re, im);
  }
  return f;
}

SpectralField load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_field: cannot open " + path);
  return load_field(is);
}

void write_field_csv(const SpectralField& f, std::ostream& os) {
  os << "index,mu,k,re,im\n";
  const WaveguideGeometry& g = f.geometry;
  char buf[256];
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      const complexd& z = f.at(ix, iy);
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%d,%.17g,%.17g\n",
                    ix * g.ny + iy, g.mu(ix), g.k(iy), z.real(), z.imag());
      os << buf;
    }
}

void write_field_csv(const SpectralField& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_field_csv: cannot open " + path);
  write_field_csv(f, os);
}

} // namespace wglab
