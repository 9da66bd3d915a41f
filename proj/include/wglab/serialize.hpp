#ifndef WGLAB_SERIALIZE_HPP
#define WGLAB_SERIALIZE_HPP

#include <iosfwd>
#include <string>

#include "wglab/field.hpp"

namespace wglab {

// Flat binary field container, little-endian:
//   magic "WGF1" | u32 version | f64 lambda | f64 x_half_length | u32 nx | u32 ny
// followed by nx*ny row-major coefficients as float32 (re, im) pairs.
void save_field(const SpectralField& f, std::ostream& os);
void save_field(const SpectralField& f, const std::string& path);
SpectralField load_field(std::istream& is);
SpectralField load_field(const std::string& path);

// Debug dump: one row per coefficient, columns index, mu, k, re, im.
void write_field_csv(const SpectralField& f, std::ostream& os);
void write_field_csv(const SpectralField& f, const std::string& path);

} // namespace wglab

#endif
