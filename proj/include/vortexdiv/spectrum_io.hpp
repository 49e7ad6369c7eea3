#ifndef VORTEXDIV_SPECTRUM_IO_HPP
#define VORTEXDIV_SPECTRUM_IO_HPP

#include <string>

#include "vortexdiv/spectrum.hpp"

namespace vortexdiv::io {

// Spectrum JSON layout:
//   {"modes":[{"n":0,"l":1,"re":0.7071067811865476,"im":0.0}, ...]}
// The reader normalizes on construction and rejects duplicate (n, l)
// entries, naming the offending array element in the error message.
ModeSpectrum spectrum_from_json_text(const std::string& text);
std::string spectrum_to_json_text(const ModeSpectrum& s);

ModeSpectrum load_spectrum(const std::string& path);
void save_spectrum(const std::string& path, const ModeSpectrum& s);

// Writes through a temp file in the same directory plus rename, so
// readers never observe a half-written file.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace vortexdiv::io

#endif  // VORTEXDIV_SPECTRUM_IO_HPP
