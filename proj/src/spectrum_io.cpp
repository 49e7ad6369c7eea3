#include "vortexdiv/spectrum_io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "vortexdiv/errors.hpp"

namespace vortexdiv::io {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad_entry(size_t i, const std::string& why) {
  throw FormatError("spectrum JSON: modes[" + std::to_string(i) + "]: " + why);
}

}  // namespace

ModeSpectrum spectrum_from_json_text(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("spectrum JSON: parse failure: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("modes") || !doc["modes"].is_array()) {
    throw FormatError("spectrum JSON: expected an object with a \"modes\" array");
  }
  const auto& modes = doc["modes"];
  if (modes.empty()) throw FormatError("spectrum JSON: \"modes\" is empty");

  ModeSpectrum::Coeffs coeffs;
  std::set<std::pair<int, int>> seen;
  for (size_t i = 0; i < modes.size(); ++i) {
    const auto& m = modes[i];
    if (!m.is_object()) bad_entry(i, "not an object");
    for (const char* key : {"n", "l", "re", "im"}) {
      if (!m.contains(key)) bad_entry(i, std::string("missing \"") + key + "\"");
    }
    if (!m["n"].is_number_integer() || !m["l"].is_number_integer()) {
      bad_entry(i, "\"n\" and \"l\" must be integers");
    }
    if (!m["re"].is_number() || !m["im"].is_number()) {
      bad_entry(i, "\"re\" and \"im\" must be numbers");
    }
    const int n = m["n"].get<int>();
    const int l = m["l"].get<int>();
    if (n < 0) bad_entry(i, "\"n\" must be >= 0");
    if (!seen.insert({n, l}).second) {
      bad_entry(i, "duplicate mode (n=" + std::to_string(n) +
                       ", l=" + std::to_string(l) + ")");
    }
    coeffs[ModeIndex{n, l}] = {m["re"].get<double>(), m["im"].get<double>()};
  }
  try {
    return ModeSpectrum(std::move(coeffs));
  } catch (const std::exception& e) {
    throw FormatError(std::string("spectrum JSON: ") + e.what());
  }
}

std::string spectrum_to_json_text(const ModeSpectrum& s) {
  ordered_json modes = ordered_json::array();
  for (const auto& [idx, c] : s.coeffs()) {
    ordered_json m;
    m["n"] = idx.n;
    m["l"] = idx.ell;
    m["re"] = c.real();
    m["im"] = c.imag();
    modes.push_back(std::move(m));
  }
  ordered_json doc;
  doc["modes"] = std::move(modes);
  return doc.dump(2) + "\n";
}

ModeSpectrum load_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open spectrum file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return spectrum_from_json_text(buf.str());
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void save_spectrum(const std::string& path, const ModeSpectrum& s) {
  atomic_write(path, spectrum_to_json_text(s));
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open for writing: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw FormatError("write failure: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw FormatError("cannot move " + tmp.string() + " into place: " +
                      ec.message());
  }
}

}  // namespace vortexdiv::io
