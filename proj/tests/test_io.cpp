#include <unistd.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "vortexdiv/errors.hpp"
#include "vortexdiv/spectrum.hpp"
#include "vortexdiv/spectrum_io.hpp"

using namespace vortexdiv;
using cplx = std::complex<double>;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("vortexdiv_io_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("parses the canonical single-mode document") {
  const std::string text =
      R"({"modes":[{"n":0,"l":1,"re":0.7071067811865476,"im":0.0}]})";
  const ModeSpectrum s = io::spectrum_from_json_text(text);
  CHECK(s.coeffs().size() == 1);
  CHECK(std::abs(s.at(0, 1) - cplx(1.0, 0.0)) < 1e-15);  // renormalized
}

TEST_CASE("round trip preserves coefficients") {
  const ModeSpectrum s({{ModeIndex{0, 1}, cplx(0.6, 0.0)},
                        {ModeIndex{2, -3}, cplx(-0.3, 0.44)},
                        {ModeIndex{1, 1}, cplx(0.0, -0.58)}});
  const ModeSpectrum back = io::spectrum_from_json_text(io::spectrum_to_json_text(s));
  CHECK(back.coeffs().size() == s.coeffs().size());
  for (const auto& [idx, c] : s.coeffs()) {
    CHECK(std::abs(back.at(idx.n, idx.ell) - c) < 1e-15);
  }
}

TEST_CASE("reader normalizes on load") {
  const std::string text =
      R"({"modes":[{"n":0,"l":0,"re":3.0,"im":0.0},{"n":1,"l":0,"re":0.0,"im":4.0}]})";
  const ModeSpectrum s = io::spectrum_from_json_text(text);
  CHECK(std::abs(s.at(0, 0) - cplx(0.6, 0.0)) < 1e-15);
  CHECK(std::abs(s.at(1, 0) - cplx(0.0, 0.8)) < 1e-15);
}

TEST_CASE("malformed documents are rejected with the entry named") {
  using io::spectrum_from_json_text;
  CHECK_THROWS_AS(spectrum_from_json_text("{"), FormatError);
  CHECK_THROWS_AS(spectrum_from_json_text(R"({"nodes":[]})"), FormatError);
  CHECK_THROWS_AS(spectrum_from_json_text(R"({"modes":[]})"), FormatError);
  CHECK_THROWS_AS(
      spectrum_from_json_text(R"({"modes":[{"n":0,"l":0,"re":1.0}]})"),
      FormatError);
  CHECK_THROWS_AS(
      spectrum_from_json_text(
          R"({"modes":[{"n":0.5,"l":0,"re":1.0,"im":0.0}]})"),
      FormatError);
  CHECK_THROWS_AS(
      spectrum_from_json_text(
          R"({"modes":[{"n":-1,"l":0,"re":1.0,"im":0.0}]})"),
      FormatError);
  CHECK_THROWS_AS(
      spectrum_from_json_text(
          R"({"modes":[{"n":0,"l":0,"re":0.0,"im":0.0}]})"),
      FormatError);  // zero norm surfaces as a format problem

  // Duplicate entries name the offending index.
  const std::string dup =
      R"({"modes":[{"n":0,"l":1,"re":1.0,"im":0.0},
                   {"n":0,"l":1,"re":0.5,"im":0.0}]})";
  try {
    spectrum_from_json_text(dup);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("modes[1]") != std::string::npos);
  }
}

TEST_CASE("file round trip and atomic replacement") {
  TempDir dir;
  const std::string path = (dir.path / "spectrum.json").string();
  const ModeSpectrum s({{ModeIndex{0, 2}, cplx(1.0, 0.0)},
                        {ModeIndex{3, 2}, cplx(0.0, 1.0)}});
  io::save_spectrum(path, s);
  CHECK(fs::exists(path));
  CHECK_FALSE(fs::exists(path + ".tmp"));
  const ModeSpectrum back = io::load_spectrum(path);
  for (const auto& [idx, c] : s.coeffs()) {
    CHECK(std::abs(back.at(idx.n, idx.ell) - c) < 1e-15);
  }

  // Overwrite leaves a complete file and no droppings.
  io::atomic_write(path, "{\"modes\":[{\"n\":0,\"l\":0,\"re\":1.0,\"im\":0.0}]}");
  CHECK_FALSE(fs::exists(path + ".tmp"));
  CHECK(io::load_spectrum(path).coeffs().size() == 1);

  CHECK_THROWS_AS(io::load_spectrum((dir.path / "absent.json").string()),
                  FormatError);
  // Error messages carry the path for file-level failures.
  try {
    io::load_spectrum(path + ".missing");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find(".missing") != std::string::npos);
  }
}

}  // TEST_SUITE
