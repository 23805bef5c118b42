#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "condfrag/wavefunction.hpp"

namespace condfrag {

/// FNV-1a 64-bit over raw bytes (config provenance tag in output headers).
std::uint64_t fnv1a64(std::string_view bytes);

/// Full-precision round-trippable decimal rendering ("%.17g").
std::string fmt_full(double x);

/// "# condfrag <version> config=<16-hex-digit hash>"
std::string provenance_line(std::uint64_t config_hash);

/// Text wavefunction format:
///   # condfrag-wf v1 n=<n_points> xmin=<f> xmax=<f>
///   <x> <value>            (real)
///   <x> <re> <im>          (complex variant)
/// Readers skip additional leading '#' lines (provenance comments).
void write_wavefunction(const std::string& path, const RealWavefunction& phi,
                        const std::string& extra_comment = "");
void write_wavefunction(const std::string& path, const ComplexWavefunction& phi,
                        const std::string& extra_comment = "");

RealWavefunction read_wavefunction(const std::string& path);
ComplexWavefunction read_wavefunction_complex(const std::string& path);

/// Reads a whole file; throws on failure.
std::string slurp_file(const std::string& path);

} // namespace condfrag
