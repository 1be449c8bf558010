#pragma once

/// @file io.hpp
/// Persistence: self-describing binary field container, CSV writers for
/// radial profiles and evolution traces, and atomic JSON output (temp file +
/// rename, so a killed run never leaves a partial record).

#include <string>

#include <json.hpp>

#include "fslab/evolution.hpp"
#include "fslab/field.hpp"

namespace fslab::io {

/// Container layout (little-endian): "FSLB" | u32 version | u32 dim | u32 n |
/// f64 L | n^dim interleaved (re, im) f64 pairs.
void write_field(const std::string& path, const Field& f);
Field read_field(const std::string& path);

void write_profile_csv(const std::string& path, const Field& f);
void write_trace_csv(const std::string& path, const EvolutionTrace& tr);

void write_json_atomic(const std::string& path, const nlohmann::json& j);
void write_text_atomic(const std::string& path, const std::string& text);

/// Full double round-trip formatting (%.17g).
std::string fmt_double(double v);

} // namespace fslab::io
