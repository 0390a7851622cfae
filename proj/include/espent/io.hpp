#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "espent/state.hpp"

namespace espent {

/// Reads a state from JSON ({"n", "d", "amplitudes": n rows of d {"re","im"}})
/// or CSV (one row per j, columns re_0, im_0, re_1, im_1, ...). The format is
/// picked by extension, falling back to sniffing for a leading '{'.
/// Throws ParseError, DimensionMismatch, NormError or ZeroState.
PureBipartiteState parse_state_file(const std::filesystem::path& path, bool renormalize = false);

/// Same as parse_state_file for in-memory text.
PureBipartiteState parse_state_json(const std::string& text, bool renormalize = false);
PureBipartiteState parse_state_csv(const std::string& text, bool renormalize = false);

/// Canonical JSON form of a state (sorted keys, two-space indent, trailing
/// newline). Parsing canonical text and serializing again is byte-exact.
std::string serialize_state(const PureBipartiteState& state);

/// Independent standard complex Gaussian amplitudes, globally normalized:
/// the ensemble induced by a Haar-random pure state on C^n (x) C^d.
/// Deterministic for a given (n, d, seed).
PureBipartiteState random_haar_state(std::size_t n, std::size_t d, std::uint64_t seed);

}  // namespace espent
