#pragma once

#include <filesystem>
#include <string>

#include "cmcx/cmc.hpp"
#include "cmcx/counts.hpp"

namespace cmcx {

/**
 * Chain document (JSON):
 *
 *   {"n_states": int, "n_controls": int,
 *    "transitions": [{"u": int, "i": int, "row": [float, ...]}, ...],
 *    "costs": [{"i": int, "u": int, "g": float}, ...]}
 *
 * Every (u, i) row must appear exactly once; cost entries are optional and
 * default to 0. A top-level "control_mask" key is reserved for per-state
 * control availability and currently ignored. Loading validates
 * row-stochasticity; round-trips are value-identical.
 */
Cmc load_cmc(const std::string& document);
std::string save_cmc(const Cmc& cmc);

/**
 * Count document (JSON):
 *
 *   {"n_states": int, "n_controls": int,
 *    "counts": [{"u": int, "i": int, "j": int, "n": int}, ...]}
 *
 * Only nonzero cells are listed; duplicates are rejected.
 */
CountTensor load_counts(const std::string& document);
std::string save_counts(const CountTensor& counts);

/// Whole-file helpers; failures surface as IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace cmcx
