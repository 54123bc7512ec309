#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "macrokin/models.hpp"
#include "macrokin/ssa.hpp"

namespace macrokin {

// Shortest round-trip decimal form (std::to_chars, general format).
std::string format_double(double v);

uint64_t fnv1a64(const std::string& s);
std::string hex64(uint64_t v);  // 16 lowercase hex digits

// "# macrokin <version> config=<hex>\n" - first line of every CSV artifact.
std::string csv_provenance(uint64_t config_hash);

// Writes content to path via a temp file in the same directory plus rename,
// so readers never observe a partial artifact. Throws std::runtime_error.
void atomic_write(const std::string& path, const std::string& content);

// t,<species...> rows over the sample grid.
std::string trajectory_csv(const std::vector<std::string>& species,
                           const Trajectory& traj, uint64_t config_hash);

// <species...>,pi rows over enumerated states.
std::string states_pi_csv(const std::vector<std::string>& species,
                          const std::vector<std::vector<Count>>& states,
                          const std::vector<double>& pi, uint64_t config_hash);

// value,count rows; `value_name` labels the first column (e.g. "s").
std::string histogram_csv(const std::string& value_name,
                          const std::vector<double>& hist, uint64_t config_hash);

// rank,word,count rows.
std::string rank_table_csv(const std::vector<RankEntry>& table, uint64_t config_hash);

}  // namespace macrokin
