#include "macrokin/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "macrokin/version.hpp"

namespace macrokin {

std::string format_double(double v) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

std::string csv_provenance(uint64_t config_hash) {
  return std::string("# macrokin ") + MACROKIN_VERSION + " config=" +
         hex64(config_hash) + "\n";
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed: " + path);
  }
}

std::string trajectory_csv(const std::vector<std::string>& species,
                           const Trajectory& traj, uint64_t config_hash) {
  std::string out = csv_provenance(config_hash);
  out += "t";
  for (const auto& s : species) {
    out += ',';
    out += s;
  }
  out += '\n';
  for (const auto& sample : traj.samples) {
    out += format_double(sample.t);
    for (Count c : sample.counts) {
      out += ',';
      out += std::to_string(c);
    }
    out += '\n';
  }
  return out;
}

std::string states_pi_csv(const std::vector<std::string>& species,
                          const std::vector<std::vector<Count>>& states,
                          const std::vector<double>& pi, uint64_t config_hash) {
  if (states.size() != pi.size())
    throw std::invalid_argument("states_pi_csv: states/pi length mismatch");
  std::string out = csv_provenance(config_hash);
  for (const auto& s : species) {
    out += s;
    out += ',';
  }
  out += "pi\n";
  for (std::size_t k = 0; k < states.size(); ++k) {
    for (Count c : states[k]) {
      out += std::to_string(c);
      out += ',';
    }
    out += format_double(pi[k]);
    out += '\n';
  }
  return out;
}

std::string histogram_csv(const std::string& value_name,
                          const std::vector<double>& hist, uint64_t config_hash) {
  std::string out = csv_provenance(config_hash);
  out += value_name + ",count\n";
  for (std::size_t s = 0; s < hist.size(); ++s) {
    out += std::to_string(s);
    out += ',';
    out += format_double(hist[s]);
    out += '\n';
  }
  return out;
}

std::string rank_table_csv(const std::vector<RankEntry>& table,
                           uint64_t config_hash) {
  std::string out = csv_provenance(config_hash);
  out += "rank,word,count\n";
  for (std::size_t r = 0; r < table.size(); ++r) {
    out += std::to_string(r + 1);
    out += ',';
    out += table[r].word;
    out += ',';
    out += std::to_string(table[r].count);
    out += '\n';
  }
  return out;
}

}  // namespace macrokin
