#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace jamfield {

inline constexpr const char* kVersion = "0.1.0";

// Pressure normalization: 94 dB SPL corresponds to amplitude 1.0 (1 Pa).
inline constexpr double kSplReferenceDb = 94.0;

inline double amplitude_from_spl(double spl_db) {
  return std::pow(10.0, (spl_db - kSplReferenceDb) / 20.0);
}
inline double spl_from_amplitude(double amp) {
  return kSplReferenceDb + 20.0 * std::log10(amp);
}
inline double db_from_power(double p) { return 10.0 * std::log10(p); }

// FNV-1a, used for config and artifact checksums (stability, not crypto).
uint64_t fnv1a64(std::string_view bytes);
std::string to_hex(uint64_t v);

std::string read_file(const std::string& path);  // throws on failure

// Write to <path>.tmp then rename, so a failed run never leaves a partial
// artifact at a declared path.
void write_file_atomic(const std::string& path, std::string_view content);

// Static partition of [0, n) over `threads` workers. Each worker writes only
// its own slots; results are identical for any thread count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

int resolve_thread_count(int requested);  // 0 -> env/hardware default

}  // namespace jamfield
