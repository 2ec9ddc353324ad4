#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace themescope::util {

/// Deterministic random source. The mt19937_64 stream is pinned by the
/// standard; bounded draws below avoid the implementation-defined
/// distributions, so sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::size_t index(std::size_t n);

    /// Uniform double in [0, 1).
    double real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Fixed-point formatting, e.g. format_fixed(0.5, 4) == "0.5000".
std::string format_fixed(double v, int decimals);

/// Shortest decimal form that round-trips an IEEE double exactly ("%.17g").
std::string format_roundtrip(double v);

/// Shortest decimal form that round-trips an IEEE float exactly ("%.9g").
std::string format_roundtrip(float v);

std::uint64_t fnv1a(std::string_view bytes);
std::uint64_t fnv1a_file(const std::filesystem::path& path);

/// Runs fn(i) for i in [0, n). threads <= 1 runs inline. Work is split into
/// contiguous index ranges, so any output written by index is deterministic.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Writes via a temp file in the same directory, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// ASCII-only lowercasing; non-ASCII bytes pass through.
std::string to_lower(std::string_view s);

/// Splits one CSV line on commas. Fields are taken verbatim (the formats this
/// toolkit writes never quote or embed commas).
std::vector<std::string> split_csv(const std::string& line);

std::vector<std::string> split_lines(std::string_view text);

} // namespace themescope::util
