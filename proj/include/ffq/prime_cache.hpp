#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "ffq/polynomial.hpp"

namespace ffq {

// On-disk table of the monic irreducibles of one degree:
//   "FFQP" | u16 version | u32 q | u32 n | u64 count | count * n bytes
// all little-endian; each record holds c_0..c_{n-1} of one prime, one byte
// per coefficient, records in canonical order. Requires q < 256.
inline constexpr std::uint16_t prime_cache_version = 1;

std::filesystem::path prime_cache_path(const std::filesystem::path& dir, std::uint32_t q, int n);

// Writes the table atomically (temporary file, then rename).
std::filesystem::path write_prime_cache(const std::filesystem::path& dir, std::uint32_t q, int n,
                                        const std::vector<Polynomial>& primes);

// Reads and validates a table: magic, version, header fields, exact length,
// count = pi_A(n) and strictly increasing canonical order. Returns nullopt on
// any mismatch or if the file is missing.
std::optional<std::vector<Polynomial>> read_prime_cache(const std::filesystem::path& dir,
                                                        std::uint32_t q, int n);

// Loads the table if it validates, otherwise enumerates, writes and returns
// it. A corrupt file is regenerated with a warning on stderr.
std::vector<Polynomial> cache_primes(std::uint32_t q, int n, const std::filesystem::path& dir);

// Process-wide prime source used by the analysis code. Memoised in memory;
// also backed by disk when a directory has been configured.
void set_prime_cache_directory(std::optional<std::filesystem::path> dir);
std::optional<std::filesystem::path> prime_cache_directory();
const std::vector<Polynomial>& primes_of_degree(std::uint32_t q, int n);

}  // namespace ffq
