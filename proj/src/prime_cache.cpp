#include "ffq/prime_cache.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "ffq/arith.hpp"
#include "ffq/family.hpp"

namespace ffq {

namespace {

constexpr std::array<char, 4> magic{'F', 'F', 'Q', 'P'};
constexpr std::size_t header_size = 4 + 2 + 4 + 4 + 8;

template <class T>
void put_le(std::string& out, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

template <class T>
T get_le(const unsigned char* p) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(p[i]) << (8 * i);
    return v;
}

void check_cacheable(std::uint32_t q, int n) {
    if (q >= 256) throw std::domain_error("prime cache stores one byte per coefficient; q must be < 256");
    if (n < 1) throw std::domain_error("prime cache needs n >= 1");
}

}  // namespace

std::filesystem::path prime_cache_path(const std::filesystem::path& dir, std::uint32_t q, int n) {
    return dir / ("primes_q" + std::to_string(q) + "_n" + std::to_string(n) + ".ffqp");
}

std::filesystem::path write_prime_cache(const std::filesystem::path& dir, std::uint32_t q, int n,
                                        const std::vector<Polynomial>& primes) {
    check_cacheable(q, n);
    std::string bytes(magic.begin(), magic.end());
    put_le<std::uint16_t>(bytes, prime_cache_version);
    put_le<std::uint32_t>(bytes, q);
    put_le<std::uint32_t>(bytes, static_cast<std::uint32_t>(n));
    put_le<std::uint64_t>(bytes, primes.size());
    for (const auto& p : primes) {
        if (p.field_order() != q || !p.is_monic() || p.degree() != n) {
            throw std::invalid_argument("write_prime_cache: record is not a monic degree-n polynomial");
        }
        for (int i = 0; i < n; ++i) bytes.push_back(static_cast<char>(p.coeff(i)));
    }

    std::filesystem::create_directories(dir);
    const auto target = prime_cache_path(dir, q, n);
    auto tmp = target;
    tmp += ".tmp." + std::to_string(reinterpret_cast<std::uintptr_t>(&bytes));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
    return target;
}

std::optional<std::vector<Polynomial>> read_prime_cache(const std::filesystem::path& dir,
                                                        std::uint32_t q, int n) {
    check_cacheable(q, n);
    const auto path = prime_cache_path(dir, q, n);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < header_size) return std::nullopt;
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    if (std::memcmp(p, magic.data(), magic.size()) != 0) return std::nullopt;
    if (get_le<std::uint16_t>(p + 4) != prime_cache_version) return std::nullopt;
    if (get_le<std::uint32_t>(p + 6) != q) return std::nullopt;
    if (get_le<std::uint32_t>(p + 10) != static_cast<std::uint32_t>(n)) return std::nullopt;
    const auto count = get_le<std::uint64_t>(p + 14);
    if (count != prime_count(q, n)) return std::nullopt;
    if (bytes.size() != header_size + count * static_cast<std::uint64_t>(n)) return std::nullopt;

    std::vector<Polynomial> primes;
    primes.reserve(count);
    std::optional<std::uint64_t> last_rank;
    for (std::uint64_t r = 0; r < count; ++r) {
        const unsigned char* rec = p + header_size + r * static_cast<std::uint64_t>(n);
        std::vector<Coeff> c(static_cast<std::size_t>(n) + 1, 1);
        for (int i = 0; i < n; ++i) {
            if (rec[i] >= q) return std::nullopt;
            c[static_cast<std::size_t>(i)] = rec[i];
        }
        Polynomial f(q, std::move(c));
        const std::uint64_t rank = rank_of_monic(f);
        if (last_rank && rank <= *last_rank) return std::nullopt;
        last_rank = rank;
        primes.push_back(std::move(f));
    }
    return primes;
}

std::vector<Polynomial> cache_primes(std::uint32_t q, int n, const std::filesystem::path& dir) {
    check_cacheable(q, n);
    if (auto loaded = read_prime_cache(dir, q, n)) return std::move(*loaded);
    if (std::filesystem::exists(prime_cache_path(dir, q, n))) {
        std::cerr << "warning: prime cache " << prime_cache_path(dir, q, n).string()
                  << " failed validation; regenerating\n";
    }
    auto primes = enumerate_family(FamilySpec{FamilyKind::P, q, n});
    write_prime_cache(dir, q, n, primes);
    return primes;
}

namespace {

struct PrimeStore {
    std::mutex mutex;
    std::optional<std::filesystem::path> dir;
    std::map<std::pair<std::uint32_t, int>, std::unique_ptr<const std::vector<Polynomial>>> tables;
};

PrimeStore& store() {
    static PrimeStore s;
    return s;
}

}  // namespace

void set_prime_cache_directory(std::optional<std::filesystem::path> dir) {
    std::lock_guard lock(store().mutex);
    store().dir = std::move(dir);
}

std::optional<std::filesystem::path> prime_cache_directory() {
    std::lock_guard lock(store().mutex);
    return store().dir;
}

const std::vector<Polynomial>& primes_of_degree(std::uint32_t q, int n) {
    auto& s = store();
    std::lock_guard lock(s.mutex);
    auto& slot = s.tables[{q, n}];
    if (!slot) {
        if (s.dir && q < 256) {
            slot = std::make_unique<const std::vector<Polynomial>>(cache_primes(q, n, *s.dir));
        } else {
            slot = std::make_unique<const std::vector<Polynomial>>(enumerate_family(FamilySpec{FamilyKind::P, q, n}));
        }
    }
    return *slot;
}

}  // namespace ffq
