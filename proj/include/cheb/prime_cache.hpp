#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

namespace cheb {

/// Primality flags for 0..limit, one bit per integer, bit n of word n/64.
///
/// Immutable after construction and safe to share across threads.
///
/// On-disk layout (all fields little-endian):
///   offset  size  field
///   0       8     magic "CHBPRIM\0"
///   8       4     version (1)
///   12      4     reserved (0)
///   16      8     limit
///   24      8     word count = limit/64 + 1
///   32      8     FNV-1a 64-bit checksum of the payload bytes
///   40      8*W   payload: the bit-set words
class PrimeCache {
public:
    static constexpr std::uint32_t kVersion = 1;
    static constexpr std::uint64_t kDefaultBudgetBytes = std::uint64_t{1} << 30;

    /// Segmented sieve of Eratosthenes. Throws ResourceError when the bit-set
    /// would exceed budget_bytes, DomainError when limit < 2.
    static PrimeCache build(std::uint64_t limit, std::uint64_t budget_bytes = kDefaultBudgetBytes);

    /// Throws ResourceError on I/O failure or any header/checksum mismatch.
    static PrimeCache load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    std::uint64_t limit() const { return limit_; }
    bool test(std::uint64_t n) const {
        return n <= limit_ && ((words_[n >> 6] >> (n & 63)) & 1u);
    }
    const std::vector<std::uint64_t>& words() const { return words_; }
    /// Number of primes <= min(x, limit).
    std::uint64_t count_up_to(std::uint64_t x) const;
    std::vector<std::uint64_t> primes() const;
    std::uint64_t checksum() const;

    bool operator==(const PrimeCache& o) const { return limit_ == o.limit_ && words_ == o.words_; }

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Cache directory from CHEB_CACHE_DIR, if set and non-empty.
std::optional<std::filesystem::path> cache_dir_from_env();

/// Process-wide shared cache covering at least `limit`. Loads primes_<limit>.bin
/// from the cache directory when present, otherwise sieves and (if a directory
/// is configured) persists the result. A corrupt file is an error, not a rebuild.
std::shared_ptr<const PrimeCache> shared_primes(std::uint64_t limit);

} // namespace cheb
