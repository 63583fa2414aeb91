#include "cheb/prime_cache.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <string>

#include "cheb/errors.hpp"
#include "cheb/kernels.hpp"

namespace cheb {
namespace {

constexpr std::array<char, 8> kMagic = {'C', 'H', 'B', 'P', 'R', 'I', 'M', '\0'};
constexpr std::size_t kHeaderBytes = 40;
constexpr std::uint64_t kSegmentBits = std::uint64_t{1} << 18;

void put_le(unsigned char* p, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

std::uint64_t fnv1a(const std::vector<std::uint64_t>& words) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t w : words) {
        for (int i = 0; i < 8; ++i) {
            h ^= (w >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

std::vector<std::uint32_t> small_primes(std::uint32_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t{i} * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

} // namespace

PrimeCache PrimeCache::build(std::uint64_t limit, std::uint64_t budget_bytes) {
    if (limit < 2) throw DomainError("arith: primes_up_to requires limit >= 2");
    const std::uint64_t nwords = limit / 64 + 1;
    if (nwords > budget_bytes / 8) {
        throw ResourceError("arith: prime bit-set for limit " + std::to_string(limit) + " needs " +
                            std::to_string(nwords * 8) + " bytes, budget is " +
                            std::to_string(budget_bytes));
    }
    PrimeCache pc;
    pc.limit_ = limit;
    pc.words_.assign(nwords, ~std::uint64_t{0});
    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
    while (root * root > limit) --root;
    while ((root + 1) * (root + 1) <= limit) ++root;
    const auto base = small_primes(static_cast<std::uint32_t>(root));

    auto* w = pc.words_.data();
    w[0] &= ~std::uint64_t{3};
    for (std::uint64_t lo = 0; lo <= limit; lo += kSegmentBits) {
        const std::uint64_t hi = std::min(limit + 1, lo + kSegmentBits);
        for (std::uint64_t p : base) {
            if (p * p >= hi) break;
            std::uint64_t m = std::max(p * p, (lo + p - 1) / p * p);
            for (; m < hi; m += p) w[m >> 6] &= ~(std::uint64_t{1} << (m & 63));
        }
    }
    // Clear padding bits above limit so word-level popcounts are exact.
    const unsigned used = static_cast<unsigned>(limit % 64) + 1;
    if (used < 64) w[nwords - 1] &= (std::uint64_t{1} << used) - 1;
    return pc;
}

std::uint64_t PrimeCache::count_up_to(std::uint64_t x) const {
    x = std::min(x, limit_);
    const std::uint64_t full = x / 64;
    std::uint64_t c = kernels::popcount(words_.data(), full);
    const unsigned rem = static_cast<unsigned>(x % 64) + 1;
    const std::uint64_t mask = rem == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
    c += static_cast<std::uint64_t>(__builtin_popcountll(words_[full] & mask));
    return c;
}

std::vector<std::uint64_t> PrimeCache::primes() const {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w) {
            out.push_back(i * 64 + static_cast<std::uint64_t>(__builtin_ctzll(w)));
            w &= w - 1;
        }
    }
    return out;
}

std::uint64_t PrimeCache::checksum() const { return fnv1a(words_); }

void PrimeCache::save(const std::filesystem::path& path) const {
    std::array<unsigned char, kHeaderBytes> hdr{};
    std::memcpy(hdr.data(), kMagic.data(), kMagic.size());
    put_le(hdr.data() + 8, kVersion, 4);
    put_le(hdr.data() + 12, 0, 4);
    put_le(hdr.data() + 16, limit_, 8);
    put_le(hdr.data() + 24, words_.size(), 8);
    put_le(hdr.data() + 32, checksum(), 8);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ResourceError("arith: cannot write prime cache " + tmp);
        out.write(reinterpret_cast<const char*>(hdr.data()), hdr.size());
        std::vector<unsigned char> buf(words_.size() * 8);
        for (std::size_t i = 0; i < words_.size(); ++i) put_le(buf.data() + 8 * i, words_[i], 8);
        out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (!out) throw ResourceError("arith: short write to prime cache " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw ResourceError("arith: cannot move prime cache into place: " + ec.message());
}

PrimeCache PrimeCache::load(const std::filesystem::path& path) {
    const std::string where = "arith: prime cache " + path.string() + ": ";
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError(where + "cannot open");
    std::array<unsigned char, kHeaderBytes> hdr{};
    in.read(reinterpret_cast<char*>(hdr.data()), hdr.size());
    if (!in) throw ResourceError(where + "truncated header");
    if (std::memcmp(hdr.data(), kMagic.data(), kMagic.size()) != 0) throw ResourceError(where + "bad magic");
    if (get_le(hdr.data() + 8, 4) != kVersion) throw ResourceError(where + "unsupported version");
    const std::uint64_t limit = get_le(hdr.data() + 16, 8);
    const std::uint64_t nwords = get_le(hdr.data() + 24, 8);
    if (limit < 2 || nwords != limit / 64 + 1) throw ResourceError(where + "inconsistent limit/word count");
    std::vector<unsigned char> buf(nwords * 8);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!in || in.peek() != std::char_traits<char>::eof()) throw ResourceError(where + "payload size mismatch");
    PrimeCache pc;
    pc.limit_ = limit;
    pc.words_.resize(nwords);
    for (std::size_t i = 0; i < nwords; ++i) pc.words_[i] = get_le(buf.data() + 8 * i, 8);
    if (pc.checksum() != get_le(hdr.data() + 32, 8)) throw ResourceError(where + "checksum mismatch");
    return pc;
}

std::optional<std::filesystem::path> cache_dir_from_env() {
    const char* d = std::getenv("CHEB_CACHE_DIR");
    if (!d || !*d) return std::nullopt;
    return std::filesystem::path(d);
}

std::shared_ptr<const PrimeCache> shared_primes(std::uint64_t limit) {
    static std::mutex mu;
    static std::shared_ptr<const PrimeCache> current;
    std::lock_guard lock(mu);
    limit = std::max<std::uint64_t>(limit, 1024);
    if (current && current->limit() >= limit) return current;
    const auto dir = cache_dir_from_env();
    if (dir) {
        const auto file = *dir / ("primes_" + std::to_string(limit) + ".bin");
        if (std::filesystem::exists(file)) {
            auto loaded = std::make_shared<const PrimeCache>(PrimeCache::load(file));
            if (loaded->limit() < limit) throw ResourceError("arith: prime cache " + file.string() + ": limit below file name");
            current = loaded;
            return current;
        }
        auto built = std::make_shared<const PrimeCache>(PrimeCache::build(limit));
        std::error_code ec;
        std::filesystem::create_directories(*dir, ec);
        if (!ec) built->save(file);
        current = built;
        return current;
    }
    current = std::make_shared<const PrimeCache>(PrimeCache::build(limit));
    return current;
}

} // namespace cheb
