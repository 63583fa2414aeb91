#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cheb/errors.hpp"
#include "cheb/prime_cache.hpp"

using namespace cheb;
namespace fs = std::filesystem;

namespace {

std::vector<bool> simple_sieve(std::uint64_t n) {
    std::vector<bool> is(n + 1, true);
    is[0] = false;
    if (n >= 1) is[1] = false;
    for (std::uint64_t i = 2; i * i <= n; ++i)
        if (is[i])
            for (std::uint64_t j = i * i; j <= n; j += i) is[j] = false;
    return is;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "cheb_prime_cache_test";
    fs::create_directories(dir);
    return dir / name;
}

void flip_byte(const fs::path& p, std::streamoff offset) {
    std::fstream f(p, std::ios::in | std::ios::out | std::ios::binary);
    f.seekg(offset);
    char c = 0;
    f.get(c);
    f.seekp(offset);
    f.put(static_cast<char>(c ^ 0x5a));
}

std::string load_error(const fs::path& p) {
    try {
        PrimeCache::load(p);
    } catch (const ResourceError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("small limits") {
    const auto pc = PrimeCache::build(10);
    CHECK(pc.primes() == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(PrimeCache::build(100).count_up_to(100) == 25);
    CHECK_THROWS_AS(PrimeCache::build(1), DomainError);
}

TEST_CASE("agrees with an independent sieve") {
    const std::uint64_t n = 1000000;
    const auto pc = PrimeCache::build(n);
    const auto ref = simple_sieve(n);
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i <= n; ++i) {
        REQUIRE(pc.test(i) == ref[i]);
        if (ref[i]) ++count;
        if (i % 9973 == 0) REQUIRE(pc.count_up_to(i) == count);
    }
    CHECK(count == 78498);
    CHECK(pc.count_up_to(n) == 78498);
    CHECK(pc.count_up_to(10 * n) == 78498);
    CHECK_FALSE(pc.test(n + 1));
}

TEST_CASE("segment boundaries") {
    for (std::uint64_t n : {63ULL, 64ULL, 65ULL, 262143ULL, 262144ULL, 262145ULL, 524309ULL}) {
        const auto pc = PrimeCache::build(n);
        const auto ref = simple_sieve(n);
        for (std::uint64_t i = 0; i <= n; ++i) REQUIRE(pc.test(i) == ref[i]);
    }
}

TEST_CASE("memory budget") {
    CHECK_THROWS_AS(PrimeCache::build(1000000, 1024), ResourceError);
    CHECK_NOTHROW(PrimeCache::build(1000, 1024));
}

TEST_CASE("save and load round trip") {
    const auto pc = PrimeCache::build(200003);
    const auto p = scratch("roundtrip.bin");
    pc.save(p);
    const auto back = PrimeCache::load(p);
    CHECK(back == pc);
    CHECK(back.checksum() == pc.checksum());
}

TEST_CASE("corrupted files are rejected naming arith") {
    const auto pc = PrimeCache::build(100000);
    const auto p = scratch("corrupt.bin");

    pc.save(p);
    flip_byte(p, 40 + 1000);
    auto msg = load_error(p);
    CHECK(msg.find("arith") == 0);
    CHECK(msg.find("checksum") != std::string::npos);

    pc.save(p);
    flip_byte(p, 0);
    CHECK(load_error(p).find("bad magic") != std::string::npos);

    pc.save(p);
    fs::resize_file(p, fs::file_size(p) - 8);
    CHECK(load_error(p).find("arith") == 0);

    pc.save(p);
    flip_byte(p, 16);
    CHECK(load_error(p).find("arith") == 0);

    CHECK(load_error(scratch("missing.bin")).find("cannot open") != std::string::npos);
}

TEST_CASE("shared cache covers the request") {
    const auto a = shared_primes(5000);
    CHECK(a->limit() >= 5000);
    CHECK(a->count_up_to(5000) == 669);
    const auto b = shared_primes(100);
    CHECK(b->limit() >= 1024);
}
