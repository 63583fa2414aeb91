#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace cheb::kernels {

// One row of a lattice scan: the values n_j = f(u, v_lo + j), j < count, of a
// quadratic in v described by its first value, first difference and constant
// second difference. The kernel counts j with n_j an odd prime <= x, and, when
// adm_words is given, with bit ((r0 + j) mod adm_mod) of adm_words set.
struct RowSpec {
    std::int64_t val0 = 0;
    std::int64_t d0 = 0;
    std::int64_t dd = 0;
    std::uint64_t count = 0;
    std::uint64_t x = 0;
    const std::uint64_t* prime_words = nullptr;
    const std::uint64_t* adm_words = nullptr;
    std::uint64_t adm_mod = 0;
    std::uint64_t r0 = 0;
};

std::uint64_t count_row_scalar(const RowSpec& row);
std::uint64_t popcount_scalar(const std::uint64_t* words, std::size_t n);

#if defined(CHEB_HAVE_AVX2_TU)
// Falls back to the scalar path when values or differences leave int32 range.
std::uint64_t count_row_avx2(const RowSpec& row);
std::uint64_t popcount_avx2(const std::uint64_t* words, std::size_t n);
#endif

enum class Isa { Scalar, Avx2 };

/// ISA used by the dispatching entry points: AVX2 when compiled in and
/// reported by the CPU, unless CHEB_SIMD=scalar is set in the environment.
Isa active_isa();
std::string_view isa_name(Isa isa);

std::uint64_t count_row(const RowSpec& row);
std::uint64_t popcount(const std::uint64_t* words, std::size_t n);

} // namespace cheb::kernels
