#include <cstdlib>
#include <cstring>

#include "cheb/kernels.hpp"

namespace cheb::kernels {
namespace {

Isa detect() {
    const char* env = std::getenv("CHEB_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
#if defined(CHEB_HAVE_AVX2_TU)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
    return Isa::Scalar;
}

} // namespace

Isa active_isa() {
    static const Isa isa = detect();
    return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

std::uint64_t count_row(const RowSpec& row) {
#if defined(CHEB_HAVE_AVX2_TU)
    if (active_isa() == Isa::Avx2) return count_row_avx2(row);
#endif
    return count_row_scalar(row);
}

std::uint64_t popcount(const std::uint64_t* words, std::size_t n) {
#if defined(CHEB_HAVE_AVX2_TU)
    if (active_isa() == Isa::Avx2) return popcount_avx2(words, n);
#endif
    return popcount_scalar(words, n);
}

} // namespace cheb::kernels
