#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>

#include "cheb/kernels.hpp"

namespace cheb::kernels {
namespace {

using i128 = __int128;

i128 value_at(const RowSpec& row, i128 j) {
    return row.val0 + j * row.d0 + row.dd * (j * (j - 1) / 2);
}

// Every lane value and lane step that can be live must fit in int32.
bool fits_int32(const RowSpec& row) {
    constexpr i128 kMax = std::numeric_limits<std::int32_t>::max() / 2;
    if (row.x >= static_cast<std::uint64_t>(kMax)) return false;
    if (row.adm_words && row.adm_mod >= static_cast<std::uint64_t>(kMax)) return false;
    const i128 n = static_cast<i128>(row.count);
    auto within = [&](i128 v) { return v > -kMax && v < kMax; };
    if (!within(value_at(row, 0)) || !within(value_at(row, n - 1))) return false;
    if (row.dd != 0) {
        // Vertex of the parabola in j.
        i128 jv = (-static_cast<i128>(row.d0)) / row.dd;
        jv = std::clamp<i128>(jv, 0, n - 1);
        for (i128 j : {jv - 1, jv, jv + 1}) {
            if (j >= 0 && j < n && !within(value_at(row, j))) return false;
        }
    }
    for (i128 j : {i128{0}, n + 8}) {
        const i128 step = 8 * (row.d0 + j * row.dd) + 28 * static_cast<i128>(row.dd);
        if (!within(step)) return false;
    }
    return within(64 * static_cast<i128>(row.dd));
}

inline std::uint64_t hsum_epi32(__m256i v) {
    alignas(32) std::int32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
    std::uint64_t s = 0;
    for (std::int32_t l : lanes) s += static_cast<std::uint32_t>(l);
    return s;
}

} // namespace

std::uint64_t count_row_avx2(const RowSpec& row) {
    if (row.count < 16 || !fits_int32(row)) return count_row_scalar(row);

    const std::uint64_t blocks = row.count / 8;
    const auto* pw = reinterpret_cast<const int*>(row.prime_words);
    const auto* aw = reinterpret_cast<const int*>(row.adm_words);

    alignas(32) std::int32_t v0[8], s0[8], rr[8];
    for (int k = 0; k < 8; ++k) {
        v0[k] = static_cast<std::int32_t>(value_at(row, k));
        s0[k] = static_cast<std::int32_t>(8 * (row.d0 + k * row.dd) + 28 * row.dd);
        rr[k] = row.adm_words ? static_cast<std::int32_t>((row.r0 + k) % row.adm_mod) : 0;
    }
    __m256i val = _mm256_load_si256(reinterpret_cast<const __m256i*>(v0));
    __m256i step = _mm256_load_si256(reinterpret_cast<const __m256i*>(s0));
    __m256i r = _mm256_load_si256(reinterpret_cast<const __m256i*>(rr));
    const __m256i step_inc = _mm256_set1_epi32(static_cast<std::int32_t>(64 * row.dd));
    const __m256i two = _mm256_set1_epi32(2);
    const __m256i xp1 = _mm256_set1_epi32(static_cast<std::int32_t>(row.x + 1));
    const __m256i low5 = _mm256_set1_epi32(31);
    const __m256i one = _mm256_set1_epi32(1);
    const std::int32_t M = row.adm_words ? static_cast<std::int32_t>(row.adm_mod) : 1;
    const __m256i r_inc = _mm256_set1_epi32(static_cast<std::int32_t>(8 % M));
    const __m256i mod = _mm256_set1_epi32(M);
    const __m256i mod_m1 = _mm256_set1_epi32(M - 1);
    __m256i acc = _mm256_setzero_si256();

    for (std::uint64_t b = 0; b < blocks; ++b) {
        const __m256i live = _mm256_and_si256(_mm256_cmpgt_epi32(val, two), _mm256_cmpgt_epi32(xp1, val));
        const __m256i idx = _mm256_srli_epi32(val, 5);
        __m256i w = _mm256_mask_i32gather_epi32(_mm256_setzero_si256(), pw, idx, live, 4);
        __m256i bit = _mm256_and_si256(_mm256_srlv_epi32(w, _mm256_and_si256(val, low5)), one);
        if (aw) {
            __m256i aword = _mm256_i32gather_epi32(aw, _mm256_srli_epi32(r, 5), 4);
            bit = _mm256_and_si256(bit, _mm256_srlv_epi32(aword, _mm256_and_si256(r, low5)));
            r = _mm256_add_epi32(r, r_inc);
            r = _mm256_sub_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(r, mod_m1), mod));
        }
        acc = _mm256_add_epi32(acc, _mm256_and_si256(bit, live));
        val = _mm256_add_epi32(val, step);
        step = _mm256_add_epi32(step, step_inc);
    }
    std::uint64_t hits = hsum_epi32(acc);

    const std::uint64_t done = blocks * 8;
    if (done < row.count) {
        RowSpec tail = row;
        tail.val0 = static_cast<std::int64_t>(value_at(row, static_cast<i128>(done)));
        tail.d0 = row.d0 + static_cast<std::int64_t>(done) * row.dd;
        tail.count = row.count - done;
        if (row.adm_words) tail.r0 = (row.r0 + done) % row.adm_mod;
        hits += count_row_scalar(tail);
    }
    return hits;
}

std::uint64_t popcount_avx2(const std::uint64_t* words, std::size_t n) {
    // Nibble lookup popcount (Mula), accumulated through psadbw.
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low4 = _mm256_set1_epi8(0x0f);
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
        const __m256i lo = _mm256_shuffle_epi8(lut, _mm256_and_si256(v, low4));
        const __m256i hi = _mm256_shuffle_epi8(lut, _mm256_and_si256(_mm256_srli_epi16(v, 4), low4));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(words[i]));
    return total;
}

} // namespace cheb::kernels
