#include <bit>

#include "cheb/kernels.hpp"

namespace cheb::kernels {

std::uint64_t count_row_scalar(const RowSpec& row) {
    std::uint64_t hits = 0;
    std::int64_t val = row.val0;
    std::int64_t step = row.d0;
    std::uint64_t r = row.r0;
    const auto x = static_cast<std::int64_t>(row.x);
    for (std::uint64_t j = 0; j < row.count; ++j) {
        if (val > 2 && val <= x) {
            const auto n = static_cast<std::uint64_t>(val);
            bool ok = (row.prime_words[n >> 6] >> (n & 63)) & 1u;
            if (ok && row.adm_words) ok = (row.adm_words[r >> 6] >> (r & 63)) & 1u;
            hits += ok;
        }
        val += step;
        step += row.dd;
        if (row.adm_words && ++r == row.adm_mod) r = 0;
    }
    return hits;
}

std::uint64_t popcount_scalar(const std::uint64_t* words, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(words[i]));
    return total;
}

} // namespace cheb::kernels
