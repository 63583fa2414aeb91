#include "cheb/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cheb/errors.hpp"
#include "cheb/numerics.hpp"

namespace cheb {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

bool is_prime(u64 n) {
    if (n < 2) return false;
    static constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : kBases) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : kBases) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int jacobi(i64 a, u64 m) {
    if (m == 0 || (m & 1) == 0) throw DomainError("jacobi: modulus must be odd and positive");
    u64 x = static_cast<u64>(floor_mod(a, static_cast<i64>(m)));
    u64 n = m;
    int t = 1;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            const u64 r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(x, n);
        if ((x & 3) == 3 && (n & 3) == 3) t = -t;
        x %= n;
    }
    return n == 1 ? t : 0;
}

int kronecker(i64 D, u64 n) {
    if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
    int t = 1;
    if ((n & 1) == 0) {
        if ((D & 1) == 0) return 0;
        if (floor_mod(D, 4) == 3) throw DomainError("kronecker: D = 3 mod 4 is not a discriminant");
        const int k2 = floor_mod(D, 8) == 1 ? 1 : -1;
        while ((n & 1) == 0) {
            n >>= 1;
            t *= k2;
        }
    }
    if (n == 1) return t;
    return t * jacobi(D, n);
}

std::optional<u64> sqrt_mod(i64 a, u64 p) {
    if (p < 3 || !is_prime(p)) throw DomainError("sqrt_mod: modulus must be an odd prime");
    const u64 x = static_cast<u64>(floor_mod(a, static_cast<i64>(p)));
    if (x == 0) return 0;
    if (powmod(x, (p - 1) / 2, p) != 1) return std::nullopt;
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(x, q, p);
    u64 r = powmod(x, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return std::min(r, p - r);
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    if (n == 0) throw DomainError("factorize: n must be positive");
    std::vector<std::pair<u64, unsigned>> out;
    auto strip = [&](u64 p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (u64 p = 5; p <= n / p; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int mobius(u64 n) {
    int m = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

u64 euler_phi(u64 n) {
    u64 r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

u64 tau(u64 n) {
    u64 r = 1;
    for (auto [p, e] : factorize(n)) r *= e + 1;
    return r;
}

u64 radical(u64 n) {
    u64 r = 1;
    for (auto [p, e] : factorize(n)) r *= p;
    return r;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (auto [p, e] : factorize(n)) out.push_back(p);
    return out;
}

std::vector<u64> squarefree_divisors(u64 n) {
    std::vector<u64> out{1};
    for (u64 p : prime_factors(n)) {
        const std::size_t k = out.size();
        for (std::size_t i = 0; i < k; ++i) out.push_back(out[i] * p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    for (auto [p, e] : factorize(n)) {
        const std::size_t k = out.size();
        u64 pk = 1;
        for (unsigned j = 1; j <= e; ++j) {
            pk *= p;
            for (std::size_t i = 0; i < k; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double li(double x) {
    if (!(x >= 2.0)) throw DomainError("li: x must be >= 2");
    if (x == 2.0) return 0.0;
    auto g = [](double u) { return std::exp(u) / u; };
    return numerics::integrate(g, std::log(2.0), std::log(x), 1e-14).value;
}

} // namespace cheb
