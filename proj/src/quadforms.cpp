#include "cheb/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "cheb/errors.hpp"

namespace cheb {
namespace {

using i128 = __int128;

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

i128 isqrt(i128 n) {
    if (n <= 0) return 0;
    auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

i64 narrow(i128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) throw DomainError(std::string("quadforms: overflow in ") + what);
    return static_cast<i64>(v);
}

// Extended gcd: returns (g, x, y) with x*a + y*b = g >= 0.
std::tuple<i64, i64, i64> ext_gcd(i64 a, i64 b) {
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        const i64 q = floor_div(a, b);
        std::tie(a, b) = std::make_tuple(b, a - q * b);
        std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_tuple(y1, y0 - q * y1);
    }
    if (a < 0) return {-a, -x0, -y0};
    return {a, x0, y0};
}

i128 eval128(const Form& f, i64 u, i64 v) {
    return static_cast<i128>(f.a) * u * u + static_cast<i128>(f.b) * u * v + static_cast<i128>(f.c) * v * v;
}

} // namespace

std::string Form::str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

Form reduce(const Form& f) {
    const i128 D = static_cast<i128>(f.b) * f.b - static_cast<i128>(4) * f.a * f.c;
    if (f.a <= 0 || D >= 0) throw DomainError("quadforms: reduce needs a positive definite form, got " + f.str());
    i128 a = f.a, b = f.b, c = f.c;
    auto normalize = [&] {
        // Shift b into (-a, a] by v -> v + r u.
        const i128 r = floor_div(a - b, 2 * a);
        b += 2 * a * r;
        c = (b * b - D) / (4 * a);
    };
    normalize();
    while (a > c) {
        std::swap(a, c);
        b = -b;
        normalize();
    }
    if (a == c && b < 0) b = -b;
    return {narrow(a, "reduce"), narrow(b, "reduce"), narrow(c, "reduce")};
}

bool is_reduced(const Form& f) {
    if (f.a <= 0 || f.disc() >= 0) return false;
    if (!(-f.a < f.b && f.b <= f.a && f.a <= f.c)) return false;
    return !(f.a == f.c && f.b < 0);
}

bool is_discriminant(i64 D) {
    const i64 r = floor_mod(D, 4);
    return D != 0 && (r == 0 || r == 1);
}

bool is_fundamental(i64 D) {
    if (!is_discriminant(D) || D == 1) return false;
    const u64 m = static_cast<u64>(D < 0 ? -D : D);
    if (floor_mod(D, 4) == 1) return mobius(m) != 0;
    const i64 q = D / 4;
    const i64 r = floor_mod(q, 4);
    return (r == 2 || r == 3) && mobius(m / 4) != 0;
}

std::pair<i64, u64> fundamental_decomposition(i64 D) {
    if (!is_discriminant(D)) throw DomainError("quadforms: " + std::to_string(D) + " is not a discriminant");
    const u64 m = static_cast<u64>(D < 0 ? -D : D);
    u64 f = 1;
    for (auto [p, e] : factorize(m)) {
        for (unsigned k = 0; k < e / 2; ++k) f *= p;
    }
    i64 D1 = D / static_cast<i64>(f * f);
    if (floor_mod(D1, 4) != 1) {
        D1 *= 4;
        f /= 2;
    }
    return {D1, f};
}

std::size_t ClassList::index_of(const Form& f) const {
    if (f.disc() != D) throw DomainError("quadforms: form " + f.str() + " has the wrong discriminant");
    const Form r = reduce(f);
    auto it = std::find(forms.begin(), forms.end(), r);
    if (it == forms.end()) throw DomainError("quadforms: " + r.str() + " is not a primitive class of D=" + std::to_string(D));
    return static_cast<std::size_t>(it - forms.begin());
}

ClassList class_representatives(i64 D) {
    if (D >= 0 || !is_discriminant(D)) throw DomainError("quadforms: class_representatives needs D < 0, D = 0,1 mod 4");
    ClassList cl;
    cl.D = D;
    const i64 amax = static_cast<i64>(isqrt(static_cast<i128>(-D) / 3));
    for (i64 a = 1; a <= amax; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (floor_mod(b - D, 2) != 0) continue;
            const i64 num = b * b - D;
            if (num % (4 * a) != 0) continue;
            const i64 c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            cl.forms.push_back({a, b, c});
        }
    }
    std::sort(cl.forms.begin(), cl.forms.end(), [](const Form& x, const Form& y) {
        const auto kx = std::make_tuple(x.a, std::abs(x.b), x.b < 0);
        const auto ky = std::make_tuple(y.a, std::abs(y.b), y.b < 0);
        return kx < ky;
    });
    return cl;
}

unsigned stab_order(i64 D) {
    if (D == -3) return 6;
    if (D == -4) return 4;
    return 2;
}

Form principal_form(i64 D) {
    if (D >= 0 || !is_discriminant(D)) throw DomainError("quadforms: bad discriminant " + std::to_string(D));
    const i64 b = floor_mod(D, 2);
    return {1, b, (b * b - D) / 4};
}

Form inverse(const Form& f) { return reduce({f.a, -f.b, f.c}); }

Form compose(const Form& f1, const Form& f2) {
    const i64 D = f1.disc();
    if (f2.disc() != D) throw DomainError("quadforms: compose of " + f1.str() + " and " + f2.str() + ": discriminants differ");
    if (!f1.primitive() || !f2.primitive()) throw DomainError("quadforms: compose needs primitive forms");
    Form g1 = f1, g2 = f2;
    if (g1.a > g2.a) std::swap(g1, g2);
    const i64 s = (g1.b + g2.b) / 2;
    const i64 n = g2.b - s;
    i64 y1 = 0, d = g1.a;
    if (g2.a % g1.a != 0) {
        auto [g, u, v] = ext_gcd(g2.a, g1.a);
        (void)v;
        d = g;
        y1 = u;
    }
    i64 x2 = 0, y2 = -1, d1 = d;
    if (s % d != 0) {
        auto [g, u, v] = ext_gcd(s, d);
        d1 = g;
        x2 = u;
        y2 = -v;
    }
    const i64 v1 = g1.a / d1;
    const i64 v2 = g2.a / d1;
    const i128 rr = static_cast<i128>(y1) * y2 * n - static_cast<i128>(x2) * g2.c;
    i128 r = rr % v1;
    if (r < 0) r += v1;
    const i128 b3 = g2.b + 2 * static_cast<i128>(v2) * r;
    const i128 a3 = static_cast<i128>(v1) * v2;
    const i128 c3 = (b3 * b3 - D) / (4 * a3);
    if ((b3 * b3 - D) % (4 * a3) != 0) throw ConsistencyError("quadforms: composition produced a non-integral form");
    return reduce({narrow(a3, "compose"), narrow(b3, "compose"), narrow(c3, "compose")});
}

Form power(const Form& f, u64 k) {
    Form result = principal_form(f.disc());
    Form base = reduce(f);
    while (k) {
        if (k & 1) result = compose(result, base);
        base = compose(base, base);
        k >>= 1;
    }
    return result;
}

u64 class_number_order(i64 D0, u64 d) {
    if (!is_fundamental(D0) || D0 >= 0) throw DomainError("quadforms: " + std::to_string(D0) + " is not a negative fundamental discriminant");
    if (d == 0) throw DomainError("quadforms: conductor must be positive");
    const i128 Dd = static_cast<i128>(D0) * d * d;
    if (Dd < INT64_MIN) throw DomainError("quadforms: D0 d^2 overflows");
    const u64 h0 = class_representatives(D0).h();
    i128 num = static_cast<i128>(h0) * d;
    i128 den = 1;
    for (u64 p : prime_factors(d)) {
        num *= static_cast<i128>(p) - kronecker(D0, p);
        den *= p;
    }
    den *= stab_order(D0) / stab_order(static_cast<i64>(Dd));
    if (num % den != 0) throw ConsistencyError("quadforms: class number formula is not integral");
    return static_cast<u64>(num / den);
}

Form induced_form(const Form& f, i64 d1, i64 d2) {
    return {f.a * d1 * d1, f.b * d1 * d2, f.c * d2 * d2};
}

std::optional<Form> prime_to_class(u64 p, i64 D) {
    if (p == 2) throw DomainError("quadforms: prime_to_class excludes p = 2");
    if (!is_prime(p)) throw DomainError("quadforms: prime_to_class needs a prime, got " + std::to_string(p));
    const i64 ip = static_cast<i64>(p);
    if (D % ip == 0) throw DomainError("quadforms: p = " + std::to_string(p) + " is ramified in D = " + std::to_string(D));
    if (kronecker(D, p) != 1) return std::nullopt;
    const i64 r = static_cast<i64>(*sqrt_mod(D, p));
    const i64 b = floor_mod(r - D, 2) == 0 ? r : ip - r;
    const i128 c = (static_cast<i128>(b) * b - D) / (4 * static_cast<i128>(ip));
    return reduce({ip, b, narrow(c, "prime_to_class")});
}

i64 u_bound(const Form& f, i64 X) {
    const i128 D = -static_cast<i128>(f.disc());
    const i128 rhs = 4 * static_cast<i128>(f.c) * X;
    i128 U = isqrt(rhs / D);
    while (U * U * D < rhs) ++U;
    return narrow(U, "u_bound");
}

std::optional<std::pair<i64, i64>> row_range(const Form& f, i64 X, i64 u) {
    const i128 disc = 4 * static_cast<i128>(f.c) * X + static_cast<i128>(f.disc()) * u * u;
    if (disc < 0) return std::nullopt;
    const i128 s = isqrt(disc);
    const i128 bu = static_cast<i128>(f.b) * u;
    i64 lo = narrow(ceil_div(-bu - s, 2 * static_cast<i128>(f.c)), "row_range");
    i64 hi = narrow(floor_div(-bu + s, 2 * static_cast<i128>(f.c)), "row_range");
    while (eval128(f, u, lo - 1) <= X) --lo;
    while (lo <= hi && eval128(f, u, lo) > X) ++lo;
    while (eval128(f, u, hi + 1) <= X) ++hi;
    while (hi >= lo && eval128(f, u, hi) > X) --hi;
    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

} // namespace cheb
