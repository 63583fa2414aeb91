#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cheb/arith.hpp"

namespace cheb {

/// a u^2 + b u v + c v^2.
struct Form {
    i64 a = 1, b = 0, c = 1;

    i64 disc() const { return b * b - 4 * a * c; }
    bool primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }
    i64 eval(i64 u, i64 v) const { return a * u * u + b * u * v + c * v * v; }
    std::string str() const;

    auto operator<=>(const Form&) const = default;
};

/// Gauss reduction of a positive definite form.
///
/// The result satisfies -a < b <= a <= c, with b >= 0 whenever a = c. It is
/// the unique such form in the SL2(Z)-orbit of f. Throws DomainError unless
/// a > 0 and b^2 - 4ac < 0.
Form reduce(const Form& f);
bool is_reduced(const Form& f);

bool is_discriminant(i64 D);
bool is_fundamental(i64 D);
/// D = D0 * d^2 with D0 fundamental. Throws DomainError if D is not a discriminant.
std::pair<i64, u64> fundamental_decomposition(i64 D);

/// Reduced primitive forms of a negative discriminant, sorted by
/// (a, |b|, negative b last). forms[0] is the principal form.
struct ClassList {
    i64 D = 0;
    std::vector<Form> forms;

    std::size_t h() const { return forms.size(); }
    /// Index of the class of f (any form of discriminant D). Throws DomainError on mismatch.
    std::size_t index_of(const Form& f) const;
};

ClassList class_representatives(i64 D);

/// |stab(f)| = number of units of the order of discriminant D.
unsigned stab_order(i64 D);

Form principal_form(i64 D);
Form inverse(const Form& f);
/// Reduced representative of the Dirichlet composition of two primitive forms.
Form compose(const Form& f1, const Form& f2);
Form power(const Form& f, u64 k);

/// h(D0 d^2) from h(D0) by the class number formula for orders.
u64 class_number_order(i64 D0, u64 d);

/// (a d1^2, b d1 d2, c d2^2).
Form induced_form(const Form& f, i64 d1, i64 d2);

/// Reduced class of the prime ideal above a split odd prime p, or nullopt if p
/// is inert. Throws DomainError for p = 2, p not prime, or p | D.
std::optional<Form> prime_to_class(u64 p, i64 D);

/// v-range [first, second] of lattice points with f(u, v) <= X in row u, or
/// nullopt when the row is empty. Exact: both ends are checked by evaluation.
std::optional<std::pair<i64, i64>> row_range(const Form& f, i64 X, i64 u);

/// Half-width U of the u-range: every point with f(u, v) <= X has |u| <= U.
i64 u_bound(const Form& f, i64 X);

/// Visits every (u, v) with 0 < f(u, v) <= x exactly once, u ascending over
/// [-U, U], then v ascending.
template <class Visitor>
void enumerate_represented(const Form& f, double x, Visitor&& visit) {
    if (!(x >= 1.0)) return;
    const i64 X = static_cast<i64>(x);
    const i64 U = u_bound(f, X);
    for (i64 u = -U; u <= U; ++u) {
        const auto r = row_range(f, X, u);
        if (!r) continue;
        for (i64 v = r->first; v <= r->second; ++v) {
            if (u == 0 && v == 0) continue;
            visit(u, v, f.eval(u, v));
        }
    }
}

} // namespace cheb
