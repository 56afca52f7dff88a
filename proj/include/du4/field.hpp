#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "du4/errors.hpp"

namespace du4 {

// An element of F_{2^n} in the polynomial basis: bit i = coefficient of x^i.
using Elem = std::uint32_t;

enum class RootKind { NoRoots, OneRoot, TwoRoots };

struct QuadraticRoots {
    RootKind kind = RootKind::NoRoots;
    std::array<Elem, 2> roots{0, 0};

    int count() const {
        switch (kind) {
            case RootKind::NoRoots: return 0;
            case RootKind::OneRoot: return 1;
            default: return 2;
        }
    }
};

namespace detail {

inline std::uint32_t poly_mul_mod(std::uint32_t a, std::uint32_t b, int n, std::uint32_t mod) {
    std::uint64_t r = 0, aa = a;
    while (b) {
        if (b & 1) r ^= aa;
        b >>= 1;
        aa <<= 1;
    }
    std::uint64_t m = mod;
    for (int d = std::bit_width(r); d > n; d = std::bit_width(r))
        r ^= m << (d - n - 1);
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t poly_pow_mod(std::uint32_t a, std::uint64_t e, int n, std::uint32_t mod) {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = poly_mul_mod(r, a, n, mod);
        a = poly_mul_mod(a, a, n, mod);
        e >>= 1;
    }
    return r;
}

// Trial division by every polynomial of degree 1..n/2; exact at desk scale.
inline bool poly_irreducible(std::uint32_t m, int n) {
    for (int d = 1; d <= n / 2; ++d) {
        for (std::uint32_t q = 1u << d; q < (2u << d); ++q) {
            std::uint32_t r = m;
            int dq = d + 1;  // bit length of q
            for (int len = std::bit_width(r); len >= dq; len = std::bit_width(r))
                r ^= q << (len - dq);
            if (r == 0) return false;
        }
    }
    return true;
}

inline std::vector<std::uint32_t> prime_factors(std::uint32_t t) {
    std::vector<std::uint32_t> f;
    for (std::uint32_t p = 2; p * p <= t; ++p) {
        if (t % p == 0) {
            f.push_back(p);
            while (t % p == 0) t /= p;
        }
    }
    if (t > 1) f.push_back(t);
    return f;
}

}  // namespace detail

// Immutable description of F_{2^n}. All operations are pure and safe for
// concurrent use; construction verifies the modulus and precomputes the
// log/antilog tables (primitive modulus fast path), the trace form, and the
// y^2+y linear solver.
class Field {
public:
    Field(int n, std::uint32_t modulus) : n_(n), modulus_(modulus) {
        if (n < 2 || n > 16)
            throw UnsupportedN("field degree must be in [2,16], got " + std::to_string(n));
        if (std::bit_width(modulus) != n + 1)
            throw DegreeMismatch("modulus must have degree exactly " + std::to_string(n));
        if (!detail::poly_irreducible(modulus, n))
            throw ReducibleModulus("modulus is reducible over F_2");

        size_ = 1u << n;
        order_ = size_ - 1;

        std::uint32_t ord_x = multiplicative_order_of_x();
        generator_check_ = (ord_x == order_);
        if (generator_check_) build_log_tables();
        build_trace_data();
        build_artin_schreier_solver();
        omega_ = (n_ % 2 == 0) ? compute_omega() : 0;
    }

    int degree() const { return n_; }
    std::uint32_t modulus() const { return modulus_; }
    std::uint32_t size() const { return size_; }
    std::uint32_t order() const { return order_; }
    bool generator_check() const { return generator_check_; }

    bool same_field(const Field& other) const {
        return n_ == other.n_ && modulus_ == other.modulus_;
    }

    // ---- arithmetic --------------------------------------------------------

    Elem add(Elem a, Elem b) const { return a ^ b; }

    Elem mul(Elem a, Elem b) const {
        if (generator_check_) {
            if (a == 0 || b == 0) return 0;
            return alog_[log_[a] + log_[b]];
        }
        return detail::poly_mul_mod(a, b, n_, modulus_);
    }

    Elem sqr(Elem a) const { return mul(a, a); }

    // inv(0) = 0 by convention.
    Elem inv(Elem a) const {
        if (a == 0) return 0;
        if (generator_check_) return alog_[order_ - log_[a]];
        return detail::poly_pow_mod(a, order_ - 1, n_, modulus_);
    }

    // Exponent is reduced mod 2^n-1 for nonzero bases (negative exponents go
    // through the inverse); pow(0, e) = 0 for e != 0 and 1 for e = 0.
    Elem pow(Elem a, long long e) const {
        if (a == 0) return e == 0 ? 1u : 0u;
        long long r = e % order_;
        if (r < 0) r += order_;
        if (generator_check_)
            return alog_[static_cast<std::uint64_t>(log_[a]) * r % order_];
        return detail::poly_pow_mod(a, static_cast<std::uint64_t>(r), n_, modulus_);
    }

    // x^{2^k}
    Elem frob(Elem a, int k) const {
        for (int i = 0; i < k; ++i) a = sqr(a);
        return a;
    }

    Elem sqrt(Elem a) const { return frob(a, n_ - 1); }

    // ---- traces and subfields ----------------------------------------------

    int trace(Elem a) const { return std::popcount(a & trace_mask_) & 1; }

    // Tr_k^n(x) = x + x^{2^k} + ... + x^{2^{n-k}}, an element of F_{2^k}.
    Elem subtrace(int k, Elem a) const {
        require_divisor(k);
        Elem acc = a, t = a;
        for (int i = 1; i < n_ / k; ++i) {
            t = frob(t, k);
            acc ^= t;
        }
        return acc;
    }

    bool in_subfield(int k, Elem a) const {
        require_divisor(k);
        return frob(a, k) == a;
    }

    // The root of x^2+x+1 with the smaller encoding; its companion is omega^2.
    Elem omega() const {
        if (n_ % 2 != 0) throw NoThirdRoot("no primitive third root of unity for odd n");
        return omega_;
    }

    // ---- quadratic equations -----------------------------------------------

    // y^2 + y = c. Two roots {y, y+1} iff Tr(c) = 0, else none.
    QuadraticRoots solve_artin_schreier(Elem c) const {
        QuadraticRoots out;
        if (trace(c) != 0) return out;
        Elem y = 0;
        for (const AsRow& r : as_rows_)
            if (std::popcount(r.aug & c) & 1) y |= 1u << r.pivot;
        out.kind = RootKind::TwoRoots;
        out.roots = {std::min(y, Elem(y ^ 1)), std::max(y, Elem(y ^ 1))};
        return out;
    }

    // x^2 + ax + b = 0.
    QuadraticRoots solve_quadratic(Elem a, Elem b) const {
        if (a == 0) return {RootKind::OneRoot, {sqrt(b), 0}};
        QuadraticRoots z = solve_artin_schreier(mul(b, inv(sqr(a))));
        if (z.kind == RootKind::NoRoots) return z;
        Elem r0 = mul(a, z.roots[0]);
        Elem r1 = r0 ^ a;
        return {RootKind::TwoRoots, {std::min(r0, r1), std::max(r0, r1)}};
    }

    // ---- character sums ------------------------------------------------------

    // K_n(lambda) = sum_x (-1)^{Tr(lambda*x + x^{-1})}, with inv(0) = 0.
    long long kloosterman(Elem lambda) const {
        long long k = 0;
        for (Elem x = 0; x < size_; ++x)
            k += 1 - 2 * trace(add(mul(lambda, x), inv(x)));
        return k;
    }

    // Mask m with <m, x> = Tr(a*x) for all x; used to index Walsh transforms.
    std::uint32_t dual_mask(Elem a) const { return dual_[a]; }

private:
    struct AsRow {
        std::uint32_t aug;
        int pivot;
    };

    void require_divisor(int k) const {
        if (k <= 0 || n_ % k != 0)
            throw NonDivisor("k = " + std::to_string(k) + " does not divide n = " + std::to_string(n_));
    }

    std::uint32_t multiplicative_order_of_x() const {
        std::uint32_t e = order_;
        for (std::uint32_t p : detail::prime_factors(order_))
            while (e % p == 0 && detail::poly_pow_mod(2u, e / p, n_, modulus_) == 1)
                e /= p;
        return e;
    }

    void build_log_tables() {
        log_.assign(size_, 0);
        alog_.assign(2 * order_, 0);
        std::uint32_t v = 1;
        for (std::uint32_t i = 0; i < order_; ++i) {
            alog_[i] = static_cast<Elem>(v);
            log_[v] = i;
            v = detail::poly_mul_mod(v, 2u, n_, modulus_);
        }
        for (std::uint32_t i = order_; i < 2 * order_; ++i) alog_[i] = alog_[i - order_];
    }

    void build_trace_data() {
        // Tr(x^m) for m < 2n-1 gives both the trace form and the dual masks.
        std::vector<int> t(2 * n_ - 1);
        std::uint32_t p = 1;
        for (int m = 0; m < 2 * n_ - 1; ++m) {
            std::uint32_t acc = 0, q = p;  // power sum; lands in {0, 1}
            for (int i = 0; i < n_; ++i) {
                acc ^= q;
                q = detail::poly_mul_mod(q, q, n_, modulus_);
            }
            t[m] = static_cast<int>(acc & 1);
            p = detail::poly_mul_mod(p, 2u, n_, modulus_);
        }
        trace_mask_ = 0;
        for (int j = 0; j < n_; ++j) trace_mask_ |= static_cast<std::uint32_t>(t[j]) << j;

        std::array<std::uint32_t, 16> basis_dual{};
        for (int j = 0; j < n_; ++j) {
            std::uint32_t m = 0;
            for (int i = 0; i < n_; ++i) m |= static_cast<std::uint32_t>(t[i + j]) << i;
            basis_dual[j] = m;
        }
        dual_.assign(size_, 0);
        for (std::uint32_t e = 1; e < size_; ++e)
            dual_[e] = dual_[e & (e - 1)] ^ basis_dual[std::countr_zero(e)];
    }

    void build_artin_schreier_solver() {
        // Row-reduce the matrix of y -> y^2 + y once; solves are O(n) after.
        std::vector<std::uint32_t> row(n_), aug(n_);
        for (int j = 0; j < n_; ++j) {
            Elem e = 1u << j;
            Elem img = detail::poly_mul_mod(e, e, n_, modulus_) ^ e;
            for (int i = 0; i < n_; ++i)
                if ((img >> i) & 1) row[i] |= 1u << j;
        }
        for (int i = 0; i < n_; ++i) aug[i] = 1u << i;

        int r = 0;
        std::vector<int> pivot_col;
        for (int col = 0; col < n_ && r < n_; ++col) {
            int p = -1;
            for (int i = r; i < n_; ++i)
                if ((row[i] >> col) & 1) { p = i; break; }
            if (p < 0) continue;
            std::swap(row[p], row[r]);
            std::swap(aug[p], aug[r]);
            for (int i = 0; i < n_; ++i)
                if (i != r && ((row[i] >> col) & 1)) {
                    row[i] ^= row[r];
                    aug[i] ^= aug[r];
                }
            pivot_col.push_back(col);
            ++r;
        }
        for (int i = 0; i < r; ++i) as_rows_.push_back({aug[i], pivot_col[i]});
    }

    Elem compute_omega() const {
        // omega^2 + omega = 1 and Tr(1) = 0 for even n, so two roots exist.
        QuadraticRoots r = solve_artin_schreier(1);
        return r.roots[0];
    }

    int n_;
    std::uint32_t modulus_;
    std::uint32_t size_ = 0;
    std::uint32_t order_ = 0;
    bool generator_check_ = false;
    Elem omega_ = 0;
    std::uint32_t trace_mask_ = 0;
    std::vector<std::uint16_t> log_;
    std::vector<Elem> alog_;
    std::vector<std::uint32_t> dual_;
    std::vector<AsRow> as_rows_;
};

using FieldRef = std::shared_ptr<const Field>;

// One primitive modulus per supported degree; n = 12 is x^12+x^7+x^4+x^3+1.
inline std::uint32_t default_modulus(int n) {
    static constexpr std::array<std::uint32_t, 17> table = {
        0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805,
        0x1099, 0x201B, 0x4443, 0x8003, 0x1100B,
    };
    if (n < 2 || n > 16)
        throw UnsupportedN("no default modulus for n = " + std::to_string(n));
    return table[static_cast<std::size_t>(n)];
}

inline FieldRef make_field(int n, std::uint32_t modulus) {
    return std::make_shared<const Field>(n, modulus);
}

inline FieldRef make_field(int n) { return make_field(n, default_modulus(n)); }

inline void require_same_field(const Field& a, const Field& b) {
    if (!a.same_field(b)) throw ContextMismatch("operands belong to different fields");
}

}  // namespace du4
