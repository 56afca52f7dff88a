#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "du4/field.hpp"

namespace du4 {

// Full lookup table of a bijection on F_{2^n}; bijectivity is verified at
// construction and the table is immutable afterwards.
class Permutation {
public:
    Permutation(FieldRef ctx, std::vector<Elem> table) : ctx_(std::move(ctx)), table_(std::move(table)) {
        const std::uint32_t q = ctx_->size();
        if (table_.size() != q)
            throw NotAPermutation("table length " + std::to_string(table_.size()) +
                                      " != field size " + std::to_string(q),
                                  0);
        std::vector<bool> seen(q, false);
        for (Elem v : table_) {
            if (v >= q || seen[v])
                throw NotAPermutation("duplicated or out-of-range image " + std::to_string(v), v);
            seen[v] = true;
        }
    }

    const Field& field() const { return *ctx_; }
    const FieldRef& ctx() const { return ctx_; }
    std::uint32_t size() const { return ctx_->size(); }
    const std::vector<Elem>& table() const { return table_; }
    Elem operator()(Elem x) const { return table_[x]; }

    bool operator==(const Permutation& other) const {
        return ctx_->same_field(*other.ctx_) && table_ == other.table_;
    }

private:
    FieldRef ctx_;
    std::vector<Elem> table_;
};

inline Permutation from_table(FieldRef ctx, std::vector<Elem> values) {
    return Permutation(std::move(ctx), std::move(values));
}

inline Permutation identity_perm(FieldRef ctx) {
    std::vector<Elem> t(ctx->size());
    for (Elem x = 0; x < ctx->size(); ++x) t[x] = x;
    return Permutation(std::move(ctx), std::move(t));
}

// x -> x^{-1} with 0 -> 0.
inline Permutation inverse_perm(FieldRef ctx) {
    std::vector<Elem> t(ctx->size());
    for (Elem x = 0; x < ctx->size(); ++x) t[x] = ctx->inv(x);
    return Permutation(std::move(ctx), std::move(t));
}

// compose(p, q)(x) = p(q(x))
inline Permutation compose(const Permutation& p, const Permutation& q) {
    require_same_field(p.field(), q.field());
    std::vector<Elem> t(p.size());
    for (Elem x = 0; x < p.size(); ++x) t[x] = p(q(x));
    return Permutation(p.ctx(), std::move(t));
}

inline Permutation invert(const Permutation& p) {
    std::vector<Elem> t(p.size());
    for (Elem x = 0; x < p.size(); ++x) t[p(x)] = x;
    return Permutation(p.ctx(), std::move(t));
}

// Univariate coefficients of f(x) = sum a_i x^i over F_{2^n}.
struct AnfTable {
    FieldRef ctx;
    std::vector<Elem> coeffs;
};

// Lagrange interpolation of an arbitrary value table (bijective or not):
//   a_0 = f(0),  a_{q-1} = sum_c f(c),  a_j = sum_{c != 0} f(c) c^{q-1-j}.
inline AnfTable interpolate(FieldRef ctx, std::span<const Elem> values) {
    const Field& F = *ctx;
    const std::uint32_t q = F.size();
    if (values.size() != q)
        throw DegreeMismatch("value table length != field size");
    std::vector<Elem> a(q, 0);
    a[0] = values[0];
    for (std::uint32_t c = 1; c < q; ++c) {
        a[q - 1] ^= values[c];
        if (values[c] == 0) continue;
        const Elem step = F.inv(static_cast<Elem>(c));
        Elem w = step;  // c^{q-1-j} for j = 1
        for (std::uint32_t j = 1; j < q - 1; ++j) {
            a[j] ^= F.mul(values[c], w);
            w = F.mul(w, step);
        }
    }
    a[q - 1] ^= values[0];  // c = 0 contributes f(0) to the top coefficient
    return {std::move(ctx), std::move(a)};
}

inline AnfTable interpolate(const Permutation& p) {
    return interpolate(p.ctx(), std::span<const Elem>(p.table()));
}

inline Elem evaluate(const AnfTable& anf, Elem x) {
    const Field& F = *anf.ctx;
    Elem acc = 0;
    for (std::size_t i = anf.coeffs.size(); i-- > 0;)
        acc = F.add(F.mul(acc, x), anf.coeffs[i]);
    return acc;
}

inline std::vector<Elem> evaluate_all(const AnfTable& anf) {
    std::vector<Elem> t(anf.ctx->size());
    for (Elem x = 0; x < anf.ctx->size(); ++x) t[x] = evaluate(anf, x);
    return t;
}

// Max 2-weight of an exponent with nonzero coefficient; 0 for constants.
inline int algebraic_degree(const AnfTable& anf) {
    int deg = 0;
    for (std::size_t i = 0; i < anf.coeffs.size(); ++i)
        if (anf.coeffs[i] != 0)
            deg = std::max(deg, std::popcount(static_cast<std::uint32_t>(i)));
    return deg;
}

inline int algebraic_degree(const Permutation& p) { return algebraic_degree(interpolate(p)); }

}  // namespace du4
