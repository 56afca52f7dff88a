#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "du4/field.hpp"

namespace du4 {

// Subset of F_{2^n} as a 2^n-bit membership vector with cached cardinality.
class ElementSet {
public:
    explicit ElementSet(FieldRef ctx)
        : ctx_(std::move(ctx)), bits_((ctx_->size() + 63) / 64, 0) {}

    const Field& field() const { return *ctx_; }
    const FieldRef& ctx() const { return ctx_; }
    std::size_t size() const { return card_; }
    bool empty() const { return card_ == 0; }

    bool contains(Elem e) const { return (bits_[e >> 6] >> (e & 63)) & 1; }

    // delta_S as 0/1
    int indicator(Elem e) const { return static_cast<int>(contains(e)); }

    void insert(Elem e) {
        std::uint64_t m = 1ull << (e & 63);
        if (!(bits_[e >> 6] & m)) {
            bits_[e >> 6] |= m;
            ++card_;
        }
    }

    std::vector<Elem> elements() const {
        std::vector<Elem> out;
        out.reserve(card_);
        for (Elem e = 0; e < ctx_->size(); ++e)
            if (contains(e)) out.push_back(e);
        return out;
    }

    bool operator==(const ElementSet& other) const {
        return ctx_->same_field(*other.ctx_) && bits_ == other.bits_;
    }

private:
    FieldRef ctx_;
    std::vector<std::uint64_t> bits_;
    std::size_t card_ = 0;
};

inline ElementSet set_from_elements(FieldRef ctx, const std::vector<Elem>& elems) {
    ElementSet s(std::move(ctx));
    for (Elem e : elems) {
        if (e >= s.field().size())
            throw PreconditionViolated("set element out of field range: " + std::to_string(e));
        s.insert(e);
    }
    return s;
}

// {alpha^i : i in exps}, alpha = the x residue; requires a primitive modulus.
inline ElementSet set_from_exponents(FieldRef ctx, const std::vector<std::uint32_t>& exps) {
    if (!ctx->generator_check())
        throw PreconditionViolated("exponent set literals need a primitive modulus");
    ElementSet s(ctx);
    for (std::uint32_t i : exps) s.insert(ctx->pow(2u, i));
    return s;
}

inline ElementSet subfield_set(FieldRef ctx, int k) {
    ElementSet s(ctx);
    for (Elem x = 0; x < ctx->size(); ++x)
        if (ctx->in_subfield(k, x)) s.insert(x);
    return s;
}

inline ElementSet set_union(const ElementSet& a, const ElementSet& b) {
    require_same_field(a.field(), b.field());
    ElementSet s(a.ctx());
    for (Elem e = 0; e < a.field().size(); ++e)
        if (a.contains(e) || b.contains(e)) s.insert(e);
    return s;
}

inline ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
    require_same_field(a.field(), b.field());
    ElementSet s(a.ctx());
    for (Elem e = 0; e < a.field().size(); ++e)
        if (a.contains(e) && !b.contains(e)) s.insert(e);
    return s;
}

// The involution x -> x/(1+x) on F_{2^n} \ {1}; swaps membership constraints
// wherever the admissibility closure is concerned.
inline Elem sigma_map(const Field& F, Elem x) {
    return F.mul(x, F.inv(F.add(1, x)));
}

struct AdmissibleCheck {
    bool ok = true;
    Elem witness = 0;  // violating element when !ok

    explicit operator bool() const { return ok; }
};

// Condition (a): 0 and 1 jointly in or out; condition (b): closure of
// S \ {0,1} under x -> x/(1+x).
inline AdmissibleCheck is_admissible(const ElementSet& s) {
    const Field& F = s.field();
    if (s.contains(0) != s.contains(1)) return {false, s.contains(0) ? 0u : 1u};
    for (Elem x = 2; x < F.size(); ++x)
        if (s.contains(x) && !s.contains(sigma_map(F, x))) return {false, x};
    return {};
}

// All 2-cycles {x, x/(1+x)} of sigma on F_{2^n} \ {0,1}, smaller member first,
// ordered by smaller member. Every admissible S is {0,1}? plus a union of these.
inline std::vector<std::pair<Elem, Elem>> sigma_pairs(const FieldRef& ctx) {
    const Field& F = *ctx;
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem x = 2; x < F.size(); ++x) {
        Elem y = sigma_map(F, x);
        if (x < y) out.emplace_back(x, y);
    }
    return out;
}

// Pairs {x, x/(1+x)} with Tr(x) = Tr(x/(1+x)) = 1; any union of them is a
// valid Theorem 2 set S_1.
inline std::vector<std::pair<Elem, Elem>> trace_one_closure_pairs(const FieldRef& ctx) {
    const Field& F = *ctx;
    std::vector<std::pair<Elem, Elem>> out;
    for (auto [x, y] : sigma_pairs(ctx))
        if (F.trace(x) == 1 && F.trace(y) == 1) out.emplace_back(x, y);
    return out;
}

// S = {x^{-1} : x^q = x + t1} = {x : x^{-q} = x^{-1} + t1}, q = 2^k.
// Solvable iff Tr_k^n(t1) = 0, in which case |S| = q and 0 is never a member.
inline ElementSet affine_inverse_set(FieldRef ctx, int k, Elem t1) {
    const Field& F = *ctx;
    if (t1 == 0) throw PreconditionViolated("affine_inverse_set requires t1 != 0");
    if (F.subtrace(k, t1) != 0)
        throw UnsolvableSubspace("Tr_k^n(t1) != 0: the affine subspace x^q = x + t1 is empty");
    ElementSet s(ctx);
    for (Elem x = 1; x < F.size(); ++x)
        if (F.add(F.frob(x, k), x) == t1) s.insert(F.inv(x));
    return s;
}

// S' = {x^{-1} + 1 : x in S}; the compositional inverse of f uses delta_{S'}.
// The map x -> x^{-1} + 1 is injective with setwise order 3 when 0 and 1 are
// jointly present or absent.
inline ElementSet s_prime(const ElementSet& s) {
    const Field& F = s.field();
    ElementSet out(s.ctx());
    for (Elem x = 0; x < F.size(); ++x)
        if (s.contains(x)) out.insert(F.add(F.inv(x), 1));
    return out;
}

// Parameter carrier for the construction families (used for provenance and
// nonlinearity bound selection).
struct SetFamilySpec {
    enum class Kind {
        Subfield,                    // F_{2^k1}
        UnionSubfields,              // F_{2^k1} u F_{2^k2}
        SubfieldDifference,          // F_{2^k1} \ F_{2^k2}
        TraceOneClosed,              // explicit S_1
        UnionTraceOneAndDifference,  // S_1 u (F_{2^k1} \ F_{2^k2})
        AffineInverseSet,            // q = 2^k1, t1
        Explicit,
    };

    Kind kind = Kind::Explicit;
    int k1 = 0;
    int k2 = 0;
    Elem t1 = 0;
    std::size_t s1_size = 0;

    std::string describe() const {
        switch (kind) {
            case Kind::Subfield: return "F_{2^" + std::to_string(k1) + "}";
            case Kind::UnionSubfields:
                return "F_{2^" + std::to_string(k1) + "} u F_{2^" + std::to_string(k2) + "}";
            case Kind::SubfieldDifference:
                return "F_{2^" + std::to_string(k1) + "} \\ F_{2^" + std::to_string(k2) + "}";
            case Kind::TraceOneClosed: return "S1(|S1|=" + std::to_string(s1_size) + ")";
            case Kind::UnionTraceOneAndDifference:
                return "S1(|S1|=" + std::to_string(s1_size) + ") u (F_{2^" + std::to_string(k1) +
                       "} \\ F_{2^" + std::to_string(k2) + "})";
            case Kind::AffineInverseSet:
                return "x^{-" + std::to_string(1u << k1) + "}=x^{-1}+t1";
            default: return "explicit";
        }
    }
};

}  // namespace du4
