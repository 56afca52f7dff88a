#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "du4/spectral.hpp"
#include "du4/subsets.hpp"

namespace du4 {

// f(x) = x^{-1} + delta_S(x) for admissible S. Bijective by construction
// (the two-case argument behind the compositional inverse), verified anyway.
inline Permutation build_f(const ElementSet& s) {
    const Field& F = s.field();
    AdmissibleCheck adm = is_admissible(s);
    if (!adm) throw InadmissibleSet("build_f requires an admissible set", adm.witness);
    std::vector<Elem> t(F.size());
    for (Elem x = 0; x < F.size(); ++x) t[x] = F.inv(x) ^ static_cast<Elem>(s.indicator(x));
    return Permutation(s.ctx(), std::move(t));
}

// g(x) = (x + delta_{S'}(x))^{-1} with S' = {x^{-1} + 1 : x in S}.
inline Permutation compositional_inverse(const ElementSet& s) {
    const Field& F = s.field();
    AdmissibleCheck adm = is_admissible(s);
    if (!adm) throw InadmissibleSet("compositional inverse requires an admissible set", adm.witness);
    ElementSet sp = s_prime(s);
    std::vector<Elem> t(F.size());
    for (Elem x = 0; x < F.size(); ++x) t[x] = F.inv(x ^ static_cast<Elem>(sp.indicator(x)));
    return Permutation(s.ctx(), std::move(t));
}

// ---- the 4-uniformity criterion ---------------------------------------------

struct CriterionViolation {
    Elem a;
    int statement;  // 1 or 2, matching the two cases of the criterion
    Elem witness_x;
};

struct CriterionReport {
    bool holds = true;
    std::vector<CriterionViolation> violations;
};

namespace detail {

// Shared body so tests can force the other root of x^2+x+1 as omega.
inline CriterionReport prop2_check_with_omega(const ElementSet& s, Elem omega) {
    const Field& F = s.field();
    if (F.degree() % 2 != 0) throw OddDegree("the criterion is stated for even n");
    AdmissibleCheck adm = is_admissible(s);
    if (!adm) throw InadmissibleSet("criterion check requires an admissible set", adm.witness);

    const Elem omega2 = F.sqr(omega);
    const int d0 = s.indicator(0);
    CriterionReport rep;
    for (Elem a = 2; a < F.size(); ++a) {
        const bool omega_pair_equal =
            s.indicator(F.mul(omega, a)) == s.indicator(F.mul(omega2, a));
        // mu(x) = x^2 + ax + a^2/(1+a)
        QuadraticRoots mu = F.solve_quadratic(a, F.mul(F.sqr(a), F.inv(F.add(1, a))));
        if (s.indicator(a) == d0) {
            if (!omega_pair_equal || mu.kind == RootKind::NoRoots) continue;
            for (int i = 0; i < 2; ++i) {
                Elem x = mu.roots[i];
                if (s.indicator(F.add(x, a)) != s.indicator(x)) {
                    rep.violations.push_back({a, 1, x});
                    break;
                }
            }
        } else {
            if (omega_pair_equal || mu.kind == RootKind::NoRoots) continue;
            for (int i = 0; i < 2; ++i) {
                Elem x = mu.roots[i];
                if (s.indicator(F.add(x, a)) == s.indicator(x)) {
                    rep.violations.push_back({a, 2, x});
                    break;
                }
            }
        }
    }
    rep.holds = rep.violations.empty();
    return rep;
}

}  // namespace detail

// Differential 4-uniformity criterion for f = x^{-1} + delta_S: holds iff
// brute-force uniformity is exactly 4 (4 is always attained at a = 1).
inline CriterionReport prop2_check(const ElementSet& s) {
    if (s.field().degree() % 2 != 0) throw OddDegree("the criterion is stated for even n");
    return detail::prop2_check_with_omega(s, s.field().omega());
}

// ---- theorem-level constructors ------------------------------------------------

struct ConstructionResult {
    Permutation perm;
    ElementSet set;
    int theorem = 0;
    SetFamilySpec family;
    bool checked = false;  // criterion and brute-force uniformity both verified

    std::string provenance() const {
        return "theorem" + std::to_string(theorem) + " S=" + family.describe();
    }

    BoundInput bound_input() const {
        BoundInput in;
        in.set_size = set.size();
        if (family.kind == SetFamilySpec::Kind::Subfield)
            in.subfield_union = std::pair<int, int>{family.k1, family.k1};
        else if (family.kind == SetFamilySpec::Kind::UnionSubfields)
            in.subfield_union = std::pair<int, int>{family.k1, family.k2};
        return in;
    }
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionViolated(what);
}

inline void require_even_degree(const Field& F) {
    require(F.degree() % 2 == 0, "construction requires even n");
}

inline void require_theorem2_set(const ElementSet& s1) {
    const Field& F = s1.field();
    for (Elem x = 0; x < F.size(); ++x) {
        if (!s1.contains(x)) continue;
        if (F.trace(x) != 1)
            throw PreconditionViolated("S1 contains an element of trace 0: " + std::to_string(x));
        if (!s1.contains(sigma_map(F, x)))
            throw PreconditionViolated("S1 is not closed under x -> x/(1+x) at " + std::to_string(x));
    }
}

inline ConstructionResult finish(ElementSet s, int theorem, SetFamilySpec family, bool fast) {
    Permutation f = build_f(s);
    if (!prop2_check(s).holds)
        throw Error("internal: criterion fails for a theorem construction");
    if (!fast && diff_uniformity(f) != 4)
        throw Error("internal: brute-force uniformity != 4 for a theorem construction");
    return {std::move(f), std::move(s), theorem, family, !fast};
}

}  // namespace detail

// S = F_{2^k}; needs k even, or k in {1,3} with n/2 odd.
inline ConstructionResult construct_theorem1(FieldRef ctx, int k, bool fast = false) {
    detail::require_even_degree(*ctx);
    const int n = ctx->degree();
    detail::require(k >= 1 && n % k == 0, "theorem 1 needs k | n");
    detail::require(k % 2 == 0 || ((k == 1 || k == 3) && (n / 2) % 2 == 1),
                    "theorem 1 needs k even, or k in {1,3} with n/2 odd");
    SetFamilySpec fam{SetFamilySpec::Kind::Subfield, k, 0, 0, 0};
    return detail::finish(subfield_set(std::move(ctx), k), 1, fam, fast);
}

// S = S1, a union of trace-one closure pairs.
inline ConstructionResult construct_theorem2(FieldRef ctx, const ElementSet& s1, bool fast = false) {
    detail::require_even_degree(*ctx);
    require_same_field(*ctx, s1.field());
    detail::require_theorem2_set(s1);
    SetFamilySpec fam{SetFamilySpec::Kind::TraceOneClosed, 0, 0, 0, s1.size()};
    return detail::finish(s1, 2, fam, fast);
}

// S = F_{2^k1} u F_{2^k2} for even divisors k1, k2 of n.
inline ConstructionResult construct_theorem3(FieldRef ctx, int k1, int k2, bool fast = false) {
    detail::require_even_degree(*ctx);
    const int n = ctx->degree();
    detail::require(k1 >= 1 && k2 >= 1 && n % k1 == 0 && n % k2 == 0,
                    "theorem 3 needs k1 | n and k2 | n");
    detail::require(k1 % 2 == 0 && k2 % 2 == 0, "theorem 3 needs k1, k2 even");
    ElementSet s = set_union(subfield_set(ctx, k1), subfield_set(ctx, k2));
    SetFamilySpec fam{SetFamilySpec::Kind::UnionSubfields, std::min(k1, k2), std::max(k1, k2), 0, 0};
    return detail::finish(std::move(s), 3, fam, fast);
}

// S = F_{2^3} u F_{2^k1}; needs 6 | n, n/6 odd, k1 an even divisor coprime to 3.
inline ConstructionResult construct_theorem4(FieldRef ctx, int k1, bool fast = false) {
    detail::require_even_degree(*ctx);
    const int n = ctx->degree();
    detail::require(n % 6 == 0 && (n / 6) % 2 == 1, "theorem 4 needs 6 | n with n/6 odd");
    detail::require(k1 >= 1 && n % k1 == 0 && k1 % 2 == 0, "theorem 4 needs an even divisor k1");
    detail::require(std::gcd(3, k1) == 1, "theorem 4 needs gcd(3, k1) = 1");
    ElementSet s = set_union(subfield_set(ctx, 3), subfield_set(ctx, k1));
    SetFamilySpec fam{SetFamilySpec::Kind::UnionSubfields, 3, k1, 0, 0};
    return detail::finish(std::move(s), 4, fam, fast);
}

// S = S1 u (F_{2^k} \ F_{2^l}) with S1 a Theorem 2 set (possibly empty).
inline ConstructionResult construct_theorem5(FieldRef ctx, int k, int l, const ElementSet* s1,
                                             bool fast = false) {
    detail::require_even_degree(*ctx);
    const int n = ctx->degree();
    detail::require(k >= 2 && k % 2 == 0 && n % k == 0 && (n / k) % 2 == 1,
                    "theorem 5 needs k an even divisor of n with n/k odd");
    detail::require(l >= 1 && k % l == 0, "theorem 5 needs l | k");
    detail::require(l % 2 == 0 || (l == 1 && k % 4 == 2) || (l == 3 && k == 6),
                    "theorem 5 needs l even, or l=1 with k=2 mod 4, or l=3 with k=6");
    ElementSet s = set_difference(subfield_set(ctx, k), subfield_set(ctx, l));
    SetFamilySpec fam{SetFamilySpec::Kind::SubfieldDifference, k, l, 0, 0};
    if (s1 != nullptr && !s1->empty()) {
        require_same_field(*ctx, s1->field());
        detail::require_theorem2_set(*s1);
        s = set_union(*s1, s);
        fam = SetFamilySpec{SetFamilySpec::Kind::UnionTraceOneAndDifference, k, l, 0, s1->size()};
    }
    return detail::finish(std::move(s), 5, fam, fast);
}

inline ConstructionResult construct_theorem5(FieldRef ctx, int k, int l, bool fast = false) {
    return construct_theorem5(std::move(ctx), k, l, nullptr, fast);
}

// q = 2, t1 = 1: S = {omega, omega^2}; needs n/2 odd.
inline ConstructionResult construct_theorem6(FieldRef ctx, bool fast = false) {
    detail::require_even_degree(*ctx);
    detail::require((ctx->degree() / 2) % 2 == 1, "theorem 6 needs n/2 odd");
    ElementSet s = affine_inverse_set(ctx, 1, 1);
    SetFamilySpec fam{SetFamilySpec::Kind::AffineInverseSet, 1, 0, 1, 0};
    return detail::finish(std::move(s), 6, fam, fast);
}

// q = 4, t1 = 1: S = {x : x^{-4} = x^{-1} + 1}; needs gcd(n,5) = 1 and n/4 odd.
inline ConstructionResult construct_theorem7(FieldRef ctx, bool fast = false) {
    const int n = ctx->degree();
    detail::require(std::gcd(n, 5) == 1, "theorem 7 needs gcd(n, 5) = 1");
    detail::require(n % 4 == 0 && (n / 4) % 2 == 1, "theorem 7 needs n/4 odd");
    ElementSet s = affine_inverse_set(ctx, 2, 1);
    SetFamilySpec fam{SetFamilySpec::Kind::AffineInverseSet, 2, 0, 1, 0};
    return detail::finish(std::move(s), 7, fam, fast);
}

// Scans F_{2^n} \ F_q for roots of the degree-(4q) side condition; an empty
// result certifies the hypothesis that rules out split mu-roots for a not in S.
inline std::vector<Elem> eq5_root_scan(const FieldRef& ctx, int k, Elem t1) {
    const Field& F = *ctx;
    const long long q = 1ll << k;
    const Elem t1sq = F.sqr(t1);
    const Elem c_hi = F.add(F.sqr(t1sq), t1sq);       // t1^4 + t1^2
    const Elem c_mid = F.add(t1sq, t1);               // t1^2 + t1
    const Elem c_lin = F.add(1, t1);                  // 1 + t1
    const std::pair<Elem, long long> terms[] = {
        {c_hi, 4 * q},    {c_mid, 4 * q - 1}, {c_mid, 4 * q - 2}, {1, 4 * q - 3},
        {1, 4 * q - 4},   {c_mid, 3 * q},     {t1sq, 3 * q - 1},  {c_lin, 3 * q - 2},
        {1, 3 * q - 3},   {c_mid, 2 * q},     {c_lin, 2 * q - 1}, {1, q},
        {1, q - 1},
    };
    std::vector<Elem> roots;
    for (Elem a = 0; a < F.size(); ++a) {
        if (F.in_subfield(k, a)) continue;
        Elem lhs = 0;
        for (auto [c, e] : terms) lhs ^= F.mul(c, F.pow(a, e));
        if (lhs == 1) roots.push_back(a);
    }
    return roots;
}

}  // namespace du4
