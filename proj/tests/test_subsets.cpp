#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "du4/subsets.hpp"

#include "oracle.hpp"
#include "support.hpp"

using namespace du4;

TEST_CASE("subfield sets") {
    FieldRef F = make_field(6);
    Elem w = F->omega();

    ElementSet f2 = subfield_set(F, 1);
    CHECK(f2.size() == 2);
    CHECK(f2.contains(0));
    CHECK(f2.contains(1));

    ElementSet f4 = subfield_set(F, 2);
    CHECK(f4.size() == 4);
    CHECK(f4.contains(w));
    CHECK(f4.contains(F->sqr(w)));

    CHECK(subfield_set(F, 3).size() == 8);
    CHECK_THROWS_AS(subfield_set(F, 4), NonDivisor);
}

TEST_CASE("set algebra") {
    FieldRef F12 = make_field(12);
    ElementSet u = set_union(subfield_set(F12, 4), subfield_set(F12, 6));
    CHECK(u.size() == 16 + 64 - 4);  // inclusion-exclusion, gcd(4,6) = 2

    FieldRef F = make_field(6);
    ElementSet d = set_difference(subfield_set(F, 2), subfield_set(F, 1));
    CHECK(d.size() == 2);
    CHECK(d.contains(F->omega()));
    CHECK(d.contains(F->sqr(F->omega())));

    ElementSet a = subfield_set(F, 3);
    CHECK(set_union(a, a) == a);
    CHECK(set_difference(a, a).size() == 0);

    CHECK_THROWS_AS(set_union(subfield_set(F, 1), subfield_set(make_field(6, 0x6D), 1)),
                    ContextMismatch);
}

TEST_CASE("admissibility") {
    FieldRef F = make_field(6);
    Elem w = F->omega();

    CHECK(is_admissible(subfield_set(F, 1)).ok);

    ElementSet omegas(F);
    omegas.insert(w);
    omegas.insert(F->sqr(w));
    CHECK(is_admissible(omegas).ok);
    CHECK(sigma_map(*F, w) == F->sqr(w));

    ElementSet lone(F);
    lone.insert(w);
    AdmissibleCheck c = is_admissible(lone);
    CHECK_FALSE(c.ok);
    CHECK(c.witness == w);

    ElementSet zeroOnly(F);
    zeroOnly.insert(0);
    c = is_admissible(zeroOnly);
    CHECK_FALSE(c.ok);
    CHECK(c.witness == 0);
}

TEST_CASE("sigma pairs partition the field minus {0,1}") {
    for (int n : {4, 6, 8}) {
        FieldRef F = make_field(n);
        auto pairs = sigma_pairs(F);
        CHECK(pairs.size() == (F->size() - 2) / 2);
        std::set<Elem> seen;
        for (auto [x, y] : pairs) {
            CHECK(x < y);
            CHECK(sigma_map(*F, x) == y);
            CHECK(sigma_map(*F, y) == x);
            CHECK(seen.insert(x).second);
            CHECK(seen.insert(y).second);
        }
        CHECK(seen.size() == F->size() - 2);
    }
}

TEST_CASE("trace-one closure pairs") {
    FieldRef F6 = make_field(6);
    auto p6 = trace_one_closure_pairs(F6);
    CHECK(p6.size() == 7);  // exhaustive reference count at n = 6

    std::uint32_t reference = 0;  // recount with the independent arithmetic
    for (Elem x = 2; x < F6->size(); ++x)
        if (oracle::trace(x, 6, F6->modulus()) == 1 &&
            oracle::trace(oracle::sigma(x, 6, F6->modulus()), 6, F6->modulus()) == 1)
            ++reference;
    CHECK(reference == 2 * p6.size());

    FieldRef F12 = make_field(12);
    auto p12 = trace_one_closure_pairs(F12);
    CHECK(p12.size() == 518);  // 1036 elements
    for (auto [x, y] : p12) {
        CHECK(F12->trace(x) == 1);
        CHECK(F12->trace(y) == 1);
        CHECK(sigma_map(*F12, x) == y);
    }
}

TEST_CASE("affine inverse sets") {
    FieldRef F6 = make_field(6);
    Elem w = F6->omega();

    ElementSet s = affine_inverse_set(F6, 1, 1);  // q = 2, t1 = 1
    CHECK(s.size() == 2);
    CHECK(s.contains(w));
    CHECK(s.contains(F6->sqr(w)));

    FieldRef F12 = make_field(12);
    ElementSet s7 = affine_inverse_set(F12, 2, 1);  // q = 4, t1 = 1
    CHECK(s7.size() == 4);
    CHECK_FALSE(s7.contains(0));

    CHECK_THROWS_AS(affine_inverse_set(F6, 1, 0), PreconditionViolated);

    // any t1 with Tr_k^n(t1) != 0 must be rejected; all others give |S| = q
    for (int k : {1, 2, 3}) {
        for (Elem t1 = 1; t1 < F6->size(); ++t1) {
            if (F6->subtrace(k, t1) != 0) {
                CHECK_THROWS_AS(affine_inverse_set(F6, k, t1), UnsolvableSubspace);
            } else {
                ElementSet a = affine_inverse_set(F6, k, t1);
                CHECK(a.size() == (1u << k));
                CHECK_FALSE(a.contains(0));
                for (Elem x : a.elements())
                    CHECK(F6->frob(F6->inv(x), k) == F6->add(F6->inv(x), t1));
            }
        }
    }
}

TEST_CASE("s_prime") {
    FieldRef F = make_field(6);
    Elem w = F->omega();

    ElementSet f2 = subfield_set(F, 1);
    CHECK(s_prime(f2) == f2);

    ElementSet omegas(F);
    omegas.insert(w);
    omegas.insert(F->sqr(w));
    CHECK(s_prime(omegas) == omegas);

    std::mt19937_64 rng(23);
    auto pairs = sigma_pairs(F);
    for (int it = 0; it < 50; ++it) {
        ElementSet s = testsup::random_admissible_set(F, pairs, rng);
        ElementSet sp = s_prime(s);
        CHECK(sp.size() == s.size());
        // x -> x^{-1} + 1 has setwise order 3, fixing {0,1} as a block
        CHECK(s_prime(s_prime(sp)) == s);
    }
}

TEST_CASE("indicator symmetries of admissible sets") {
    FieldRef F = make_field(6);
    Elem w = F->omega();
    std::mt19937_64 rng(29);
    auto pairs = sigma_pairs(F);
    for (int it = 0; it < 50; ++it) {
        ElementSet s = testsup::random_admissible_set(F, pairs, rng);
        CHECK(s.indicator(0) == s.indicator(1));
        CHECK(s.indicator(w) == s.indicator(F->sqr(w)));
    }
}

TEST_CASE("set literals") {
    FieldRef F = make_field(6);
    ElementSet s = set_from_elements(F, {1, 5, 9});
    CHECK(s.size() == 3);
    CHECK_THROWS_AS(set_from_elements(F, {64}), PreconditionViolated);

    // alpha^0 = 1, alpha^1 = 2 in the polynomial basis
    ElementSet e = set_from_exponents(F, {0, 1});
    CHECK(e.contains(1));
    CHECK(e.contains(2));

    FieldRef nonprim = make_field(4, 0x1F);
    CHECK_THROWS_AS(set_from_exponents(nonprim, {1}), PreconditionViolated);
}
