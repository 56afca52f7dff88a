#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "du4/construct.hpp"
#include "du4/spectral.hpp"

#include "oracle.hpp"
#include "support.hpp"

using namespace du4;

TEST_CASE("differential spectrum of the inverse function at n = 6") {
    FieldRef F = make_field(6);
    DiffSpectrum d = diff_spectrum(inverse_perm(F));
    CHECK(d.uniformity == 4);
    CHECK(d.total_pairs() == 63ull * 64);
    CHECK(d.total_mass() == 63ull * 64);
    for (auto [v, c] : d.counts) CHECK(v % 2 == 0);
}

TEST_CASE("theorem 1 spectra at n = 6 match the published rows") {
    FieldRef F = make_field(6);
    DiffSpectrum d = diff_spectrum(construct_theorem1(F, 1).perm);
    std::map<std::uint32_t, std::uint64_t> want = {{0, 2079}, {2, 1890}, {4, 63}};
    CHECK(d.counts == want);
    CHECK(walsh_stats(construct_theorem1(F, 1).perm).nonlinearity == 24);
}

TEST_CASE("diff spectrum invariants on random permutations") {
    std::mt19937_64 rng(3);
    for (int n : {4, 6}) {
        FieldRef F = make_field(n);
        const std::uint64_t q = F->size();
        for (int it = 0; it < 5; ++it) {
            Permutation p = from_table(F, testsup::random_permutation_table(F->size(), rng));
            DiffSpectrum d = diff_spectrum(p);
            CHECK(d.total_pairs() == (q - 1) * q);
            CHECK(d.total_mass() == (q - 1) * q);
            for (auto [v, c] : d.counts) CHECK(v % 2 == 0);
            CHECK(diff_uniformity(p) == d.uniformity);
        }
    }
}

TEST_CASE("fast Walsh equals the naive definition, exhaustively at n = 4") {
    FieldRef F = make_field(4);
    std::mt19937_64 rng(5);
    Permutation p = from_table(F, testsup::random_permutation_table(F->size(), rng));
    for (Elem b = 1; b < F->size(); ++b) {
        std::vector<std::int32_t> row = walsh_row(p, b);
        for (Elem a = 0; a < F->size(); ++a)
            CHECK(row[a] == oracle::walsh_naive(p.table(), a, b, 4, F->modulus()));
    }
}

TEST_CASE("fast Walsh equals the naive definition on random samples at n = 6") {
    FieldRef F = make_field(6);
    std::mt19937_64 rng(7);
    Permutation p = build_f(testsup::random_admissible_set(F, sigma_pairs(F), rng));
    std::uniform_int_distribution<Elem> d(0, F->size() - 1);
    int done = 0;
    while (done < 120) {
        Elem a = d(rng), b = d(rng);
        if (b == 0) continue;
        CHECK(walsh_row(p, b)[a] == oracle::walsh_naive(p.table(), a, b, 6, F->modulus()));
        ++done;
    }
}

TEST_CASE("Parseval per component") {
    FieldRef F = make_field(6);
    std::mt19937_64 rng(9);
    Permutation p = from_table(F, testsup::random_permutation_table(F->size(), rng));
    const std::uint64_t q = F->size();
    for (Elem b = 1; b < q; ++b) {
        std::vector<std::int32_t> row = walsh_row(p, b);
        std::uint64_t energy = 0;
        for (std::int32_t w : row) energy += static_cast<std::uint64_t>(w) * w;
        CHECK(energy == q * q);
    }
}

TEST_CASE("walsh stats bookkeeping") {
    FieldRef F = make_field(6);
    const std::uint64_t q = F->size();
    WalshStats ws = walsh_stats(inverse_perm(F));
    std::uint64_t entries = 0;
    for (auto [w, c] : ws.spectrum) entries += c;
    CHECK(entries == q * (q - 1));
    CHECK(ws.nonlinearity == static_cast<std::int64_t>(q / 2) - ws.max_abs / 2);

    // affine permutations have some |W| = 2^n, so nonlinearity 0
    std::vector<Elem> affine(F->size());
    for (Elem x = 0; x < F->size(); ++x) affine[x] = F->add(F->mul(21, x), 5);
    CHECK(walsh_stats(from_table(F, affine)).nonlinearity == 0);
}

TEST_CASE("spectra are invariant under affine pre/post-composition") {
    FieldRef F = make_field(6);
    const std::uint32_t q = F->size();
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<Elem> d(1, q - 1);

    Permutation p = construct_theorem6(F).perm;
    CczFingerprint base = ccz_fingerprint(p);
    for (int it = 0; it < 5; ++it) {
        Elem c1 = d(rng), c2 = d(rng), d1 = d(rng) ^ 1, d2 = d(rng) ^ 1;
        std::vector<Elem> a1(q), a2(q);
        for (Elem x = 0; x < q; ++x) {
            a1[x] = F->add(F->mul(c1, x), d1);
            a2[x] = F->add(F->mul(c2, x), d2);
        }
        Permutation composed = compose(from_table(F, a1), compose(p, from_table(F, a2)));
        CHECK_FALSE(fingerprints_differ(base, ccz_fingerprint(composed)));
    }
}

TEST_CASE("paper floor convention") {
    CHECK(paper_floor(1) == 2);
    CHECK(paper_floor(2) == 4);
    CHECK(paper_floor(3) == 4);
    CHECK(paper_floor(4) == 8);
    CHECK(paper_floor(5) == 8);
    CHECK(paper_floor(6) == 16);
    CHECK(paper_floor(7) == 20);
    CHECK_THROWS_AS(paper_floor(0), PreconditionViolated);
}

TEST_CASE("nonlinearity bounds") {
    BoundCertificate c = nl_bounds(6, {2, {}});
    CHECK(c.lemma9_bound == 22);
    CHECK_FALSE(c.prop4_bound.has_value());
    CHECK(c.best_bound == 22);

    // S = F_4 u F_8 at n = 6: both routes give 14
    c = nl_bounds(6, {10, std::pair<int, int>{2, 3}});
    CHECK(c.lemma9_bound == 14);
    REQUIRE(c.prop4_bound.has_value());
    CHECK(*c.prop4_bound == 14);

    // S = F_16 u F_64 at n = 12: lemma 9 gives 1908, proposition 4 sharpens to 1956
    c = nl_bounds(12, {76, std::pair<int, int>{4, 6}});
    CHECK(c.lemma9_bound == 1908);
    REQUIRE(c.prop4_bound.has_value());
    CHECK(*c.prop4_bound == 1956);
    CHECK(c.best_bound == 1956);

    // single subfields go through the k1 | k2 collapse
    c = nl_bounds(6, {8, std::pair<int, int>{3, 3}});
    CHECK(*c.prop4_bound == 20);
    c = nl_bounds(12, {16, std::pair<int, int>{4, 4}});
    CHECK(c.lemma9_bound == 1968);
    CHECK(*c.prop4_bound == 1976);

    CHECK_THROWS_AS(nl_bounds(4, {2, {}}), UnsupportedN);
    CHECK_THROWS_AS(nl_bounds(7, {2, {}}), UnsupportedN);
}

TEST_CASE("subfield character sums obey the floor bound") {
    FieldRef F = make_field(6);

    for (int k : {1, 2, 3}) {
        std::int64_t floor_k = paper_floor(k);
        for (Elem b = 0; b < F->size(); ++b) {
            if (F->trace(b) != 1) continue;
            for (Elem a = 0; a < F->size(); ++a) {
                std::int64_t s = subfield_sum_check(*F, k, a, b);
                CHECK(std::abs(s) <= floor_k);
                if (k == 1) CHECK((s == 0 || s == 2));
            }
        }
    }

    Elem b1 = 0;
    for (Elem b = 0; b < F->size(); ++b)
        if (F->trace(b) == 1) { b1 = b; break; }
    CHECK_THROWS_AS(subfield_sum_check(*F, 4, 0, b1), NonDivisor);
    Elem b0 = (F->trace(0) == 0) ? 0 : 1;
    CHECK_THROWS_AS(subfield_sum_check(*F, 2, 0, b0), TraceZeroB);

    // k = n: the sum over the whole field is the Kloosterman sum K(ab)
    for (Elem b : {b1, Elem(5)}) {
        if (F->trace(b) != 1) continue;
        for (Elem a = 0; a < 8; ++a)
            CHECK(subfield_sum_check(*F, 6, a, b) == F->kloosterman(F->mul(a, b)));
    }
}

TEST_CASE("Walsh rows of the inverse function are Kloosterman values") {
    FieldRef F = make_field(6);
    Permutation inv = inverse_perm(F);
    for (Elem b = 1; b < F->size(); ++b) {
        std::vector<std::int32_t> row = walsh_row(inv, b);
        for (Elem a = 0; a < F->size(); ++a)
            CHECK(row[a] == F->kloosterman(F->mul(a, b)));
    }
}

TEST_CASE("fingerprints") {
    FieldRef F = make_field(6);
    Permutation p = construct_theorem6(F).perm;
    CczFingerprint fp = ccz_fingerprint(p);
    CHECK_FALSE(fingerprints_differ(fp, fp));
    CHECK_FALSE(fingerprints_differ(fp, ccz_fingerprint(invert(p))));

    // different published spectra at n = 6: union row vs subfield rows
    CczFingerprint f_thm4 = ccz_fingerprint(construct_theorem4(F, 2).perm);
    CczFingerprint f_thm1 = ccz_fingerprint(construct_theorem1(F, 2).perm);
    CHECK(fingerprints_differ(f_thm4, f_thm1));

    CczFingerprint other = ccz_fingerprint(inverse_perm(make_field(4)));
    CHECK_THROWS_AS(fingerprints_differ(fp, other), ContextMismatch);
}

TEST_CASE("analysis report aggregates the pieces") {
    FieldRef F = make_field(6);
    ConstructionResult r = construct_theorem1(F, 1);
    AnalysisReport rep = analyze(r.perm, r.provenance(), r.bound_input());
    CHECK(rep.n == 6);
    CHECK(rep.walsh.nonlinearity == 24);
    CHECK(rep.diff.uniformity == 4);
    CHECK(rep.degree == 5);
    REQUIRE(rep.bounds.has_value());
    CHECK(rep.bounds->best_bound == 22);
    CHECK(rep.walsh.nonlinearity >= rep.bounds->best_bound);
}
