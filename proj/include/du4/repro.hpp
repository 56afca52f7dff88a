#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "du4/construct.hpp"
#include "du4/io.hpp"
#include "du4/spectral.hpp"

namespace du4 {

// ---- published values (Tables 1-3) -------------------------------------------

struct PublishedRow {
    const char* label;
    const char* theorem_label;
    int theorem;   // which constructor reproduces the row
    int k1, k2, l; // parameters (meaning depends on the theorem)
    std::int64_t nl;
    std::uint64_t c0, c2, c4;  // differential spectrum multiplicities
    std::int64_t bound;
    bool erratum_suspect;  // printed values fail a mass invariant
};

inline const std::vector<PublishedRow>& published_table(int n) {
    static const std::vector<PublishedRow> t6 = {
        {"F_2", "Theorem 1", 1, 1, 0, 0, 24, 2079, 1890, 63, 22, false},
        {"F_{2^2}", "Theorem 1", 1, 2, 0, 0, 22, 2127, 1794, 111, 20, false},
        {"F_{2^3}", "Theorem 1", 1, 3, 0, 0, 22, 2199, 1650, 183, 20, false},
        {"F_{2^2} u F_{2^3}", "Theorem 4", 4, 2, 0, 0, 20, 2247, 1554, 231, 14, false},
        {"F_{2^2} \\ F_2", "Theorems 5, 6", 5, 2, 0, 1, 22, 2127, 1794, 111, 22, false},
    };
    static const std::vector<PublishedRow> t10 = {
        {"F_2", "Theorem 1", 1, 1, 0, 0, 480, 524799, 521730, 1023, 478, false},
        // printed spectrum mass is 65280 = 2^8(2^8-1), impossible at n = 10
        {"F_{2^2}", "Theorem 1", 1, 2, 0, 0, 478, 34335, 29250, 1695, 476, true},
        {"F_{2^2} \\ F_2", "Theorems 5, 6", 5, 2, 0, 1, 478, 525879, 519570, 2103, 478, false},
    };
    static const std::vector<PublishedRow> t12 = {
        {"F_{2^2}", "Theorem 1", 1, 2, 0, 0, 1982, 8394735, 8370210, 8175, 1980, false},
        {"F_{2^4}", "Theorem 1", 1, 4, 0, 0, 1978, 8419263, 8321154, 32703, 1968, false},
        {"F_{2^6}", "Theorem 1", 1, 6, 0, 0, 1970, 8511615, 8136450, 125055, 1920, false},
        {"F_{2^4} u F_{2^6}", "Theorem 3", 3, 4, 6, 0, 1966, 8534127, 8091426, 147567, 1908, false},
        {"F_{2^4} \\ F_{2^2}", "Theorem 5", 5, 4, 0, 2, 1978, 8415183, 8329314, 28623, 1972, false},
        {"x^{-4}=x^{-1}+1", "Theorem 7", 7, 0, 0, 0, 1980, 8399055, 8361570, 12495, 1980, false},
    };
    switch (n) {
        case 6: return t6;
        case 10: return t10;
        case 12: return t12;
        default: throw PreconditionViolated("published tables exist for n in {6, 10, 12}");
    }
}

// The three example lists, digit-for-digit as printed. The notation in the
// source presents all of them as exponent sets {alpha^i}, but the numbers in
// Examples 1 and 2 only decode consistently (trace-one, sigma-closed, and
// reproducing the published nonlinearities) as polynomial-basis element
// encodings; Example 3's small list is a genuine exponent set, confirmed by
// its stated containment in F_16 \ F_4.
struct ExampleLiteral {
    std::vector<std::uint32_t> data;
    bool as_values;  // true: element encodings; false: exponents of alpha
};

inline const ExampleLiteral& example_literal(int index) {
    static const ExampleLiteral pi1 = {
        {649,  3411, 2016, 2422, 437,  903,  3963, 2464, 1914, 1180, 3755, 2410, 119,  647,
         3624, 841,  2833, 2709, 2352, 4092, 3812, 2696, 3166, 2950, 1784, 3475, 233,  1831,
         1157, 1422, 3897, 2429, 918,  1363, 2910, 3955, 1372, 1785, 3013, 1589, 2021, 1721},
        true};
    static const ExampleLiteral pi2 = {
        {3351, 1475, 777,  661,  921,  977,  4076, 2037, 3359, 2414, 3616, 3033,
         3401, 3697, 3459, 654,  3160, 123,  3226, 2837, 526,  2832, 1182, 4094,
         3964, 3887, 1705, 2489, 1766, 4066, 589,  184,  1842, 2752},
        true};
    static const ExampleLiteral pi3 = {{273, 546, 1092, 2184}, false};
    switch (index) {
        case 1: return pi1;
        case 2: return pi2;
        case 3: return pi3;
        default: throw PreconditionViolated("example index must be 1, 2 or 3");
    }
}

// FNV-1a over the printed sequence; guards the transcription.
inline std::uint32_t example_checksum(int index) {
    std::uint32_t h = 2166136261u;
    for (std::uint32_t v : example_literal(index).data) {
        h ^= v;
        h *= 16777619u;
    }
    return h;
}

struct PublishedExample {
    std::size_t s1_size;
    std::int64_t nl_theorem5;
    std::int64_t nl_theorem2;
};

inline PublishedExample published_example(int index) {
    switch (index) {
        case 1: return {42, 1958, 1956};
        case 2: return {34, 1962, 1962};
        case 3: return {4, 1978, 1980};
        default: throw PreconditionViolated("example index must be 1, 2 or 3");
    }
}

// ---- table reproduction ----------------------------------------------------------

enum class RowStatus { Match, Mismatch, ErratumSuspect };

inline const char* to_string(RowStatus s) {
    switch (s) {
        case RowStatus::Match: return "MATCH";
        case RowStatus::Mismatch: return "MISMATCH";
        default: return "ERRATUM-SUSPECT";
    }
}

struct TableRow {
    std::string set_label;
    std::string theorem_label;
    ConstructionResult construction;
    std::int64_t nonlinearity;
    DiffSpectrum spectrum;
    BoundCertificate bounds;
    PublishedRow published;
    RowStatus status;
};

inline ConstructionResult build_published_row(const FieldRef& ctx, const PublishedRow& row,
                                              bool fast = false) {
    switch (row.theorem) {
        case 1: return construct_theorem1(ctx, row.k1, fast);
        case 3: return construct_theorem3(ctx, row.k1, row.k2, fast);
        case 4: return construct_theorem4(ctx, row.k1, fast);
        case 5: return construct_theorem5(ctx, row.k1, row.l, fast);
        case 7: return construct_theorem7(ctx, fast);
        default: throw PreconditionViolated("row has no constructor mapping");
    }
}

inline std::vector<TableRow> reproduce_table(int n, int jobs = 1) {
    FieldRef ctx = make_field(n);  // n = 12 default is the paper's modulus
    std::vector<TableRow> rows;
    for (const PublishedRow& pub : published_table(n)) {
        ConstructionResult cons = build_published_row(ctx, pub);
        DiffSpectrum spec = diff_spectrum(cons.perm, jobs);
        std::int64_t nl = walsh_stats(cons.perm, jobs).nonlinearity;
        BoundCertificate bounds = nl_bounds(n, cons.bound_input());

        DiffSpectrum printed;
        printed.counts = {{0, pub.c0}, {2, pub.c2}, {4, pub.c4}};
        printed.uniformity = 4;
        bool equal = (nl == pub.nl) && (spec == printed);
        RowStatus status = pub.erratum_suspect ? RowStatus::ErratumSuspect
                           : equal             ? RowStatus::Match
                                               : RowStatus::Mismatch;
        rows.push_back(TableRow{pub.label, pub.theorem_label, std::move(cons), nl,
                                std::move(spec), std::move(bounds), pub, status});
    }
    return rows;
}

inline bool any_mismatch(const std::vector<TableRow>& rows) {
    for (const TableRow& r : rows)
        if (r.status == RowStatus::Mismatch) return true;
    return false;
}

inline json table_to_json(int n, const std::vector<TableRow>& rows) {
    json out;
    out["n"] = n;
    out["modulus"] = hex_string(rows.empty() ? default_modulus(n) : rows[0].construction.perm.field().modulus());
    json arr = json::array();
    for (const TableRow& r : rows) {
        json j;
        j["set"] = r.set_label;
        j["theorem"] = r.theorem_label;
        j["nonlinearity"] = r.nonlinearity;
        j["diff_spectrum"] = spectrum_pairs(r.spectrum.counts);
        j["bounds"] = {{"lemma9", r.bounds.lemma9_bound}, {"best", r.bounds.best_bound}};
        if (r.bounds.prop4_bound) j["bounds"]["prop4"] = *r.bounds.prop4_bound;
        j["published"] = {{"nonlinearity", r.published.nl},
                          {"diff_spectrum", json::array({json::array({0, r.published.c0}),
                                                         json::array({2, r.published.c2}),
                                                         json::array({4, r.published.c4})})},
                          {"bound", r.published.bound}};
        j["status"] = to_string(r.status);
        arr.push_back(std::move(j));
    }
    out["rows"] = std::move(arr);
    return out;
}

inline std::string table_to_csv(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "set,theorem,nonlinearity,diff_spectrum,published_nl,published_spectrum,"
          "published_bound,best_bound,status\n";
    for (const TableRow& r : rows) {
        std::map<std::uint32_t, std::uint64_t> printed = {
            {0, r.published.c0}, {2, r.published.c2}, {4, r.published.c4}};
        os << r.set_label << ',' << r.theorem_label << ',' << r.nonlinearity << ','
           << multiset_string(r.spectrum.counts) << ',' << r.published.nl << ','
           << multiset_string(printed) << ',' << r.published.bound << ',' << r.bounds.best_bound
           << ',' << to_string(r.status) << '\n';
    }
    return os.str();
}

// ---- examples ---------------------------------------------------------------------

struct ExampleResult {
    int index = 0;
    std::size_t s1_size = 0;
    std::int64_t nl_theorem5 = 0;
    std::int64_t nl_theorem2 = 0;
    bool s_equals_f16_minus_f4 = false;
    PublishedExample published;
    bool match = false;
};

inline FieldRef paper_field() { return make_field(12, 0x1099); }

inline std::vector<ExampleResult> run_examples(int jobs = 1) {
    FieldRef ctx = paper_field();
    std::vector<ExampleResult> out;
    for (int i = 1; i <= 3; ++i) {
        const ExampleLiteral& lit = example_literal(i);
        ElementSet s1 = lit.as_values ? set_from_elements(ctx, lit.data)
                                      : set_from_exponents(ctx, lit.data);
        for (Elem x : s1.elements()) {
            if (ctx->trace(x) != 1)
                throw SetNotClosed("example " + std::to_string(i) + ": Tr != 1 at element " +
                                   std::to_string(x));
            if (!s1.contains(sigma_map(*ctx, x)))
                throw SetNotClosed("example " + std::to_string(i) +
                                   ": not closed under x/(1+x) at element " + std::to_string(x));
        }
        ConstructionResult five = construct_theorem5(ctx, 4, 2, &s1);
        ConstructionResult two = construct_theorem2(ctx, s1);

        ExampleResult r;
        r.index = i;
        r.s1_size = s1.size();
        r.nl_theorem5 = walsh_stats(five.perm, jobs).nonlinearity;
        r.nl_theorem2 = walsh_stats(two.perm, jobs).nonlinearity;
        r.s_equals_f16_minus_f4 =
            five.set == set_difference(subfield_set(ctx, 4), subfield_set(ctx, 2));
        r.published = published_example(i);
        r.match = r.s1_size == r.published.s1_size && r.nl_theorem5 == r.published.nl_theorem5 &&
                  r.nl_theorem2 == r.published.nl_theorem2;
        out.push_back(r);
    }
    return out;
}

inline json examples_to_json(const std::vector<ExampleResult>& rs) {
    json arr = json::array();
    for (const ExampleResult& r : rs) {
        json j;
        j["example"] = r.index;
        j["s1_size"] = r.s1_size;
        j["nl_theorem5"] = r.nl_theorem5;
        j["nl_theorem2"] = r.nl_theorem2;
        j["s_equals_f16_minus_f4"] = r.s_equals_f16_minus_f4;
        j["published"] = {{"s1_size", r.published.s1_size},
                          {"nl_theorem5", r.published.nl_theorem5},
                          {"nl_theorem2", r.published.nl_theorem2}};
        j["match"] = r.match;
        arr.push_back(std::move(j));
    }
    return arr;
}

// ---- trace closure count ------------------------------------------------------------

// |{x not in {0,1} : Tr(x) = Tr(x/(1+x)) = 1}|; 1036 at n = 12.
inline std::uint32_t count_trace_closure(const FieldRef& ctx) {
    const Field& F = *ctx;
    std::uint32_t count = 0;
    for (Elem x = 2; x < F.size(); ++x)
        if (F.trace(x) == 1 && F.trace(sigma_map(F, x)) == 1) ++count;
    return count;
}

// ---- Table 4 statistical rerun ---------------------------------------------------------

struct SampleStats {
    std::uint64_t seed = 0;
    std::uint32_t count = 0;
    double ave_nl_thm2 = 0, ave_nl_thm5 = 0;
    std::int64_t max_nl_thm2 = 0, min_nl_thm2 = 0;
    std::int64_t max_nl_thm5 = 0, min_nl_thm5 = 0;
};

// Draws `count` random unions of the trace-one closure pairs (each pair kept
// with probability 1/2), builds the Theorem 2 and Theorem 5 variants and
// computes their nonlinearities. Output is identical for any worker count.
inline SampleStats sample_table4(std::uint32_t count, std::uint64_t seed, int jobs = 1,
                                 std::ostream* csv = nullptr) {
    if (count < 1) throw PreconditionViolated("sample count must be >= 1");
    FieldRef ctx = paper_field();
    const auto pairs = trace_one_closure_pairs(ctx);

    std::mt19937_64 eng(seed);
    std::vector<ElementSet> s1s;
    s1s.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        ElementSet s1(ctx);
        for (const auto& [x, y] : pairs)
            if (eng() & 1) {
                s1.insert(x);
                s1.insert(y);
            }
        s1s.push_back(std::move(s1));
    }

    struct Row {
        std::size_t s1_size;
        std::int64_t nl2, nl5;
    };
    std::vector<Row> rows(count);
    parallel_reduce<int>(
        0, count, jobs,
        [&](std::uint32_t lo, std::uint32_t hi) {
            for (std::uint32_t i = lo; i < hi; ++i) {
                ConstructionResult two = construct_theorem2(ctx, s1s[i], /*fast=*/true);
                ConstructionResult five = construct_theorem5(ctx, 4, 2, &s1s[i], /*fast=*/true);
                rows[i] = {s1s[i].size(), walsh_stats(two.perm).nonlinearity,
                           walsh_stats(five.perm).nonlinearity};
            }
            return 0;
        },
        [](int&, int) {});

    if (csv) {
        *csv << "sample,s1_size,nl_theorem2,nl_theorem5\n";
        for (std::uint32_t i = 0; i < count; ++i)
            *csv << i << ',' << rows[i].s1_size << ',' << rows[i].nl2 << ',' << rows[i].nl5 << '\n';
    }

    SampleStats st;
    st.seed = seed;
    st.count = count;
    st.min_nl_thm2 = st.min_nl_thm5 = INT64_MAX;
    st.max_nl_thm2 = st.max_nl_thm5 = INT64_MIN;
    double sum2 = 0, sum5 = 0;
    for (const Row& r : rows) {
        sum2 += static_cast<double>(r.nl2);
        sum5 += static_cast<double>(r.nl5);
        st.max_nl_thm2 = std::max(st.max_nl_thm2, r.nl2);
        st.min_nl_thm2 = std::min(st.min_nl_thm2, r.nl2);
        st.max_nl_thm5 = std::max(st.max_nl_thm5, r.nl5);
        st.min_nl_thm5 = std::min(st.min_nl_thm5, r.nl5);
    }
    st.ave_nl_thm2 = sum2 / count;
    st.ave_nl_thm5 = sum5 / count;
    return st;
}

inline json sample_stats_to_json(const SampleStats& st) {
    char buf[32];
    json j;
    j["seed"] = st.seed;
    j["count"] = st.count;
    std::snprintf(buf, sizeof(buf), "%.3f", st.ave_nl_thm2);
    j["theorem2"] = {{"ave_nl", buf}, {"max_nl", st.max_nl_thm2}, {"min_nl", st.min_nl_thm2}};
    std::snprintf(buf, sizeof(buf), "%.3f", st.ave_nl_thm5);
    j["theorem5"] = {{"ave_nl", buf}, {"max_nl", st.max_nl_thm5}, {"min_nl", st.min_nl_thm5}};
    return j;
}

}  // namespace du4
