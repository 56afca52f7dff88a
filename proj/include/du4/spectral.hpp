#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "du4/parallel.hpp"
#include "du4/permutation.hpp"

namespace du4 {

// ---- differential spectrum --------------------------------------------------

struct DiffSpectrum {
    // N(a,b) value -> number of pairs (a,b), a != 0, attaining it
    std::map<std::uint32_t, std::uint64_t> counts;
    std::uint32_t uniformity = 0;

    std::uint64_t total_pairs() const {
        std::uint64_t t = 0;
        for (auto [v, c] : counts) t += c;
        return t;
    }

    std::uint64_t total_mass() const {
        std::uint64_t t = 0;
        for (auto [v, c] : counts) t += static_cast<std::uint64_t>(v) * c;
        return t;
    }

    bool operator==(const DiffSpectrum& other) const { return counts == other.counts; }
};

inline DiffSpectrum diff_spectrum(const Permutation& p, int jobs = 1) {
    const std::uint32_t q = p.size();
    const std::vector<Elem>& t = p.table();

    using Hist = std::vector<std::uint64_t>;
    Hist hist = parallel_reduce<Hist>(
        1, q, jobs,
        [&](std::uint32_t lo, std::uint32_t hi) {
            Hist h(q + 1, 0);
            std::vector<std::uint32_t> cnt(q);
            for (std::uint32_t a = lo; a < hi; ++a) {
                std::fill(cnt.begin(), cnt.end(), 0);
                for (std::uint32_t x = 0; x < q; ++x) ++cnt[t[x ^ a] ^ t[x]];
                for (std::uint32_t b = 0; b < q; ++b) ++h[cnt[b]];
            }
            return h;
        },
        [](Hist& acc, const Hist& part) {
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
        });

    DiffSpectrum out;
    for (std::uint32_t v = 0; v <= q; ++v)
        if (hist[v]) {
            out.counts[v] = hist[v];
            out.uniformity = v;
        }
    return out;
}

// Brute-force max_{a != 0, b} N(a,b) straight from the definition.
inline std::uint32_t diff_uniformity(const Permutation& p, int jobs = 1) {
    const std::uint32_t q = p.size();
    const std::vector<Elem>& t = p.table();
    return parallel_reduce<std::uint32_t>(
        1, q, jobs,
        [&](std::uint32_t lo, std::uint32_t hi) {
            std::uint32_t mx = 0;
            std::vector<std::uint32_t> cnt(q);
            for (std::uint32_t a = lo; a < hi; ++a) {
                std::fill(cnt.begin(), cnt.end(), 0);
                for (std::uint32_t x = 0; x < q; ++x) mx = std::max(mx, ++cnt[t[x ^ a] ^ t[x]]);
            }
            return mx;
        },
        [](std::uint32_t& acc, std::uint32_t part) { acc = std::max(acc, part); });
}

// ---- Walsh spectrum ----------------------------------------------------------

struct WalshStats {
    std::map<std::int32_t, std::uint64_t> spectrum;  // W(a,b) -> multiplicity, b != 0
    std::uint32_t max_abs = 0;
    std::int64_t nonlinearity = 0;

    std::map<std::uint32_t, std::uint64_t> extended() const {
        std::map<std::uint32_t, std::uint64_t> out;
        for (auto [w, c] : spectrum) out[static_cast<std::uint32_t>(w < 0 ? -w : w)] += c;
        return out;
    }
};

namespace detail {

inline void fwht(std::vector<std::int32_t>& v) {
    const std::size_t q = v.size();
    for (std::size_t len = 1; len < q; len <<= 1)
        for (std::size_t i = 0; i < q; i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                std::int32_t a = v[j], b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
}

inline void component_signs(const Permutation& p, Elem b, std::vector<std::int32_t>& v) {
    const Field& F = p.field();
    const std::uint32_t q = p.size();
    v.resize(q);
    for (std::uint32_t x = 0; x < q; ++x) v[x] = 1 - 2 * F.trace(F.mul(b, p(x)));
}

}  // namespace detail

// W(a,b) for one fixed b, indexed by a. The butterfly produces coefficients in
// the bit-mask pairing; dual_mask converts them to the Tr(ax) pairing.
inline std::vector<std::int32_t> walsh_row(const Permutation& p, Elem b) {
    const Field& F = p.field();
    const std::uint32_t q = p.size();
    std::vector<std::int32_t> buf;
    detail::component_signs(p, b, buf);
    detail::fwht(buf);
    std::vector<std::int32_t> row(q);
    for (std::uint32_t a = 0; a < q; ++a) row[a] = buf[F.dual_mask(a)];
    return row;
}

inline WalshStats walsh_stats(const Permutation& p, int jobs = 1) {
    const std::uint32_t q = p.size();

    // flat histogram over w + q to keep the hot loop allocation-free
    using Hist = std::vector<std::uint64_t>;
    Hist hist = parallel_reduce<Hist>(
        1, q, jobs,
        [&](std::uint32_t lo, std::uint32_t hi) {
            Hist h(2 * q + 1, 0);
            std::vector<std::int32_t> buf;
            for (std::uint32_t b = lo; b < hi; ++b) {
                detail::component_signs(p, b, buf);
                detail::fwht(buf);
                for (std::uint32_t m = 0; m < q; ++m) ++h[buf[m] + static_cast<std::int32_t>(q)];
            }
            return h;
        },
        [](Hist& acc, const Hist& part) {
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
        });

    WalshStats out;
    for (std::uint32_t i = 0; i <= 2 * q; ++i)
        if (hist[i]) {
            std::int32_t w = static_cast<std::int32_t>(i) - static_cast<std::int32_t>(q);
            out.spectrum[w] = hist[i];
            out.max_abs = std::max<std::uint32_t>(out.max_abs, w < 0 ? -w : w);
        }
    out.nonlinearity = static_cast<std::int64_t>(q / 2) - out.max_abs / 2;
    return out;
}

inline std::int64_t nonlinearity(const Permutation& p, int jobs = 1) {
    return walsh_stats(p, jobs).nonlinearity;
}

// ---- nonlinearity bounds ------------------------------------------------------

// The convention for floor(2^{k/2+1}): 2 for k = 1; the exact power for even k;
// for odd k > 1 the unique multiple of 4 in (2^{k/2+1} - 4, 2^{k/2+1}].
inline std::int64_t paper_floor(int k) {
    if (k < 1) throw PreconditionViolated("paper_floor needs k >= 1");
    if (k == 1) return 2;
    if (k % 2 == 0) return 1ll << (k / 2 + 1);
    std::uint64_t v = 1ull << (k + 2);
    std::uint64_t r = 0;
    while ((r + 1) * (r + 1) <= v) ++r;  // floor(2^{k/2+1})
    return static_cast<std::int64_t>(r / 4 * 4);
}

struct BoundCertificate {
    std::int64_t lemma9_bound = 0;
    std::optional<std::int64_t> prop4_bound;
    std::int64_t best_bound = 0;
    std::vector<std::int64_t> floor_terms;
};

// Descriptor of S as far as the bounds care: its size, and the (k1, k2) pair
// when S is a union of subfields (k1 = k2 for a single subfield).
struct BoundInput {
    std::size_t set_size = 0;
    std::optional<std::pair<int, int>> subfield_union;
};

inline BoundCertificate nl_bounds(int n, const BoundInput& in) {
    if (n < 6 || n % 2 != 0)
        throw UnsupportedN("nonlinearity bounds need even n >= 6");
    BoundCertificate cert;
    const std::int64_t base = (1ll << (n - 1)) - (1ll << (n / 2));
    cert.lemma9_bound = base - static_cast<std::int64_t>(in.set_size);
    cert.best_bound = cert.lemma9_bound;

    if (in.subfield_union) {
        auto [k1, k2] = *in.subfield_union;
        if (k2 < k1) std::swap(k1, k2);
        std::int64_t general =
            base - paper_floor(k1) - paper_floor(k2) - paper_floor(std::gcd(k1, k2));
        std::int64_t prop4 = general;
        cert.floor_terms = {paper_floor(k1), paper_floor(k2), paper_floor(std::gcd(k1, k2))};
        if (k2 % k1 == 0) {
            prop4 = std::max(prop4, base - paper_floor(k2));
        }
        if (k1 == 3 && std::gcd(k2, 3) == 1)
            prop4 = std::max(prop4, base - paper_floor(k2) - 6);
        if (k2 == 3 && std::gcd(k1, 3) == 1)
            prop4 = std::max(prop4, base - paper_floor(k1) - 6);
        cert.prop4_bound = prop4;
        cert.best_bound = std::max(cert.best_bound, prop4);
    }
    return cert;
}

// Exact sum_{x in F_{2^k}} (-1)^{Tr(ax + b x^{-1})}; Lemma 8 bounds it by
// paper_floor(k) whenever Tr(b) = 1.
inline std::int64_t subfield_sum_check(const Field& F, int k, Elem a, Elem b) {
    if (k <= 0 || F.degree() % k != 0)
        throw NonDivisor("subfield degree must divide n");
    if (F.trace(b) != 1) throw TraceZeroB("subfield_sum_check requires Tr(b) = 1");
    std::int64_t sum = 0;
    for (Elem x = 0; x < F.size(); ++x) {
        if (!F.in_subfield(k, x)) continue;
        sum += 1 - 2 * F.trace(F.add(F.mul(a, x), F.mul(b, F.inv(x))));
    }
    return sum;
}

// ---- CCZ invariants -------------------------------------------------------------

struct CczFingerprint {
    int n = 0;
    DiffSpectrum diff;
    std::map<std::uint32_t, std::uint64_t> extended_walsh;  // |w| -> multiplicity

    bool operator==(const CczFingerprint& other) const {
        return n == other.n && diff == other.diff && extended_walsh == other.extended_walsh;
    }
};

inline CczFingerprint ccz_fingerprint(const Permutation& p, int jobs = 1) {
    return {p.field().degree(), diff_spectrum(p, jobs), walsh_stats(p, jobs).extended()};
}

// Differing fingerprints certify CCZ-inequivalence; equal ones certify nothing.
inline bool fingerprints_differ(const CczFingerprint& f1, const CczFingerprint& f2) {
    if (f1.n != f2.n) throw ContextMismatch("fingerprints from different field degrees");
    return !(f1 == f2);
}

// ---- full report -----------------------------------------------------------------

struct AnalysisReport {
    int n = 0;
    std::uint32_t modulus = 0;
    std::string provenance;
    DiffSpectrum diff;
    WalshStats walsh;
    int degree = 0;
    std::optional<BoundCertificate> bounds;
};

inline AnalysisReport analyze(const Permutation& p, std::string provenance = "",
                              std::optional<BoundInput> bound_input = {}, int jobs = 1) {
    AnalysisReport r;
    r.n = p.field().degree();
    r.modulus = p.field().modulus();
    r.provenance = std::move(provenance);
    r.diff = diff_spectrum(p, jobs);
    r.walsh = walsh_stats(p, jobs);
    r.degree = algebraic_degree(p);
    if (bound_input) r.bounds = nl_bounds(r.n, *bound_input);
    return r;
}

}  // namespace du4
