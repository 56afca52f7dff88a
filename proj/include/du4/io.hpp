#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "du4/construct.hpp"
#include "du4/permutation.hpp"
#include "du4/spectral.hpp"
#include "du4/subsets.hpp"

namespace du4 {

using json = nlohmann::ordered_json;

inline std::string hex_string(std::uint32_t v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "0x%X", v);
    return buf;
}

inline std::uint32_t parse_uint(const std::string& s) {
    std::size_t pos = 0;
    unsigned long v = std::stoul(s, &pos, s.starts_with("0x") || s.starts_with("0X") ? 16 : 10);
    if (pos != s.size()) throw Error("bad number literal: " + s);
    return static_cast<std::uint32_t>(v);
}

inline std::uint32_t modulus_from_json(const json& j) {
    if (j.is_string()) return parse_uint(j.get<std::string>());
    return j.get<std::uint32_t>();
}

// ---- permutations ----------------------------------------------------------

inline json perm_to_json(const Permutation& p) {
    json j;
    j["n"] = p.field().degree();
    j["modulus"] = hex_string(p.field().modulus());
    j["table"] = p.table();
    return j;
}

inline Permutation perm_from_json(const json& j) {
    FieldRef ctx = make_field(j.at("n").get<int>(), modulus_from_json(j.at("modulus")));
    std::vector<Elem> table;
    for (const auto& v : j.at("table"))
        table.push_back(v.is_string() ? parse_uint(v.get<std::string>()) : v.get<Elem>());
    return Permutation(std::move(ctx), std::move(table));
}

// Newline-delimited values, index-ordered.
inline void perm_to_text(const Permutation& p, std::ostream& os, bool hex = false) {
    for (Elem v : p.table())
        if (hex)
            os << hex_string(v) << '\n';
        else
            os << v << '\n';
}

inline Permutation perm_from_text(FieldRef ctx, std::istream& is) {
    std::vector<Elem> table;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        table.push_back(parse_uint(line));
    }
    return Permutation(std::move(ctx), std::move(table));
}

// ---- sets --------------------------------------------------------------------

inline json set_to_json(const ElementSet& s) {
    json j;
    j["n"] = s.field().degree();
    j["modulus"] = hex_string(s.field().modulus());
    json elems = json::array();
    for (Elem e : s.elements()) elems.push_back(hex_string(e));
    j["elements"] = std::move(elems);
    return j;
}

// Accepts {n, modulus, exponents:[...]} or {n, modulus, elements:[...]}.
inline ElementSet set_from_json(const json& j, FieldRef ctx = nullptr) {
    if (!ctx) ctx = make_field(j.at("n").get<int>(), modulus_from_json(j.at("modulus")));
    if (j.contains("exponents")) {
        std::vector<std::uint32_t> exps;
        for (const auto& v : j.at("exponents"))
            exps.push_back(v.is_string() ? parse_uint(v.get<std::string>()) : v.get<std::uint32_t>());
        return set_from_exponents(std::move(ctx), exps);
    }
    std::vector<Elem> elems;
    for (const auto& v : j.at("elements"))
        elems.push_back(v.is_string() ? parse_uint(v.get<std::string>()) : v.get<Elem>());
    return set_from_elements(std::move(ctx), elems);
}

// ---- reports -------------------------------------------------------------------

// Multiset rendering in the usual {v1^m1,v2^m2} notation.
template <class Map>
std::string multiset_string(const Map& m) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [v, c] : m) {
        if (!first) os << ',';
        first = false;
        os << v << '^' << c;
    }
    os << '}';
    return os.str();
}

inline json spectrum_pairs(const std::map<std::uint32_t, std::uint64_t>& m) {
    json a = json::array();
    for (auto [v, c] : m) a.push_back(json::array({v, c}));
    return a;
}

inline json report_to_json(const AnalysisReport& r) {
    json j;
    j["n"] = r.n;
    j["modulus"] = hex_string(r.modulus);
    j["provenance"] = r.provenance;
    j["diff_spectrum"] = spectrum_pairs(r.diff.counts);
    j["uniformity"] = r.diff.uniformity;
    j["nonlinearity"] = r.walsh.nonlinearity;
    j["degree"] = r.degree;
    if (r.bounds) {
        json b;
        b["lemma9"] = r.bounds->lemma9_bound;
        if (r.bounds->prop4_bound) b["prop4"] = *r.bounds->prop4_bound;
        b["best"] = r.bounds->best_bound;
        j["bounds"] = std::move(b);
    }
    j["walsh_extended"] = spectrum_pairs(r.walsh.extended());
    return j;
}

inline std::string report_to_csv(const AnalysisReport& r) {
    std::ostringstream os;
    os << "n,modulus,provenance,uniformity,nonlinearity,degree,lemma9,prop4,best,"
          "diff_spectrum,walsh_extended\n";
    os << r.n << ',' << hex_string(r.modulus) << ',' << r.provenance << ',' << r.diff.uniformity
       << ',' << r.walsh.nonlinearity << ',' << r.degree << ',';
    if (r.bounds) {
        os << r.bounds->lemma9_bound << ',';
        if (r.bounds->prop4_bound)
            os << *r.bounds->prop4_bound;
        os << ',' << r.bounds->best_bound;
    } else {
        os << ",,";
    }
    os << ',' << multiset_string(r.diff.counts) << ',' << multiset_string(r.walsh.extended())
       << '\n';
    return os.str();
}

// ---- construction provenance ------------------------------------------------------

inline json family_to_json(const SetFamilySpec& f) {
    json j;
    switch (f.kind) {
        case SetFamilySpec::Kind::Subfield: j["kind"] = "subfield"; break;
        case SetFamilySpec::Kind::UnionSubfields: j["kind"] = "union_subfields"; break;
        case SetFamilySpec::Kind::SubfieldDifference: j["kind"] = "subfield_difference"; break;
        case SetFamilySpec::Kind::TraceOneClosed: j["kind"] = "trace_one_closed"; break;
        case SetFamilySpec::Kind::UnionTraceOneAndDifference:
            j["kind"] = "union_trace_one_and_difference";
            break;
        case SetFamilySpec::Kind::AffineInverseSet: j["kind"] = "affine_inverse_set"; break;
        default: j["kind"] = "explicit"; break;
    }
    j["k1"] = f.k1;
    j["k2"] = f.k2;
    j["t1"] = f.t1;
    j["s1_size"] = f.s1_size;
    return j;
}

inline SetFamilySpec family_from_json(const json& j) {
    SetFamilySpec f;
    std::string kind = j.value("kind", "explicit");
    using K = SetFamilySpec::Kind;
    if (kind == "subfield") f.kind = K::Subfield;
    else if (kind == "union_subfields") f.kind = K::UnionSubfields;
    else if (kind == "subfield_difference") f.kind = K::SubfieldDifference;
    else if (kind == "trace_one_closed") f.kind = K::TraceOneClosed;
    else if (kind == "union_trace_one_and_difference") f.kind = K::UnionTraceOneAndDifference;
    else if (kind == "affine_inverse_set") f.kind = K::AffineInverseSet;
    else f.kind = K::Explicit;
    f.k1 = j.value("k1", 0);
    f.k2 = j.value("k2", 0);
    f.t1 = j.value("t1", 0u);
    f.s1_size = j.value("s1_size", std::size_t{0});
    return f;
}

inline json construction_to_json(const ConstructionResult& r) {
    json j = perm_to_json(r.perm);
    j["provenance"] = r.provenance();
    j["theorem"] = r.theorem;
    j["family"] = family_to_json(r.family);
    json elems = json::array();
    for (Elem e : r.set.elements()) elems.push_back(hex_string(e));
    j["set_elements"] = std::move(elems);
    j["checked"] = r.checked;
    return j;
}

}  // namespace du4
