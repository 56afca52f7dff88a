// du4 — build and analyze differentially 4-uniform permutations obtained by
// switching the inverse function on a subset of F_{2^n}.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "du4/du4.hpp"

namespace {

using du4::json;

std::uint32_t parse_modulus_flag(int n, const std::string& hex) {
    return hex.empty() ? du4::default_modulus(n) : du4::parse_uint(hex);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw du4::Error("cannot open output file: " + path);
    os << content;
}

int cmd_field(int n, const std::string& modulus_hex) {
    du4::FieldRef ctx = du4::make_field(n, parse_modulus_flag(n, modulus_hex));
    json j;
    j["n"] = ctx->degree();
    j["modulus"] = du4::hex_string(ctx->modulus());
    j["irreducible"] = true;
    j["primitive"] = ctx->generator_check();
    if (n % 2 == 0) j["omega"] = du4::hex_string(ctx->omega());
    j["trace_one_count"] = (1u << n) / 2;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_build(int n, const std::string& modulus_hex, int theorem, int k, int k1, int k2, int l,
              const std::string& s1_path, bool fast, const std::string& out) {
    du4::FieldRef ctx = du4::make_field(n, parse_modulus_flag(n, modulus_hex));

    std::optional<du4::ElementSet> s1;
    if (!s1_path.empty()) {
        std::ifstream is(s1_path);
        if (!is) throw du4::Error("cannot open set file: " + s1_path);
        s1 = du4::set_from_json(json::parse(is), ctx);
    }

    du4::ConstructionResult result = [&] {
        switch (theorem) {
            case 1: return du4::construct_theorem1(ctx, k, fast);
            case 2:
                if (!s1) throw du4::PreconditionViolated("theorem 2 needs --s1 <setfile>");
                return du4::construct_theorem2(ctx, *s1, fast);
            case 3: return du4::construct_theorem3(ctx, k1, k2, fast);
            case 4: return du4::construct_theorem4(ctx, k1, fast);
            case 5: return du4::construct_theorem5(ctx, k, l, s1 ? &*s1 : nullptr, fast);
            case 6: return du4::construct_theorem6(ctx, fast);
            case 7: return du4::construct_theorem7(ctx, fast);
            default: throw du4::PreconditionViolated("--theorem must be in 1..7");
        }
    }();

    write_file(out, du4::construction_to_json(result).dump(2) + "\n");
    std::cerr << result.provenance() << "  |S|=" << result.set.size()
              << (result.checked ? "  checked" : "  fast") << "  -> " << out << '\n';
    return 0;
}

int cmd_analyze(const std::string& perm_path, int n, const std::string& modulus_hex,
                const std::string& out, int jobs) {
    std::ifstream is(perm_path);
    if (!is) throw du4::Error("cannot open permutation file: " + perm_path);

    std::string provenance;
    std::optional<du4::BoundInput> bound_input;
    du4::Permutation p = [&]() -> du4::Permutation {
        if (perm_path.size() > 5 && perm_path.substr(perm_path.size() - 5) == ".json") {
            json j = json::parse(is);
            provenance = j.value("provenance", "");
            if (j.contains("family") && j.contains("set_elements")) {
                du4::SetFamilySpec fam = du4::family_from_json(j["family"]);
                du4::BoundInput in;
                in.set_size = j["set_elements"].size();
                if (fam.kind == du4::SetFamilySpec::Kind::Subfield)
                    in.subfield_union = std::pair<int, int>{fam.k1, fam.k1};
                else if (fam.kind == du4::SetFamilySpec::Kind::UnionSubfields)
                    in.subfield_union = std::pair<int, int>{fam.k1, fam.k2};
                bound_input = in;
            }
            return du4::perm_from_json(j);
        }
        if (n == 0) throw du4::PreconditionViolated("text tables need --n");
        return du4::perm_from_text(du4::make_field(n, parse_modulus_flag(n, modulus_hex)), is);
    }();

    du4::AnalysisReport report = du4::analyze(p, provenance, bound_input, jobs);
    bool csv = out.size() > 4 && out.substr(out.size() - 4) == ".csv";
    std::string text = csv ? du4::report_to_csv(report) : du4::report_to_json(report).dump(2) + "\n";
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_file(out, text);
    std::cerr << "NL=" << report.walsh.nonlinearity << "  uniformity=" << report.diff.uniformity
              << "  degree=" << report.degree << '\n';
    return 0;
}

int cmd_tables(int n, const std::string& out_dir, int jobs) {
    std::vector<int> ns = n ? std::vector<int>{n} : std::vector<int>{6, 10, 12};
    bool mismatch = false;
    for (int deg : ns) {
        std::vector<du4::TableRow> rows = du4::reproduce_table(deg, jobs);
        for (const du4::TableRow& r : rows) {
            std::cout << "n=" << deg << " [" << du4::to_string(r.status) << "] S=" << r.set_label
                      << " NL=" << r.nonlinearity << " D=" << du4::multiset_string(r.spectrum.counts)
                      << " B>=" << r.bounds.best_bound << '\n';
            if (r.status == du4::RowStatus::Mismatch) mismatch = true;
        }
        std::string stem = out_dir + "/tables_n" + std::to_string(deg);
        write_file(stem + ".json", du4::table_to_json(deg, rows).dump(2) + "\n");
        write_file(stem + ".csv", du4::table_to_csv(rows));
    }
    return mismatch ? 1 : 0;
}

int cmd_examples(const std::string& out, int jobs) {
    std::vector<du4::ExampleResult> rs = du4::run_examples(jobs);
    bool ok = true;
    for (const du4::ExampleResult& r : rs) {
        std::cout << "example " << r.index << ": |S1|=" << r.s1_size << " NL(thm5)=" << r.nl_theorem5
                  << " NL(thm2)=" << r.nl_theorem2 << (r.match ? "  [MATCH]" : "  [MISMATCH]")
                  << '\n';
        ok = ok && r.match;
    }
    write_file(out, du4::examples_to_json(rs).dump(2) + "\n");
    return ok ? 0 : 1;
}

int cmd_sample(std::uint32_t count, std::uint64_t seed, bool full, const std::string& out,
               int jobs) {
    if (full) count = 10000;
    std::string path = out.empty() ? "samples_seed" + std::to_string(seed) + ".csv" : out;
    std::ostringstream csv;
    du4::SampleStats st = du4::sample_table4(count, seed, jobs, &csv);
    write_file(path, csv.str());
    std::cout << du4::sample_stats_to_json(st).dump(2) << '\n';
    std::cerr << "wrote " << path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"differentially 4-uniform permutations from inverse-function switching"};
    app.require_subcommand(1);

    int jobs = 0;
    app.add_option("--jobs", jobs, "worker threads (default: DU4_JOBS or hardware)");

    int n = 0, theorem = 0, k = 0, k1 = 0, k2 = 0, l = 0;
    std::string modulus_hex, s1_path, out, perm_path, out_dir = ".";
    bool fast = false, full = false;
    std::uint32_t count = 0;
    std::uint64_t seed = 1;

    CLI::App* c_field = app.add_subcommand("field", "inspect/verify a field modulus");
    c_field->add_option("--n", n, "extension degree")->required();
    c_field->add_option("--modulus", modulus_hex, "coefficient mask, e.g. 0x1099");

    CLI::App* c_build = app.add_subcommand("build", "run a theorem construction");
    c_build->add_option("--n", n, "extension degree")->required();
    c_build->add_option("--modulus", modulus_hex, "coefficient mask");
    c_build->add_option("--theorem", theorem, "construction 1..7")->required();
    c_build->add_option("--k", k, "subfield degree (theorems 1, 5)");
    c_build->add_option("--k1", k1, "first subfield degree (theorems 3, 4)");
    c_build->add_option("--k2", k2, "second subfield degree (theorem 3)");
    c_build->add_option("--l", l, "removed subfield degree (theorem 5)");
    c_build->add_option("--s1", s1_path, "set file for S1 (theorems 2, 5)");
    c_build->add_flag("--fast", fast, "skip the brute-force uniformity check");
    c_build->add_option("--out", out, "output permutation JSON")->required();

    CLI::App* c_analyze = app.add_subcommand("analyze", "full spectral report of a permutation");
    c_analyze->add_option("perm", perm_path, "permutation file (.json or text table)")->required();
    c_analyze->add_option("--n", n, "degree (text tables only)");
    c_analyze->add_option("--modulus", modulus_hex, "coefficient mask (text tables only)");
    c_analyze->add_option("--out", out, "report file (.json or .csv; default stdout)");

    CLI::App* c_tables = app.add_subcommand("tables", "reproduce the published tables");
    c_tables->add_option("--n", n, "one of 6, 10, 12 (default: all)");
    c_tables->add_option("--out-dir", out_dir, "directory for tables_nN.{json,csv}");

    CLI::App* c_examples = app.add_subcommand("examples", "reproduce the three worked examples");
    c_examples->add_option("--out", out, "output JSON");

    CLI::App* c_sample = app.add_subcommand("sample", "seeded statistical rerun of the S1 sampling");
    c_sample->add_option("--count", count, "number of samples")->required();
    c_sample->add_option("--seed", seed, "RNG seed (default 1)");
    c_sample->add_flag("--full", full, "use the full 10000-sample count");
    c_sample->add_option("--out", out, "CSV path (default samples_seed<seed>.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_field) return cmd_field(n, modulus_hex);
        if (*c_build) return cmd_build(n, modulus_hex, theorem, k, k1, k2, l, s1_path, fast, out);
        if (*c_analyze) return cmd_analyze(perm_path, n, modulus_hex, out, jobs);
        if (*c_tables) return cmd_tables(n, out_dir, jobs);
        if (*c_examples)
            return cmd_examples(out.empty() ? std::string("examples.json") : out, jobs);
        if (*c_sample) return cmd_sample(count, seed, full, out, jobs);
    } catch (const du4::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
