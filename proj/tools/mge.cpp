// Command-line front end: exhaustive rotation-system censuses, staged
// generation of one-face embeddings of K_{n,n}, per-stage claim
// verification, exact bound tables, and face tracing of embedding files.
//
// Exit status: 0 all checks pass, 1 claim/bound mismatch, 2 usage, parse or
// budget error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mge/mge.hpp"

namespace {

mge::BigNat parse_budget(const std::string& text) {
    try {
        mge::BigNat b(text);
        if (b <= 0) throw mge::InvalidArgument("budget must be positive, got " + text);
        return b;
    } catch (const std::runtime_error&) {
        throw mge::InvalidArgument("budget must be a positive integer, got '" + text + "'");
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mge::InvalidArgument("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw mge::InvalidArgument("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mge::InvalidArgument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommonOpts {
    int jobs = 1;
    std::string budget;
    std::string format = "text";
    std::string out;
};

int cmd_census(int p, int q, const CommonOpts& c, const mge::BigNat& budget) {
    auto report = mge::face_census(mge::build_complete_bipartite(p, q),
                                   mge::CensusOptions{budget, c.jobs});
    if (c.format == "records")
        std::cout << mge::render_census_records(report);
    else
        std::cout << mge::render_census_table(report, true);
    if (!c.out.empty())
        write_file(c.out, c.format == "records" ? mge::render_census_records(report)
                                                : mge::render_census_table(report, false));
    return 0;
}

int cmd_generate(int n, bool exhaustive, std::uint64_t samples, std::uint64_t seed,
                 const CommonOpts& c, const mge::BigNat& budget) {
    mge::GenerateOptions opt;
    opt.exhaustive = exhaustive;
    opt.samples = samples;
    opt.seed = seed;
    opt.budget = budget;
    opt.jobs = c.jobs;

    auto t0 = std::chrono::steady_clock::now();
    auto items = mge::generate_all(n, opt);
    auto report = mge::verify_distinct(items);
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!c.out.empty()) {
        std::string emb_text, choice_text;
        for (std::size_t t = 0; t < items.size(); ++t) {
            emb_text += "# item " + std::to_string(t) + "\n";
            emb_text += mge::serialize(items[t].embedding);
            emb_text += "\n";
            choice_text += mge::format_choice_sequence(items[t].seq) + "\n";
        }
        write_file(c.out + ".embeddings.txt", emb_text);
        write_file(c.out + ".choices.txt", choice_text);
        std::cout << "wrote " << c.out << ".embeddings.txt and " << c.out << ".choices.txt\n";
    }

    std::cout << "generated " << report.total << " one-face embeddings of K_{" << n << "," << n
              << "} (" << (exhaustive ? "exhaustive" : "sampled, seed " + std::to_string(seed))
              << ")\n";
    std::cout << "distinct: " << report.unique_embeddings << " / " << report.total;
    if (report.duplicate_sequences)
        std::cout << " (" << report.duplicate_sequences << " repeated provenance line(s))";
    std::cout << "\n";
    std::cout << "provenance collisions: " << report.collisions.size() << "\n";
    for (const auto& col : report.collisions)
        std::cout << "  collision between\n    " << col.sequence_a << "\n    " << col.sequence_b
                  << "\n";
    std::cout << "mirror pairs within the set: " << report.mirror_pairs
              << ", self-mirror: " << report.self_mirror << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "elapsed: %.3fs\n", elapsed);
    std::cout << buf;
    return report.collisions.empty() ? 0 : 1;
}

int cmd_verify_claims(int n, std::uint64_t samples, std::uint64_t seed, const CommonOpts& c,
                      const mge::BigNat& budget) {
    auto report = mge::verify_claims(n, samples, seed, budget, c.jobs);
    std::cout << mge::render_claims_table(report);
    if (!c.out.empty()) write_file(c.out, mge::render_claims_table(report));
    return report.all_pass ? 0 : 1;
}

int cmd_bounds(const std::vector<int>& ns, const CommonOpts& c) {
    auto rows = mge::compare_table(ns);
    std::string text =
        c.format == "records" ? mge::render_bounds_records(rows) : mge::render_bounds_table(rows);
    std::cout << text;
    if (!c.out.empty())
        write_file(c.out, c.format == "records" ? mge::render_bounds_records(rows)
                                                : mge::render_bounds_table(rows));
    return 0;
}

int cmd_trace(const std::string& path, const CommonOpts& c) {
    auto e = mge::parse_embedding(read_file(path));
    auto census = mge::trace_faces(e);
    std::string out;
    if (c.format == "records") {
        out += "faces=" + std::to_string(census.face_count) +
               " genus=" + std::to_string(census.genus) + "\n";
        for (const auto& walk : census.walks) {
            out += "walk=";
            for (std::size_t t = 0; t < walk.size(); ++t)
                out += (t ? "," : "") + mge::to_string(walk[t]);
            out += "\n";
        }
    } else {
        out += "faces: " + std::to_string(census.face_count) + "\n";
        out += "genus: " + std::to_string(census.genus) + "\n";
        for (std::size_t w = 0; w < census.walks.size(); ++w) {
            out += "walk " + std::to_string(w + 1) + " (length " +
                   std::to_string(census.walks[w].size()) + "):";
            for (const auto& d : census.walks[w]) out += " " + mge::to_string(d);
            out += "\n";
        }
    }
    std::cout << out;
    if (!c.out.empty()) write_file(c.out, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "one-face (maximum-genus) embeddings of complete bipartite graphs:\n"
        "exhaustive rotation censuses, staged v-type-edge generation, stage\n"
        "verification, and exact lower-bound tables"};
    app.require_subcommand(1);

    CommonOpts common;
    auto add_common = [&](CLI::App* sub, bool with_format = true) {
        sub->add_option("--jobs", common.jobs, "worker threads")
            ->envname("MGE_JOBS")
            ->check(CLI::PositiveNumber);
        sub->add_option("--budget", common.budget, "enumeration/materialization budget")
            ->envname("MGE_BUDGET");
        if (with_format)
            sub->add_option("--format", common.format, "output format")
                ->check(CLI::IsMember({"text", "records"}));
        sub->add_option("--out", common.out, "write primary output to this path/prefix");
    };

    // census
    auto* census = app.add_subcommand("census", "exhaustive face census of K_{p,q}");
    std::vector<int> parts;
    census->add_option("--parts", parts, "part sizes p q")->expected(2)->required();
    add_common(census);

    // generate
    auto* generate =
        app.add_subcommand("generate", "one-face embeddings of K_{n,n} with provenance");
    int gen_n = 0;
    bool gen_exhaustive = false;
    std::uint64_t gen_samples = 0, gen_seed = 0;
    generate->add_option("--n", gen_n, "odd side size n")->required();
    generate->add_flag("--exhaustive", gen_exhaustive, "materialize the full stage tree");
    auto* sample_opt = generate->add_option("--sample", gen_samples, "number of seeded draws");
    generate->add_option("--seed", gen_seed, "seed for sampled mode");
    add_common(generate, false);

    // verify-claims
    auto* verify = app.add_subcommand("verify-claims",
                                      "check per-stage one-face completion counts against floors");
    int vc_n = 0;
    std::uint64_t vc_samples = 20, vc_seed = 0;
    verify->add_option("--n", vc_n, "odd side size n")->required();
    verify->add_option("--samples", vc_samples, "sampled paths when the tree exceeds the budget");
    verify->add_option("--seed", vc_seed, "seed for sampled mode");
    add_common(verify, false);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "exact lower-bound comparison table");
    std::vector<int> bound_ns;
    bounds->add_option("--n", bound_ns, "odd n values (comma separated)")
        ->required()
        ->delimiter(',');
    add_common(bounds);

    // trace
    auto* trace = app.add_subcommand("trace", "face census of an embedding file");
    std::string trace_path;
    trace->add_option("file", trace_path, "embedding text file")->required();
    add_common(trace);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(census)) {
            mge::BigNat budget = common.budget.empty() ? mge::default_enumeration_budget()
                                                       : parse_budget(common.budget);
            return cmd_census(parts[0], parts[1], common, budget);
        }
        if (app.got_subcommand(generate)) {
            if (gen_exhaustive && sample_opt->count())
                throw mge::InvalidArgument("choose one of --exhaustive or --sample K");
            bool exhaustive = !sample_opt->count();
            mge::BigNat budget = common.budget.empty() ? mge::default_materialization_budget()
                                                       : parse_budget(common.budget);
            return cmd_generate(gen_n, exhaustive, gen_samples, gen_seed, common, budget);
        }
        if (app.got_subcommand(verify)) {
            mge::BigNat budget = common.budget.empty() ? mge::default_materialization_budget()
                                                       : parse_budget(common.budget);
            return cmd_verify_claims(vc_n, vc_samples, vc_seed, common, budget);
        }
        if (app.got_subcommand(bounds)) return cmd_bounds(bound_ns, common);
        if (app.got_subcommand(trace)) return cmd_trace(trace_path, common);
        return 2;
    } catch (const mge::ClaimViolation& e) {
        std::cerr << "claim violation: " << e.what() << "\n";
        return 1;
    } catch (const mge::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mge::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const mge::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
