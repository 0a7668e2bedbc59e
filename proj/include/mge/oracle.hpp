#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bignat.hpp"
#include "face_trace.hpp"
#include "rand_util.hpp"
#include "text_format.hpp"

namespace mge {

// Number of rotation systems of g: product over vertices of (deg - 1)!.
inline BigNat rotation_count(const Graph& g) {
    BigNat total = 1;
    for (int v = 0; v < g.vertex_count(); ++v)
        total *= factorial(g.degree_ord(v) - 1);
    return total;
}

inline BigNat default_enumeration_budget() { return BigNat(1000000000); }

namespace detail {

// Walks every rotation system of a graph exactly once, in lexicographic
// order of canonical rotations (vertex order x_1..x_p, y_1..y_q; each
// rotation compared as its neighbor sequence). The first vertex is the
// designated partition vertex: fixing its rotation yields a contiguous
// block of the enumeration, which is how the census is parallelized.
class RotationOdometer {
public:
    explicit RotationOdometer(std::shared_ptr<const Graph> g) : g_(std::move(g)) {
        rot_.resize(g_->vertex_count());
        reset_from(0);
    }

    const Graph& graph() const { return *g_; }
    const std::shared_ptr<const Graph>& graph_ptr() const { return g_; }
    const std::vector<std::vector<int>>& rotations() const { return rot_; }

    void reset_from(int from) {
        for (int v = from; v < g_->vertex_count(); ++v) rot_[v] = g_->incident_ord(v);
    }

    // Advance vertices [from, end); returns false once that range has
    // wrapped around completely.
    bool advance(int from) {
        for (int v = g_->vertex_count() - 1; v >= from; --v) {
            auto& r = rot_[v];
            if (r.size() < 3) continue;  // at most one canonical rotation
            Side s = g_->side_of(v);
            auto cmp = [&](int a, int b) {
                return g_->neighbor_index(a, s) < g_->neighbor_index(b, s);
            };
            if (std::next_permutation(r.begin() + 1, r.end(), cmp)) return true;
        }
        return false;
    }

    static BigNat block_count(const Graph& g) { return factorial(g.degree_ord(0) - 1); }

    // Pin the designated vertex to its idx-th canonical rotation.
    void set_block(std::uint64_t idx) {
        auto& r = rot_[0];
        r = g_->incident_ord(0);
        Side s = g_->side_of(0);
        auto cmp = [&](int a, int b) {
            return g_->neighbor_index(a, s) < g_->neighbor_index(b, s);
        };
        for (std::uint64_t t = 0; t < idx; ++t)
            std::next_permutation(r.begin() + (r.empty() ? 0 : 1), r.end(), cmp);
    }

private:
    std::shared_ptr<const Graph> g_;
    std::vector<std::vector<int>> rot_;
};

}  // namespace detail

// Deterministic stream of every embedding of a graph, refused up front when
// the rotation count exceeds the budget. Passing a partition block pins the
// designated vertex (x_1) to its block-th canonical rotation and streams
// only that slice; the slices over all blocks partition the full stream,
// which is how workers share an enumeration.
class EmbeddingStream {
public:
    explicit EmbeddingStream(std::shared_ptr<const Graph> g,
                             BigNat budget = default_enumeration_budget(),
                             std::optional<std::uint64_t> block = std::nullopt)
        : odo_(std::move(g)), block_(block) {
        BigNat total = rotation_count(odo_.graph());
        if (total > budget)
            throw BudgetExceeded("enumeration of " + odo_.graph().label() +
                                     " rotation systems",
                                 total.str(), budget.str());
        if (block_) {
            BigNat blocks = detail::RotationOdometer::block_count(odo_.graph());
            if (BigNat(*block_) >= blocks)
                throw InvalidArgument("partition block " + std::to_string(*block_) +
                                      " out of range; the designated vertex has " +
                                      blocks.str() + " rotations");
            odo_.set_block(*block_);
        }
    }

    std::optional<Embedding> next() {
        if (done_) return std::nullopt;
        if (!started_)
            started_ = true;
        else if (!odo_.advance(block_ ? 1 : 0)) {
            done_ = true;
            return std::nullopt;
        }
        return Embedding(Embedding::trusted, odo_.graph_ptr(), odo_.rotations());
    }

    const std::shared_ptr<const Graph>& graph_ptr() const { return odo_.graph_ptr(); }

    // Rotations of the designated vertex = number of partition blocks.
    static BigNat partition_block_count(const Graph& g) {
        return detail::RotationOdometer::block_count(g);
    }

private:
    detail::RotationOdometer odo_;
    std::optional<std::uint64_t> block_;
    bool started_ = false;
    bool done_ = false;
};

inline EmbeddingStream enumerate_embeddings(std::shared_ptr<const Graph> g,
                                            BigNat budget = default_enumeration_budget(),
                                            std::optional<std::uint64_t> block = std::nullopt) {
    return EmbeddingStream(std::move(g), std::move(budget), block);
}

inline EmbeddingStream enumerate_embeddings(const Graph& g,
                                            BigNat budget = default_enumeration_budget(),
                                            std::optional<std::uint64_t> block = std::nullopt) {
    return EmbeddingStream(std::make_shared<const Graph>(g), std::move(budget), block);
}

struct CensusOptions {
    BigNat budget = default_enumeration_budget();
    int jobs = 1;
};

struct CensusReport {
    int p = 0;
    int q = 0;
    int vertices = 0;
    int edges = 0;
    BigNat total_systems;
    std::map<int, BigNat> by_face_count;
    BigNat one_face;
    BigNat max_genus_count;
    int min_face_count = 0;
    int max_genus = 0;
    double elapsed_seconds = 0.0;
};

// Exhaustive face census over every rotation system. Embarrassingly
// parallel: workers own disjoint blocks of the designated vertex's
// rotations and their partial counts are merged by addition, so the report
// is identical for any worker count.
inline CensusReport face_census(std::shared_ptr<const Graph> gp, const CensusOptions& opt = {}) {
    const Graph& g = *gp;
    const auto t0 = std::chrono::steady_clock::now();

    BigNat total = rotation_count(g);
    if (total > opt.budget)
        throw BudgetExceeded("face census of " + g.label(), total.str(), opt.budget.str());

    const std::uint64_t blocks =
        static_cast<std::uint64_t>(detail::RotationOdometer::block_count(g));
    const int jobs = std::max(1, opt.jobs);
    const int workers = static_cast<int>(std::min<std::uint64_t>(jobs, blocks));

    // face counts of a connected graph lie in [1, m - n + 2]
    const std::size_t max_faces = static_cast<std::size_t>(g.edge_count()) + 2;
    auto run_blocks = [&](std::uint64_t first, std::uint64_t step, std::vector<std::uint64_t>& hist) {
        detail::RotationOdometer odo(gp);
        detail::FaceScratch scratch;
        hist.assign(max_faces + 1, 0);
        for (std::uint64_t b = first; b < blocks; b += step) {
            odo.set_block(b);
            odo.reset_from(1);
            do {
                ++hist[detail::count_faces_rot(g, odo.rotations(), scratch)];
            } while (odo.advance(1));
        }
    };

    std::vector<std::vector<std::uint64_t>> partial(workers);
    if (workers <= 1) {
        run_blocks(0, 1, partial[0]);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    run_blocks(static_cast<std::uint64_t>(w), workers, partial[w]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    CensusReport report;
    report.p = g.p();
    report.q = g.q();
    report.vertices = g.vertex_count();
    report.edges = g.edge_count();
    report.total_systems = total;
    for (const auto& hist : partial)
        for (std::size_t r = 0; r < hist.size(); ++r)
            if (hist[r]) report.by_face_count[static_cast<int>(r)] += hist[r];

    BigNat sum = 0;
    for (const auto& [faces, count] : report.by_face_count) sum += count;
    if (sum != total)
        throw Error("census self-check failed: counted " + sum.str() + " of " +
                    total.str() + " systems");

    auto it1 = report.by_face_count.find(1);
    report.one_face = it1 == report.by_face_count.end() ? BigNat(0) : it1->second;
    report.min_face_count = report.by_face_count.begin()->first;
    report.max_genus_count = report.by_face_count.begin()->second;
    report.max_genus = genus_for_face_count(g, report.min_face_count);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

inline CensusReport face_census(const Graph& g, const CensusOptions& opt = {}) {
    return face_census(std::make_shared<const Graph>(g), opt);
}

// Count of embeddings attaining the maximum genus over all rotation
// systems: the census entry at the minimal face count.
inline BigNat count_max_genus(const Graph& g, const CensusOptions& opt = {}) {
    return face_census(g, opt).max_genus_count;
}

// Uniformly random rotation system (canonical phase kept, tail shuffled).
inline Embedding random_embedding(std::shared_ptr<const Graph> gp, std::mt19937_64& rng) {
    const Graph& g = *gp;
    std::vector<std::vector<int>> rot(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        rot[v] = g.incident_ord(v);
        auto& r = rot[v];
        if (r.size() < 3) continue;  // at most one canonical rotation
        for (std::size_t t = r.size() - 1; t >= 2; --t)
            std::swap(r[t], r[1 + detail::bounded_u64(rng, t)]);
    }
    return Embedding(Embedding::trusted, std::move(gp), std::move(rot));
}

// Aligned human-readable table.
inline std::string render_census_table(const CensusReport& r, bool include_elapsed = true) {
    std::string out = "census of K_{" + std::to_string(r.p) + "," + std::to_string(r.q) +
                      "}: " + std::to_string(r.vertices) + " vertices, " +
                      std::to_string(r.edges) + " edges\n";
    out += "rotation systems: " + r.total_systems.str() + "\n";
    std::size_t cw = 5;
    for (const auto& [faces, count] : r.by_face_count) cw = std::max(cw, count.str().size());
    out += "faces  genus  " + std::string(cw > 5 ? cw - 5 : 0, ' ') + "count\n";
    int n = r.vertices, m = r.edges;
    for (const auto& [faces, count] : r.by_face_count) {
        std::string f = std::to_string(faces);
        std::string gnum = std::to_string((2 - (n - m + faces)) / 2);
        std::string c = count.str();
        out += std::string(5 - f.size(), ' ') + f + "  " + std::string(5 - gnum.size(), ' ') +
               gnum + "  " + std::string(cw - c.size(), ' ') + c + "\n";
    }
    out += "one-face systems: " + r.one_face.str() + "\n";
    out += "maximum-genus systems: " + r.max_genus_count.str() + " (" +
           std::to_string(r.min_face_count) + " face(s), genus " +
           std::to_string(r.max_genus) + ")\n";
    if (include_elapsed) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "elapsed: %.3fs\n", r.elapsed_seconds);
        out += buf;
    }
    return out;
}

// Line-delimited records; exact decimal integers only.
inline std::string render_census_records(const CensusReport& r) {
    std::string out = "# census p=" + std::to_string(r.p) + " q=" + std::to_string(r.q) +
                      " total=" + r.total_systems.str() + "\n";
    for (const auto& [faces, count] : r.by_face_count)
        out += "faces=" + std::to_string(faces) + " count=" + count.str() + "\n";
    return out;
}

}  // namespace mge
