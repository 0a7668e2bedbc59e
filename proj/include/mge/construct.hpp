#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "bignat.hpp"
#include "insertion.hpp"
#include "rand_util.hpp"
#include "text_format.hpp"

namespace mge {

// The one-face rotation systems of K_{2,3}, filtered out of all four
// systems, in lexicographic order. These seed every construction.
inline std::vector<Embedding> base_embeddings_k23() {
    auto g = std::make_shared<const Graph>(build_complete_bipartite(2, 3));
    std::vector<Embedding> out;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            std::vector<std::vector<int>> rot(g->vertex_count());
            for (int v = 0; v < g->vertex_count(); ++v) rot[v] = g->incident_ord(v);
            if (a) std::swap(rot[0][1], rot[0][2]);
            if (b) std::swap(rot[1][1], rot[1][2]);
            Embedding e(Embedding::trusted, g, std::move(rot));
            if (is_one_face(e)) out.push_back(std::move(e));
        }
    }
    return out;
}

inline Embedding k11_embedding() {
    auto g = std::make_shared<const Graph>(build_complete_bipartite(1, 1));
    return Embedding(Embedding::trusted, std::move(g),
                     std::vector<std::vector<int>>{{0}, {0}});
}

// Doubling stage of the two-hub family: all one-face extensions of a
// one-face K_{2,2k-1} by the new y-pair on both hubs. Throws ClaimViolation
// when fewer than (2k-1)^2 * 2 survive.
struct StageOutcome {
    std::vector<BatchOutcome> outputs;
    std::uint64_t observed = 0;
};

inline StageOutcome claim1_stage(const Embedding& e, int k) {
    InsertionBatch b = claim1_pair_batch(k);
    StageOutcome r;
    r.outputs = one_face_outcomes(e, b);
    r.observed = r.outputs.size();
    if (r.observed < min_completions(b))
        throw ClaimViolation(b.label(), min_completions(b), r.observed, serialize(e));
    return r;
}

struct AttachOutcome {
    // per output: the substep choices (sub 0, then i = 2..s) and the result
    std::vector<std::pair<std::vector<InsertionChoice>, Embedding>> outputs;
    std::uint64_t sub0_observed = 0;
    std::map<int, std::pair<std::uint64_t, std::uint64_t>> substep_observed;  // i -> (min, max)
    BigNat stage_floor;
};

namespace detail {

inline BigNat attach_stage_floor(int k, int s) {
    return BigNat(k - 1) * double_factorial(2 * s - 1) *
           boost::multiprecision::pow(BigNat(k - 1), static_cast<unsigned>(2 * s));
}

inline AttachOutcome attach_walk(const Embedding& e, int k, bool assert_floors) {
    const int n = e.graph().q();
    if (n % 2 == 0) throw InvalidArgument("attach stage needs an odd y side");
    const int s = (n - 1) / 2;

    AttachOutcome w;
    w.stage_floor = attach_stage_floor(k, s);

    InsertionBatch sub0 = pendant_vtype_batch(k);
    auto first = one_face_outcomes(e, sub0);
    w.sub0_observed = first.size();
    if (assert_floors && w.sub0_observed < min_completions(sub0))
        throw ClaimViolation(sub0.label(), min_completions(sub0), w.sub0_observed, serialize(e));

    for (auto& o : first)
        w.outputs.emplace_back(std::vector<InsertionChoice>{std::move(o.choice)},
                               std::move(o.embedding));

    for (int i = 2; i <= s && !w.outputs.empty(); ++i) {
        InsertionBatch b = single_vtype_batch(k, i);
        std::vector<std::pair<std::vector<InsertionChoice>, Embedding>> next;
        std::uint64_t mn = ~0ull, mx = 0;
        for (auto& [choices, emb] : w.outputs) {
            auto outs = one_face_outcomes(emb, b);
            std::uint64_t got = outs.size();
            mn = std::min(mn, got);
            mx = std::max(mx, got);
            if (assert_floors && got < min_completions(b))
                throw ClaimViolation(b.label(), min_completions(b), got, serialize(emb));
            for (auto& o : outs) {
                auto ext = choices;
                ext.push_back(std::move(o.choice));
                next.emplace_back(std::move(ext), std::move(o.embedding));
            }
        }
        w.substep_observed[i] = {mn, mx};
        w.outputs = std::move(next);
    }

    if (assert_floors && BigNat(w.outputs.size()) < w.stage_floor)
        throw ClaimViolation("attach k=" + std::to_string(k) + " total",
                             w.stage_floor.convert_to<std::uint64_t>(), w.outputs.size(),
                             serialize(e));
    return w;
}

}  // namespace detail

// Attaches x_k to all of y_1..y_n: the pendant-plus-v-type substep followed
// by one v-type-edge per remaining y pair, keeping one-face survivors at
// every step. Throws ClaimViolation if any substep or the stage total falls
// below its floor.
inline AttachOutcome attach_x_stage(const Embedding& e, int k) {
    return detail::attach_walk(e, k, true);
}

// The staged product of per-stage floors; algebraically identical to f1(n).
inline BigNat predicted_count(int n) {
    if (n < 1 || n % 2 == 0)
        throw InvalidArgument("predicted_count is defined for odd n >= 1 (got n=" +
                              std::to_string(n) + ")");
    if (n == 1) return 1;
    const int s = (n - 1) / 2;
    BigNat total = 2;  // base one-face systems of K_{2,3}
    for (int k = 2; k <= s; ++k) total *= min_completions(claim1_pair_batch(k));
    for (int k = 3; k <= n; ++k) total *= detail::attach_stage_floor(k, s);
    return total;
}

// Floor for the two-hub family alone: one-face K_{2,m} embeddings.
inline BigNat claim1_predicted_count(int m) {
    if (m < 3 || m % 2 == 0)
        throw InvalidArgument("claim1_predicted_count needs odd m >= 3");
    BigNat total = 2;
    for (int k = 2; k <= (m - 1) / 2; ++k) total *= min_completions(claim1_pair_batch(k));
    return total;
}

// ---------------------------------------------------------------------------
// Provenance: a replayable record of every decision from the base selection
// to the last stage.

struct StageChoice {
    InsertionBatch batch;
    InsertionChoice choice;

    friend bool operator==(const StageChoice& a, const StageChoice& b) {
        return a.batch == b.batch && a.choice == b.choice;
    }
};

struct ChoiceSequence {
    int n = 0;            // target side size of the run that produced it
    int base_index = -1;  // index into base_embeddings_k23(); -1 for n = 1
    std::vector<StageChoice> stages;

    friend bool operator==(const ChoiceSequence& a, const ChoiceSequence& b) {
        return a.n == b.n && a.base_index == b.base_index && a.stages == b.stages;
    }
};

// One line per sequence:
//   n=5 base=1 | claim1 k=2 c=x1:0,x2:2,y4:0,y5:0 v=3 | pendant k=3 c=... v=0 | single k=3 i=2 c=... v=1
inline std::string format_choice_sequence(const ChoiceSequence& seq) {
    std::string out = "n=" + std::to_string(seq.n);
    if (seq.base_index >= 0) out += " base=" + std::to_string(seq.base_index);
    for (const auto& st : seq.stages) {
        out += " | ";
        switch (st.batch.kind) {
            case InsertionBatch::Kind::Claim1Pair:
                out += "claim1 k=" + std::to_string(st.batch.k);
                break;
            case InsertionBatch::Kind::PendantVType:
                out += "pendant k=" + std::to_string(st.batch.k);
                break;
            case InsertionBatch::Kind::SingleVType:
                out += "single k=" + std::to_string(st.batch.k) +
                       " i=" + std::to_string(st.batch.i);
                break;
        }
        out += " c=";
        for (std::size_t t = 0; t < st.choice.corners.size(); ++t) {
            if (t) out += ",";
            out += to_string(st.choice.corners[t].vertex) + ":" +
                   std::to_string(st.choice.corners[t].position);
        }
        if (st.choice.corners.empty()) out += "-";
        out += " v=" + std::to_string(st.choice.variant);
    }
    return out;
}

namespace detail {

inline int parse_int_field(const std::string& tok, std::string_view key) {
    std::string prefix = std::string(key) + "=";
    if (tok.rfind(prefix, 0) != 0)
        throw InvalidArgument("choice sequence: expected " + prefix + "..., got '" + tok + "'");
    try {
        return std::stoi(tok.substr(prefix.size()));
    } catch (const std::exception&) {
        throw InvalidArgument("choice sequence: bad integer in '" + tok + "'");
    }
}

inline std::vector<std::string> split_on(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

inline ChoiceSequence parse_choice_sequence(std::string_view line) {
    using detail::parse_int_field;
    ChoiceSequence seq;
    auto chunks = detail::split_on(line, '|');
    {
        auto toks = detail::split_ws(chunks[0]);
        if (toks.empty()) throw InvalidArgument("choice sequence: empty header");
        seq.n = parse_int_field(toks[0], "n");
        if (toks.size() > 1) seq.base_index = parse_int_field(toks[1], "base");
    }
    for (std::size_t c = 1; c < chunks.size(); ++c) {
        auto toks = detail::split_ws(chunks[c]);
        if (toks.empty()) throw InvalidArgument("choice sequence: empty stage record");
        StageChoice st;
        std::size_t t = 1;
        if (toks[0] == "claim1") {
            st.batch = claim1_pair_batch(parse_int_field(toks[t++], "k"));
        } else if (toks[0] == "pendant") {
            st.batch = pendant_vtype_batch(parse_int_field(toks[t++], "k"));
        } else if (toks[0] == "single") {
            int k = parse_int_field(toks[t++], "k");
            int i = parse_int_field(toks[t++], "i");
            st.batch = single_vtype_batch(k, i);
        } else {
            throw InvalidArgument("choice sequence: unknown stage kind '" + toks[0] + "'");
        }
        if (t >= toks.size()) throw InvalidArgument("choice sequence: missing corners");
        std::string ctok = toks[t++];
        if (ctok.rfind("c=", 0) != 0)
            throw InvalidArgument("choice sequence: expected c=..., got '" + ctok + "'");
        std::string cbody = ctok.substr(2);
        if (cbody != "-") {
            for (const auto& item : detail::split_on(cbody, ',')) {
                auto parts = detail::split_on(item, ':');
                if (parts.size() != 2)
                    throw InvalidArgument("choice sequence: bad corner '" + item + "'");
                VertexRef v = detail::parse_vertex_token(parts[0], 0);
                int pos = 0;
                try {
                    pos = std::stoi(parts[1]);
                } catch (const std::exception&) {
                    throw InvalidArgument("choice sequence: bad corner position in '" + item + "'");
                }
                st.choice.corners.push_back(Corner{v, pos});
            }
        }
        if (t >= toks.size()) throw InvalidArgument("choice sequence: missing variant");
        st.choice.variant = parse_int_field(toks[t++], "v");
        seq.stages.push_back(std::move(st));
    }
    return seq;
}

// Deterministically rebuilds the embedding a sequence describes.
inline Embedding replay(const ChoiceSequence& seq) {
    if (seq.base_index < 0) {
        if (!seq.stages.empty())
            throw InvalidArgument("choice sequence without a base cannot have stages");
        return k11_embedding();
    }
    auto bases = base_embeddings_k23();
    if (seq.base_index >= static_cast<int>(bases.size()))
        throw InvalidArgument("choice sequence names base " + std::to_string(seq.base_index) +
                              " of " + std::to_string(bases.size()));
    Embedding cur = bases[seq.base_index];
    for (const auto& st : seq.stages) cur = apply_batch(cur, st.batch, st.choice);
    return cur;
}

// ---------------------------------------------------------------------------
// Generation.

struct GeneratedItem {
    ChoiceSequence seq;
    Embedding embedding;
};

inline BigNat default_materialization_budget() { return BigNat(1000000); }

struct GenerateOptions {
    bool exhaustive = true;
    std::uint64_t samples = 0;  // sampled mode: number of draws
    std::uint64_t seed = 0;
    BigNat budget = default_materialization_budget();
    int jobs = 1;
};

namespace detail {

// Stage order of the full construction toward K_{n,n}.
inline std::vector<InsertionBatch> full_plan(int n) {
    const int s = (n - 1) / 2;
    std::vector<InsertionBatch> plan;
    for (int k = 2; k <= s; ++k) plan.push_back(claim1_pair_batch(k));
    for (int k = 3; k <= n; ++k) {
        plan.push_back(pendant_vtype_batch(k));
        for (int i = 2; i <= s; ++i) plan.push_back(single_vtype_batch(k, i));
    }
    return plan;
}

// fn maps one input item to a vector of outputs; results are concatenated
// in input order so the stream is identical for any worker count.
template <typename T, typename Fn>
inline std::vector<T> flatmap_ordered(std::vector<T> items, int jobs, Fn fn) {
    const std::size_t count = items.size();
    std::vector<std::vector<T>> per(count);
    auto run = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t) per[t] = fn(items[t]);
    };
    const int workers =
        std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (workers <= 1) {
        run(0, count);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        const std::size_t chunk = (count + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            std::size_t lo = w * chunk, hi = std::min(count, lo + chunk);
            pool.emplace_back([&, lo, hi, w] {
                try {
                    run(lo, hi);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
    }
    std::vector<T> out;
    for (auto& v : per) out.insert(out.end(), std::make_move_iterator(v.begin()),
                                   std::make_move_iterator(v.end()));
    return out;
}

// Evaluates fn(0..count-1) into a vector, optionally across threads;
// output order is by index regardless of the worker count.
template <typename R, typename Fn>
inline std::vector<R> map_indexed(std::uint64_t count, int jobs, Fn fn) {
    std::vector<std::optional<R>> buf(count);
    auto run = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t t = lo; t < hi; ++t) buf[t] = fn(t);
    };
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(
                                                            std::min<std::uint64_t>(count, 1024))));
    if (workers <= 1) {
        run(0, count);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        const std::uint64_t chunk = (count + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            std::uint64_t lo = w * chunk, hi = std::min<std::uint64_t>(count, lo + chunk);
            pool.emplace_back([&, lo, hi, w] {
                try {
                    run(lo, hi);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
    }
    std::vector<R> out;
    out.reserve(count);
    for (auto& o : buf) out.push_back(std::move(*o));
    return out;
}

inline std::vector<GeneratedItem> expand_all(std::vector<GeneratedItem> items,
                                             const std::vector<InsertionBatch>& plan, int jobs) {
    for (const auto& batch : plan) {
        items = flatmap_ordered(std::move(items), jobs, [&](const GeneratedItem& item) {
            auto outs = one_face_outcomes(item.embedding, batch);
            if (outs.size() < min_completions(batch))
                throw ClaimViolation(batch.label(), min_completions(batch), outs.size(),
                                     serialize(item.embedding));
            std::vector<GeneratedItem> next;
            next.reserve(outs.size());
            for (auto& o : outs) {
                GeneratedItem g{item.seq, std::move(o.embedding)};
                g.seq.stages.push_back(StageChoice{batch, std::move(o.choice)});
                next.push_back(std::move(g));
            }
            return next;
        });
    }
    return items;
}

inline std::vector<GeneratedItem> base_items(int n) {
    std::vector<GeneratedItem> items;
    auto bases = base_embeddings_k23();
    for (int b = 0; b < static_cast<int>(bases.size()); ++b)
        items.push_back(GeneratedItem{ChoiceSequence{n, b, {}}, bases[b]});
    return items;
}

}  // namespace detail

// All one-face K_{2,m} embeddings reachable through the doubling stages.
inline std::vector<GeneratedItem> generate_claim1(int m,
                                                  const BigNat& budget = default_materialization_budget(),
                                                  int jobs = 1) {
    if (m < 3 || m % 2 == 0)
        throw InvalidArgument("claim1 generation needs odd m >= 3 (got m=" + std::to_string(m) +
                              ")");
    BigNat predicted = claim1_predicted_count(m);
    if (predicted > budget)
        throw BudgetExceeded("exhaustive K_{2," + std::to_string(m) + "} generation",
                             predicted.str(), budget.str());
    std::vector<InsertionBatch> plan;
    for (int k = 2; k <= (m - 1) / 2; ++k) plan.push_back(claim1_pair_batch(k));
    return detail::expand_all(detail::base_items(m), plan, jobs);
}

// One-face embeddings of K_{n,n} with full provenance. Exhaustive mode
// materializes every path through the stage tree (refused beyond the
// budget); sampled mode draws a uniformly random survivor at every stage
// and is reproducible from the seed for any job count.
inline std::vector<GeneratedItem> generate_all(int n, const GenerateOptions& opt = {}) {
    if (n < 1 || n % 2 == 0)
        throw InvalidArgument("generation is defined for odd n >= 1 (got n=" + std::to_string(n) +
                              ")");
    if (n == 1)
        return {GeneratedItem{ChoiceSequence{1, -1, {}}, k11_embedding()}};

    if (opt.exhaustive) {
        BigNat predicted = predicted_count(n);
        if (predicted > opt.budget)
            throw BudgetExceeded("exhaustive generation for n=" + std::to_string(n),
                                 predicted.str(), opt.budget.str());
        return detail::expand_all(detail::base_items(n), detail::full_plan(n), opt.jobs);
    }

    const auto bases = base_embeddings_k23();
    const auto plan = detail::full_plan(n);
    return detail::map_indexed<GeneratedItem>(opt.samples, opt.jobs, [&](std::uint64_t d) {
        auto rng = detail::task_rng(opt.seed, d);
        int base = static_cast<int>(detail::bounded_u64(rng, bases.size()));
        GeneratedItem item{ChoiceSequence{n, base, {}}, bases[base]};
        for (const auto& batch : plan) {
            auto outs = one_face_outcomes(item.embedding, batch);
            if (outs.size() < min_completions(batch))
                throw ClaimViolation(batch.label(), min_completions(batch), outs.size(),
                                     serialize(item.embedding));
            auto& pick = outs[detail::bounded_u64(rng, outs.size())];
            item.seq.stages.push_back(StageChoice{batch, std::move(pick.choice)});
            item.embedding = std::move(pick.embedding);
        }
        return item;
    });
}

// ---------------------------------------------------------------------------
// Distinctness.

struct CollisionRecord {
    std::string embedding_text;
    std::string sequence_a;
    std::string sequence_b;
};

struct DistinctReport {
    std::size_t total = 0;
    std::size_t unique_embeddings = 0;
    std::size_t duplicate_sequences = 0;  // same provenance emitted twice (sampled mode)
    std::vector<CollisionRecord> collisions;
    std::size_t mirror_pairs = 0;  // unique embeddings whose mirror is also in the set
    std::size_t self_mirror = 0;

    bool injective() const { return collisions.empty(); }
};

// Confirms that distinct choice sequences map to distinct embeddings, over
// canonical serializations. Collisions are report content, not errors; each
// one carries both provenance lines. Mirror statistics are reported because
// the counting never quotients by reflection.
inline DistinctReport verify_distinct(const std::vector<GeneratedItem>& items) {
    DistinctReport rep;
    rep.total = items.size();
    std::map<std::string, std::string> first_seen;  // embedding text -> sequence line
    for (const auto& item : items) {
        std::string text = serialize(item.embedding);
        std::string line = format_choice_sequence(item.seq);
        auto [it, inserted] = first_seen.emplace(std::move(text), std::move(line));
        if (!inserted) {
            if (it->second == format_choice_sequence(item.seq))
                ++rep.duplicate_sequences;
            else
                rep.collisions.push_back(
                    CollisionRecord{it->first, it->second, format_choice_sequence(item.seq)});
        }
    }
    rep.unique_embeddings = first_seen.size();
    for (const auto& [text, line] : first_seen) {
        std::string mt = serialize(mirror(parse_embedding(text)));
        if (mt == text)
            ++rep.self_mirror;
        else if (mt > text && first_seen.count(mt))
            ++rep.mirror_pairs;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Stage-by-stage verification of the construction's counting.

struct ClaimRow {
    std::string stage;
    std::uint64_t floor = 0;
    std::uint64_t observed_min = ~0ull;
    std::uint64_t observed_max = 0;
    std::uint64_t checked = 0;

    bool pass() const { return checked > 0 && observed_min >= floor; }
};

struct ClaimsReport {
    int n = 0;
    bool exhaustive = false;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    bool base_mirror_pair = false;
    std::vector<ClaimRow> rows;
    BigNat total_generated;  // exhaustive mode only
    BigNat predicted;
    bool all_pass = true;
};

namespace detail {

inline ClaimRow& claim_row(std::vector<ClaimRow>& rows, const std::string& stage,
                           std::uint64_t floor) {
    for (auto& r : rows)
        if (r.stage == stage) return r;
    rows.push_back(ClaimRow{stage, floor, ~0ull, 0, 0});
    return rows.back();
}

inline void record(std::vector<ClaimRow>& rows, const std::string& stage, std::uint64_t floor,
                   std::uint64_t observed) {
    ClaimRow& r = claim_row(rows, stage, floor);
    r.observed_min = std::min(r.observed_min, observed);
    r.observed_max = std::max(r.observed_max, observed);
    ++r.checked;
}

}  // namespace detail

// Checks every stage's one-face completion count against its floor.
// Runs the full stage tree when the predicted total fits the budget;
// otherwise verifies the floors along `samples` random root-to-leaf paths.
inline ClaimsReport verify_claims(int n, std::uint64_t samples, std::uint64_t seed,
                                  const BigNat& budget = default_materialization_budget(),
                                  int jobs = 1) {
    if (n < 1 || n % 2 == 0)
        throw InvalidArgument("claim verification is defined for odd n >= 1 (got n=" +
                              std::to_string(n) + ")");
    ClaimsReport rep;
    rep.n = n;
    rep.samples = samples;
    rep.seed = seed;
    rep.predicted = predicted_count(n);

    if (n == 1) {
        rep.exhaustive = true;
        detail::record(rep.rows, "K_{1,1} single system", 1, 1);
        rep.total_generated = 1;
        return rep;
    }

    auto bases = base_embeddings_k23();
    detail::record(rep.rows, "base K_{2,3}", 2, bases.size());
    rep.base_mirror_pair = bases.size() == 2 && mirror(bases[0]) == bases[1];

    const int s = (n - 1) / 2;
    rep.exhaustive = rep.predicted <= budget;

    if (rep.exhaustive) {
        std::vector<Embedding> items = bases;
        for (int k = 2; k <= s; ++k) {
            InsertionBatch b = claim1_pair_batch(k);
            std::vector<Embedding> next;
            for (const auto& e : items) {
                auto outs = one_face_outcomes(e, b);
                detail::record(rep.rows, b.label(), min_completions(b), outs.size());
                for (auto& o : outs) next.push_back(std::move(o.embedding));
            }
            items = std::move(next);
        }
        for (int k = 3; k <= n; ++k) {
            std::vector<Embedding> next;
            std::string total_label = "attach k=" + std::to_string(k) + " total";
            for (const auto& e : items) {
                AttachOutcome w = detail::attach_walk(e, k, false);
                detail::record(rep.rows, pendant_vtype_batch(k).label(),
                               min_completions(pendant_vtype_batch(k)), w.sub0_observed);
                for (const auto& [i, mm] : w.substep_observed) {
                    InsertionBatch b = single_vtype_batch(k, i);
                    ClaimRow& r = detail::claim_row(rep.rows, b.label(), min_completions(b));
                    r.observed_min = std::min(r.observed_min, mm.first);
                    r.observed_max = std::max(r.observed_max, mm.second);
                    ++r.checked;
                }
                detail::record(rep.rows, total_label,
                               w.stage_floor.convert_to<std::uint64_t>(), w.outputs.size());
                for (auto& [choices, emb] : w.outputs) next.push_back(std::move(emb));
            }
            items = std::move(next);
        }
        rep.total_generated = items.size();
        detail::record(rep.rows, "overall", rep.predicted.convert_to<std::uint64_t>(),
                       items.size());
    } else {
        const auto plan = detail::full_plan(n);
        struct PathResult {
            std::vector<std::pair<std::string, std::pair<std::uint64_t, std::uint64_t>>> obs;
        };
        auto paths = detail::map_indexed<PathResult>(samples, jobs, [&](std::uint64_t d) {
            auto rng = detail::task_rng(seed, d);
            Embedding cur = bases[detail::bounded_u64(rng, bases.size())];
            PathResult res;
            for (const auto& batch : plan) {
                auto outs = one_face_outcomes(cur, batch);
                res.obs.emplace_back(batch.label(),
                                     std::make_pair(min_completions(batch),
                                                    static_cast<std::uint64_t>(outs.size())));
                if (outs.empty()) break;
                cur = std::move(outs[detail::bounded_u64(rng, outs.size())].embedding);
            }
            return res;
        });
        for (const auto& pr : paths)
            for (const auto& [label, fo] : pr.obs)
                detail::record(rep.rows, label, fo.first, fo.second);
    }

    for (const auto& r : rep.rows) rep.all_pass = rep.all_pass && r.pass();
    return rep;
}

inline std::string render_claims_table(const ClaimsReport& rep) {
    std::string out = "claim verification for n=" + std::to_string(rep.n) + " (" +
                      (rep.exhaustive ? "exhaustive stage tree" :
                                        "sampled paths: " + std::to_string(rep.samples) +
                                            ", seed " + std::to_string(rep.seed)) +
                      ")\n";
    if (rep.n > 1)
        out += std::string("base pair mirror-related: ") +
               (rep.base_mirror_pair ? "yes" : "no") + "\n";
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"stage", "floor", "observed", "checked", "verdict"});
    for (const auto& r : rep.rows) {
        std::string obs = r.checked == 0 ? "-"
                          : r.observed_min == r.observed_max
                              ? std::to_string(r.observed_min)
                              : std::to_string(r.observed_min) + ".." +
                                    std::to_string(r.observed_max);
        cells.push_back({r.stage, std::to_string(r.floor), obs, std::to_string(r.checked),
                         r.pass() ? "PASS" : "FAIL"});
    }
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) out += std::string(width[c] - row[c].size() + 2, ' ');
        }
        out += "\n";
    }
    if (rep.exhaustive)
        out += "generated " + rep.total_generated.str() + " embeddings; predicted floor " +
               rep.predicted.str() + "\n";
    out += std::string("verdict: ") + (rep.all_pass ? "PASS" : "FAIL") + "\n";
    return out;
}

}  // namespace mge
