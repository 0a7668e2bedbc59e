#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "face_trace.hpp"

namespace mge {

// A gap between two cyclically consecutive darts at a vertex: `position` is
// an index into the canonical rotation, naming the gap after
// rotation[position]. A vertex of degree d has exactly d corners, and in a
// one-face embedding each of them appears exactly once on the face walk.
struct Corner {
    VertexRef vertex;
    int position = 0;

    friend bool operator==(const Corner& a, const Corner& b) {
        return a.vertex == b.vertex && a.position == b.position;
    }
};

inline std::vector<Corner> corners_at(const Embedding& e, VertexRef v) {
    int d = e.degree(v);  // throws for unknown vertices
    std::vector<Corner> out;
    out.reserve(d);
    for (int t = 0; t < d; ++t) out.push_back(Corner{v, t});
    return out;
}

// The 2-path y_a x_j y_b. Endpoints flagged new are appended to the y part
// when the edge is inserted; the midpoint must already exist.
struct VTypeEdge {
    int midpoint_x = 0;
    std::array<int, 2> endpoints_y{};
    std::array<bool, 2> endpoint_new{};
};

// One decision for inserting a batch of edges: a corner for every
// attachment vertex that already has a rotation (in site order), plus a
// variant index selecting the relative order of darts spliced into a shared
// corner (mixed radix across the batch where several such freedoms exist).
struct InsertionChoice {
    std::vector<Corner> corners;
    int variant = 0;

    friend bool operator==(const InsertionChoice& a, const InsertionChoice& b) {
        return a.corners == b.corners && a.variant == b.variant;
    }
};

namespace detail {

// Either a single pendant edge x-y or a v-type 2-path; the unit the batch
// machinery enumerates over.
struct Primitive {
    enum class Kind { Pendant, VType };
    Kind kind = Kind::VType;
    int x = 0;
    bool x_new = false;
    std::array<int, 2> ys{};       // pendant uses ys[0] only
    std::array<bool, 2> ys_new{};  // pendant uses ys_new[0] only
};

inline std::vector<std::pair<int, int>> primitive_edges(const Primitive& pr) {
    if (pr.kind == Primitive::Kind::Pendant) return {{pr.x, pr.ys[0]}};
    return {{pr.x, pr.ys[0]}, {pr.x, pr.ys[1]}};
}

// Attachment vertices that already carry a rotation, in the order their
// corner records appear in an InsertionChoice.
inline std::vector<VertexRef> primitive_sites(const Primitive& pr) {
    std::vector<VertexRef> out;
    if (!pr.x_new) out.push_back(vx(pr.x));
    if (!pr.ys_new[0]) out.push_back(vy(pr.ys[0]));
    if (pr.kind == Primitive::Kind::VType && !pr.ys_new[1]) out.push_back(vy(pr.ys[1]));
    return out;
}

// Number of distinct splicing orders: only a v-type midpoint receives two
// darts into one corner.
inline int primitive_variant_dim(const Primitive& pr) {
    return pr.kind == Primitive::Kind::VType && !pr.x_new ? 2 : 1;
}

// Checks the new/existing flags against the graph and the rule that new
// vertices extend their part contiguously.
inline void check_primitive(const Graph& g, const Primitive& pr) {
    auto check_x = [&](int i, bool is_new) {
        if (is_new) {
            if (i != g.p() + 1)
                throw InsertionError("new vertex x" + std::to_string(i) +
                                     (i <= g.p() ? " is already present"
                                                 : " would leave a gap; next index is x" +
                                                       std::to_string(g.p() + 1)));
        } else if (i < 1 || i > g.p()) {
            throw InsertionError("vertex x" + std::to_string(i) +
                                 " flagged existing but absent");
        }
    };
    check_x(pr.x, pr.x_new);
    int next_y = g.q() + 1;
    int count = pr.kind == Primitive::Kind::VType ? 2 : 1;
    for (int t = 0; t < count; ++t) {
        int j = pr.ys[t];
        if (pr.ys_new[t]) {
            if (j <= g.q())
                throw InsertionError("endpoint y" + std::to_string(j) +
                                     " flagged new but already present");
            if (j != next_y)
                throw InsertionError("new endpoint y" + std::to_string(j) +
                                     " would leave a gap; next index is y" +
                                     std::to_string(next_y));
            ++next_y;
        } else if (j < 1 || j > g.q()) {
            throw InsertionError("endpoint y" + std::to_string(j) +
                                 " flagged existing but absent");
        }
    }
    if (pr.kind == Primitive::Kind::VType && pr.ys[0] == pr.ys[1])
        throw InsertionError("v-type-edge endpoints must be distinct");
}

inline std::shared_ptr<const Graph> primitive_target(const Graph& g, const Primitive& pr) {
    int add_x = pr.x_new ? 1 : 0;
    int add_y = 0;
    int count = pr.kind == Primitive::Kind::VType ? 2 : 1;
    for (int t = 0; t < count; ++t) add_y += pr.ys_new[t] ? 1 : 0;
    return std::make_shared<const Graph>(g.extended(add_x, add_y, primitive_edges(pr)));
}

// Splices the primitive's darts into the rotations of `e` and returns the
// embedding over the prebuilt target graph. `corners` must follow
// primitive_sites order; positions are validated against the current
// rotations, corner identities only when `validate` is set.
inline Embedding apply_primitive(const Embedding& e, const Primitive& pr,
                                 std::shared_ptr<const Graph> target,
                                 std::span<const Corner> corners, int variant, bool validate) {
    const Graph& g = e.graph();
    const Graph& tg = *target;
    const int m0 = g.edge_count();

    if (validate) {
        auto sites = primitive_sites(pr);
        if (corners.size() != sites.size())
            throw InsertionError("insertion needs " + std::to_string(sites.size()) +
                                 " corner(s), got " + std::to_string(corners.size()));
        for (std::size_t t = 0; t < sites.size(); ++t)
            if (corners[t].vertex != sites[t])
                throw InsertionError("corner " + std::to_string(t) + " names " +
                                     to_string(corners[t].vertex) + ", expected " +
                                     to_string(sites[t]));
        if (variant < 0 || variant >= primitive_variant_dim(pr))
            throw InsertionError("variant " + std::to_string(variant) + " out of range");
    }

    std::vector<std::vector<int>> rot(tg.vertex_count());
    for (int i = 0; i < g.p(); ++i) rot[i] = e.rotation_ord(i);
    for (int j = 0; j < g.q(); ++j) rot[tg.p() + j] = e.rotation_ord(g.p() + j);

    std::size_t ci = 0;
    auto splice = [&](VertexRef site, std::initializer_list<int> eids) {
        auto& r = rot[tg.ordinal(site)];
        const Corner& c = corners[ci++];
        if (c.position < 0 || c.position >= static_cast<int>(r.size()))
            throw InsertionError("stale corner: " + to_string(site) + " has " +
                                 std::to_string(r.size()) + " corners, position " +
                                 std::to_string(c.position) + " requested");
        r.insert(r.begin() + c.position + 1, eids);
    };

    if (pr.kind == Primitive::Kind::Pendant) {
        const int e0 = m0;
        if (pr.x_new)
            rot[tg.ordinal(vx(pr.x))] = {e0};
        else
            splice(vx(pr.x), {e0});
        if (pr.ys_new[0])
            rot[tg.ordinal(vy(pr.ys[0]))] = {e0};
        else
            splice(vy(pr.ys[0]), {e0});
    } else {
        const int ea = m0, eb = m0 + 1;
        if (pr.x_new)
            rot[tg.ordinal(vx(pr.x))] = {ea, eb};
        else if (variant == 0)
            splice(vx(pr.x), {ea, eb});
        else
            splice(vx(pr.x), {eb, ea});
        if (pr.ys_new[0])
            rot[tg.ordinal(vy(pr.ys[0]))] = {ea};
        else
            splice(vy(pr.ys[0]), {ea});
        if (pr.ys_new[1])
            rot[tg.ordinal(vy(pr.ys[1]))] = {eb};
        else
            splice(vy(pr.ys[1]), {eb});
    }
    return Embedding(Embedding::trusted, std::move(target), std::move(rot));
}

}  // namespace detail

// Inserts a v-type-edge with the given corner/variant choice. Total
// operation: the result may have any face count.
inline Embedding insert_vtype(const Embedding& e, const VTypeEdge& vt,
                              const InsertionChoice& c) {
    detail::Primitive pr;
    pr.kind = detail::Primitive::Kind::VType;
    pr.x = vt.midpoint_x;
    pr.x_new = false;
    pr.ys = vt.endpoints_y;
    pr.ys_new = vt.endpoint_new;
    detail::check_primitive(e.graph(), pr);
    auto target = detail::primitive_target(e.graph(), pr);
    return detail::apply_primitive(e, pr, std::move(target), c.corners, c.variant, true);
}

// Single pendant edge x_i - y_j; exactly one endpoint may be new.
inline Embedding insert_pendant(const Embedding& e, int x_index, int y_index, bool x_new,
                                bool y_new, const InsertionChoice& c) {
    detail::Primitive pr;
    pr.kind = detail::Primitive::Kind::Pendant;
    pr.x = x_index;
    pr.x_new = x_new;
    pr.ys = {y_index, 0};
    pr.ys_new = {y_new, false};
    detail::check_primitive(e.graph(), pr);
    auto target = detail::primitive_target(e.graph(), pr);
    return detail::apply_primitive(e, pr, std::move(target), c.corners, c.variant, true);
}

// One stage's worth of additions to a one-face embedding:
//   Claim1Pair k:   the pair y_{2k} x_1 y_{2k+1}, y_{2k} x_2 y_{2k+1} with
//                   both endpoints new (doubling the y side of K_{2,2k-1});
//   PendantVType k: y_1 x_k plus y_2 x_k y_3 with x_k new (first three
//                   edges of a fresh x vertex);
//   SingleVType k,i: y_{2i} x_k y_{2i+1} into the partially attached x_k.
struct InsertionBatch {
    enum class Kind { Claim1Pair, PendantVType, SingleVType };
    Kind kind = Kind::Claim1Pair;
    int k = 0;
    int i = 0;

    std::string label() const {
        switch (kind) {
            case Kind::Claim1Pair:
                return "claim1 k=" + std::to_string(k);
            case Kind::PendantVType:
                return "attach k=" + std::to_string(k) + " sub 0";
            case Kind::SingleVType:
                return "attach k=" + std::to_string(k) + " sub " + std::to_string(i);
        }
        return "?";
    }

    friend bool operator==(const InsertionBatch& a, const InsertionBatch& b) {
        return a.kind == b.kind && a.k == b.k && a.i == b.i;
    }
};

inline InsertionBatch claim1_pair_batch(int k) {
    if (k < 2) throw InvalidArgument("claim1 batch needs k >= 2");
    return InsertionBatch{InsertionBatch::Kind::Claim1Pair, k, 0};
}

inline InsertionBatch pendant_vtype_batch(int k) {
    if (k < 3) throw InvalidArgument("pendant batch needs k >= 3");
    return InsertionBatch{InsertionBatch::Kind::PendantVType, k, 1};
}

inline InsertionBatch single_vtype_batch(int k, int i) {
    if (k < 3 || i < 2) throw InvalidArgument("single v-type batch needs k >= 3, i >= 2");
    return InsertionBatch{InsertionBatch::Kind::SingleVType, k, i};
}

// The construction's per-stage floor on one-face completions.
inline std::uint64_t min_completions(const InsertionBatch& b) {
    auto u = [](int v) { return static_cast<std::uint64_t>(v); };
    switch (b.kind) {
        case InsertionBatch::Kind::Claim1Pair:
            return u(2 * b.k - 1) * u(2 * b.k - 1) * 2;
        case InsertionBatch::Kind::PendantVType:
            return u(b.k - 1) * u(b.k - 1) * u(b.k - 1);
        case InsertionBatch::Kind::SingleVType:
            return u(2 * b.i - 1) * u(b.k - 1) * u(b.k - 1);
    }
    return 0;
}

namespace detail {

struct BatchPlan {
    std::vector<Primitive> prims;
    std::vector<std::shared_ptr<const Graph>> graphs;  // target after each primitive
    std::vector<int> variant_dims;
    int combined_variant_dim = 1;
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidArgument(msg);
}

inline BatchPlan plan_batch(const Graph& g, const InsertionBatch& b) {
    BatchPlan plan;
    switch (b.kind) {
        case InsertionBatch::Kind::Claim1Pair: {
            require(g.p() == 2 && g.q() == 2 * b.k - 1 && g.edge_count() == 2 * g.q(),
                    b.label() + " expects a complete K_{2," + std::to_string(2 * b.k - 1) +
                        "}, got " + g.label() + " with " + std::to_string(g.edge_count()) +
                        " edges");
            Primitive first{Primitive::Kind::VType, 1, false,
                            {2 * b.k, 2 * b.k + 1}, {true, true}};
            Primitive second{Primitive::Kind::VType, 2, false,
                             {2 * b.k, 2 * b.k + 1}, {false, false}};
            plan.prims = {first, second};
            break;
        }
        case InsertionBatch::Kind::PendantVType: {
            require(g.p() == b.k - 1 && g.q() >= 3 && g.q() % 2 == 1 &&
                        g.edge_count() == g.p() * g.q(),
                    b.label() + " expects a complete K_{" + std::to_string(b.k - 1) + ",n}, got " +
                        g.label() + " with " + std::to_string(g.edge_count()) + " edges");
            Primitive pend{Primitive::Kind::Pendant, b.k, true, {1, 0}, {false, false}};
            Primitive vee{Primitive::Kind::VType, b.k, false, {2, 3}, {false, false}};
            plan.prims = {pend, vee};
            break;
        }
        case InsertionBatch::Kind::SingleVType: {
            require(g.p() == b.k && g.q() >= 2 * b.i + 1,
                    b.label() + " expects x" + std::to_string(b.k) + " present and y up to y" +
                        std::to_string(2 * b.i + 1) + ", got " + g.label());
            require(g.degree(vx(b.k)) == 2 * b.i - 1,
                    b.label() + " expects deg(x" + std::to_string(b.k) + ") = " +
                        std::to_string(2 * b.i - 1) + ", got " +
                        std::to_string(g.degree(vx(b.k))));
            Primitive vee{Primitive::Kind::VType, b.k, false, {2 * b.i, 2 * b.i + 1},
                          {false, false}};
            plan.prims = {vee};
            break;
        }
    }
    const Graph* cur = &g;
    for (const auto& pr : plan.prims) {
        check_primitive(*cur, pr);
        plan.graphs.push_back(primitive_target(*cur, pr));
        plan.variant_dims.push_back(primitive_variant_dim(pr));
        plan.combined_variant_dim *= plan.variant_dims.back();
        cur = plan.graphs.back().get();
    }
    return plan;
}

// Enumerates every (corner tuple, variant) combination of the batch in
// lexicographic order, calling fn(corners, combined_variant, result) at
// each leaf. Deterministic.
template <typename Fn>
inline void enumerate_batch(const Embedding& cur, const BatchPlan& plan, std::size_t idx,
                            std::vector<Corner>& corners, int variant_acc, Fn& fn) {
    if (idx == plan.prims.size()) {
        fn(corners, variant_acc, cur);
        return;
    }
    const Primitive& pr = plan.prims[idx];
    const auto sites = primitive_sites(pr);
    const int vdim = plan.variant_dims[idx];

    std::vector<int> dims(sites.size());
    for (std::size_t t = 0; t < sites.size(); ++t) dims[t] = cur.degree(sites[t]);
    std::vector<int> pos(sites.size(), 0);

    const std::size_t base_sz = corners.size();
    bool done = false;
    while (!done) {
        for (std::size_t t = 0; t < sites.size(); ++t)
            corners.push_back(Corner{sites[t], pos[t]});
        for (int v = 0; v < vdim; ++v) {
            Embedding next = apply_primitive(
                cur, pr, plan.graphs[idx],
                std::span<const Corner>(corners).subspan(base_sz), v, false);
            enumerate_batch(next, plan, idx + 1, corners, variant_acc * vdim + v, fn);
        }
        corners.resize(base_sz);
        done = true;
        for (int t = static_cast<int>(sites.size()) - 1; t >= 0; --t) {
            if (++pos[t] < dims[t]) {
                done = false;
                break;
            }
            pos[t] = 0;
        }
    }
}

template <typename Fn>
inline void for_each_batch_outcome(const Embedding& e, const InsertionBatch& b, Fn fn) {
    BatchPlan plan = plan_batch(e.graph(), b);
    std::vector<Corner> corners;
    enumerate_batch(e, plan, 0, corners, 0, fn);
}

}  // namespace detail

// Every (corner tuple, variant) of the batch's choice space, in
// lexicographic order.
inline std::uint64_t choice_space_size(const Embedding& e, const InsertionBatch& b) {
    detail::BatchPlan plan = detail::plan_batch(e.graph(), b);
    std::uint64_t total = 1;
    const Graph* cur = &e.graph();
    for (std::size_t t = 0; t < plan.prims.size(); ++t) {
        for (VertexRef site : detail::primitive_sites(plan.prims[t]))
            total *= static_cast<std::uint64_t>(cur->degree(site));
        total *= plan.variant_dims[t];
        cur = plan.graphs[t].get();
    }
    return total;
}

struct BatchOutcome {
    InsertionChoice choice;
    Embedding embedding;
};

// Applies every combination and keeps those whose result is one-face.
// An empty list is a legal outcome (it falsifies the stage upstream).
inline std::vector<BatchOutcome> one_face_outcomes(const Embedding& e, const InsertionBatch& b) {
    if (!is_one_face(e))
        throw InvalidArgument("completions are enumerated from one-face embeddings only");
    std::vector<BatchOutcome> out;
    detail::for_each_batch_outcome(
        e, b, [&](const std::vector<Corner>& corners, int variant, const Embedding& result) {
            if (count_faces(result) == 1)
                out.push_back(BatchOutcome{InsertionChoice{corners, variant}, result});
        });
    return out;
}

inline std::vector<InsertionChoice> valid_completions(const Embedding& e, const InsertionBatch& b) {
    if (!is_one_face(e))
        throw InvalidArgument("completions are enumerated from one-face embeddings only");
    std::vector<InsertionChoice> out;
    detail::for_each_batch_outcome(
        e, b, [&](const std::vector<Corner>& corners, int variant, const Embedding& result) {
            if (count_faces(result) == 1) out.push_back(InsertionChoice{corners, variant});
        });
    return out;
}

// Replays one recorded choice through the batch.
inline Embedding apply_batch(const Embedding& e, const InsertionBatch& b,
                             const InsertionChoice& c) {
    detail::BatchPlan plan = detail::plan_batch(e.graph(), b);

    // split the combined variant back into per-primitive variants
    std::vector<int> variants(plan.prims.size());
    int v = c.variant;
    if (v < 0 || v >= plan.combined_variant_dim)
        throw InsertionError("variant " + std::to_string(c.variant) +
                             " out of range for " + b.label());
    for (int t = static_cast<int>(plan.prims.size()) - 1; t >= 0; --t) {
        variants[t] = v % plan.variant_dims[t];
        v /= plan.variant_dims[t];
    }

    Embedding cur = e;
    std::size_t ci = 0;
    for (std::size_t t = 0; t < plan.prims.size(); ++t) {
        auto sites = detail::primitive_sites(plan.prims[t]);
        if (ci + sites.size() > c.corners.size())
            throw InsertionError(b.label() + " needs more corners than the choice records");
        std::span<const Corner> slice(c.corners.data() + ci, sites.size());
        ci += sites.size();
        cur = detail::apply_primitive(cur, plan.prims[t], plan.graphs[t], slice, variants[t],
                                      true);
    }
    if (ci != c.corners.size())
        throw InsertionError(b.label() + ": choice records " + std::to_string(c.corners.size()) +
                             " corners, batch uses " + std::to_string(ci));
    return cur;
}

}  // namespace mge
