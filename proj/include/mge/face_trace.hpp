#pragma once

#include <string>
#include <vector>

#include "embedding.hpp"

namespace mge {

// A directed edge side: each undirected edge (x_i, y_j) contributes the dart
// x_i -> y_j and its reverse y_j -> x_i.
struct Dart {
    VertexRef tail;
    VertexRef head;

    friend bool operator==(const Dart& a, const Dart& b) {
        return a.tail == b.tail && a.head == b.head;
    }
};

inline std::string to_string(const Dart& d) {
    return to_string(d.tail) + "->" + to_string(d.head);
}

struct FaceCensus {
    std::vector<std::vector<Dart>> walks;
    int face_count = 0;
    int genus = 0;
};

namespace detail {

// Dart ids: edge e gives 2e (x->y) and 2e+1 (y->x).
struct FaceScratch {
    std::vector<int> next;
    std::vector<char> seen;
};

// Face-tracing convention, fixed for the whole artifact: the successor of a
// dart u->v is the rotation-successor at v of the reverse dart v->u. The
// opposite convention would produce the mirror family.
inline void fill_face_successors(const Graph& g, const std::vector<std::vector<int>>& rot,
                                 std::vector<int>& next) {
    next.resize(2 * static_cast<std::size_t>(g.edge_count()));
    for (int v = 0; v < g.p(); ++v) {
        const auto& r = rot[v];
        const std::size_t len = r.size();
        for (std::size_t t = 0; t < len; ++t) {
            int e = r[t];
            int e2 = r[t + 1 == len ? 0 : t + 1];
            next[2 * e + 1] = 2 * e2;  // arrive y->x, leave on x's next edge
        }
    }
    for (int v = g.p(); v < g.vertex_count(); ++v) {
        const auto& r = rot[v];
        const std::size_t len = r.size();
        for (std::size_t t = 0; t < len; ++t) {
            int e = r[t];
            int e2 = r[t + 1 == len ? 0 : t + 1];
            next[2 * e] = 2 * e2 + 1;  // arrive x->y, leave on y's next edge
        }
    }
}

inline int count_faces_rot(const Graph& g, const std::vector<std::vector<int>>& rot,
                           FaceScratch& s) {
    if (!g.is_connected())
        throw InvalidArgument("face tracing requires a connected graph");
    const int darts = 2 * g.edge_count();
    fill_face_successors(g, rot, s.next);
    s.seen.assign(darts, 0);
    int faces = 0;
    for (int d = 0; d < darts; ++d) {
        if (s.seen[d]) continue;
        ++faces;
        int t = d;
        do {
            s.seen[t] = 1;
            t = s.next[t];
        } while (t != d);
    }
    return faces;
}

}  // namespace detail

inline int genus_for_face_count(const Graph& g, int faces) {
    int twice = 2 - (g.vertex_count() - g.edge_count() + faces);
    if (twice < 0 || twice % 2 != 0)
        throw Error("Euler identity violated: n=" + std::to_string(g.vertex_count()) +
                    " m=" + std::to_string(g.edge_count()) + " r=" + std::to_string(faces));
    return twice / 2;
}

inline int count_faces(const Embedding& e) {
    thread_local detail::FaceScratch scratch;
    return detail::count_faces_rot(e.graph(), e.rotations(), scratch);
}

// Partitions the 2m darts into facial walks. Walks are listed by smallest
// contained dart id and start at it, so the census is deterministic.
inline FaceCensus trace_faces(const Embedding& e) {
    const Graph& g = e.graph();
    if (!g.is_connected())
        throw InvalidArgument("face tracing requires a connected graph");
    std::vector<int> next;
    detail::fill_face_successors(g, e.rotations(), next);
    const int darts = 2 * g.edge_count();
    std::vector<char> seen(darts, 0);

    auto as_dart = [&](int id) {
        auto [xi, yj] = g.edge(id / 2);
        return id % 2 == 0 ? Dart{vx(xi), vy(yj)} : Dart{vy(yj), vx(xi)};
    };

    FaceCensus census;
    for (int d = 0; d < darts; ++d) {
        if (seen[d]) continue;
        std::vector<Dart> walk;
        int t = d;
        do {
            seen[t] = 1;
            walk.push_back(as_dart(t));
            t = next[t];
        } while (t != d);
        census.walks.push_back(std::move(walk));
    }
    census.face_count = static_cast<int>(census.walks.size());
    census.genus = genus_for_face_count(g, census.face_count);
    return census;
}

inline int genus_of(const Embedding& e) {
    return genus_for_face_count(e.graph(), count_faces(e));
}

inline bool is_one_face(const Embedding& e) { return count_faces(e) == 1; }

// At most two faces witnesses that the graph attains the floor(beta/2)
// genus bound.
inline bool is_upper_embeddable_witness(const Embedding& e) {
    return count_faces(e) <= 2;
}

}  // namespace mge
