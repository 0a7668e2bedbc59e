#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace mge {

enum class Side : unsigned char { X, Y };

// A vertex of a bipartite graph: part plus 1-based index within the part.
struct VertexRef {
    Side side = Side::X;
    int index = 0;

    friend bool operator==(const VertexRef& a, const VertexRef& b) {
        return a.side == b.side && a.index == b.index;
    }
    friend bool operator!=(const VertexRef& a, const VertexRef& b) { return !(a == b); }
};

inline VertexRef vx(int i) { return VertexRef{Side::X, i}; }
inline VertexRef vy(int j) { return VertexRef{Side::Y, j}; }

inline std::string to_string(VertexRef v) {
    return (v.side == Side::X ? "x" : "y") + std::to_string(v.index);
}

// Labeled simple bipartite graph with parts x_1..x_p and y_1..y_q.
// Immutable once constructed. Vertices are addressed by VertexRef or by
// ordinal (x_i -> i-1, y_j -> p+j-1); edge ids index into edges() and stay
// stable under extended(), which only appends.
class Graph {
public:
    Graph(int p, int q, std::vector<std::pair<int, int>> edges)
        : p_(p), q_(q), edges_(std::move(edges)) {
        if (p_ < 1 || q_ < 1)
            throw InvalidArgument("graph: part sizes must be at least 1 (got p=" +
                                  std::to_string(p_) + ", q=" + std::to_string(q_) + ")");
        adj_.assign(p_ + q_, {});
        std::set<std::pair<int, int>> seen;
        for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
            auto [xi, yj] = edges_[e];
            if (xi < 1 || xi > p_ || yj < 1 || yj > q_)
                throw InvalidArgument("graph: edge (x" + std::to_string(xi) + ", y" +
                                      std::to_string(yj) + ") out of range");
            if (!seen.insert({xi, yj}).second)
                throw InvalidArgument("graph: duplicate edge (x" + std::to_string(xi) +
                                      ", y" + std::to_string(yj) + ")");
            adj_[xi - 1].push_back(e);
            adj_[p_ + yj - 1].push_back(e);
        }
        // Incidence lists sorted by neighbor index; entry 0 anchors the
        // canonical rotation phase.
        for (int v = 0; v < p_ + q_; ++v) {
            Side s = v < p_ ? Side::X : Side::Y;
            std::sort(adj_[v].begin(), adj_[v].end(), [&](int a, int b) {
                return neighbor_index(a, s) < neighbor_index(b, s);
            });
        }
        connected_ = compute_connected();
    }

    int p() const { return p_; }
    int q() const { return q_; }
    int vertex_count() const { return p_ + q_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::pair<int, int>& edge(int eid) const { return edges_[eid]; }

    bool has_vertex(VertexRef v) const {
        return v.index >= 1 && v.index <= (v.side == Side::X ? p_ : q_);
    }

    int ordinal(VertexRef v) const {
        if (!has_vertex(v))
            throw InvalidArgument("graph: no vertex " + to_string(v));
        return v.side == Side::X ? v.index - 1 : p_ + v.index - 1;
    }

    VertexRef vertex_at(int ordinal) const {
        return ordinal < p_ ? vx(ordinal + 1) : vy(ordinal - p_ + 1);
    }

    Side side_of(int ordinal) const { return ordinal < p_ ? Side::X : Side::Y; }

    // Index of the endpoint opposite to the given side of edge `eid`.
    int neighbor_index(int eid, Side from) const {
        return from == Side::X ? edges_[eid].second : edges_[eid].first;
    }

    const std::vector<int>& incident_ord(int ordinal) const { return adj_[ordinal]; }
    const std::vector<int>& incident(VertexRef v) const { return adj_[ordinal(v)]; }

    int degree_ord(int ordinal) const { return static_cast<int>(adj_[ordinal].size()); }
    int degree(VertexRef v) const { return degree_ord(ordinal(v)); }

    std::optional<int> find_edge(int xi, int yj) const {
        if (xi < 1 || xi > p_ || yj < 1 || yj > q_) return std::nullopt;
        for (int e : adj_[xi - 1])
            if (edges_[e].second == yj) return e;
        return std::nullopt;
    }

    bool is_connected() const { return connected_; }

    // Copy with `add_x`/`add_y` vertices appended to the parts and
    // `new_edges` appended to the edge list.
    Graph extended(int add_x, int add_y, const std::vector<std::pair<int, int>>& new_edges) const {
        std::vector<std::pair<int, int>> e = edges_;
        e.insert(e.end(), new_edges.begin(), new_edges.end());
        return Graph(p_ + add_x, q_ + add_y, std::move(e));
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        if (a.p_ != b.p_ || a.q_ != b.q_ || a.edges_.size() != b.edges_.size())
            return false;
        auto ea = a.edges_, eb = b.edges_;
        std::sort(ea.begin(), ea.end());
        std::sort(eb.begin(), eb.end());
        return ea == eb;
    }
    friend bool operator!=(const Graph& a, const Graph& b) { return !(a == b); }

    std::string label() const {
        return "K_{" + std::to_string(p_) + "," + std::to_string(q_) + "}";
    }

private:
    bool compute_connected() const {
        const int n = vertex_count();
        if (n == 0) return true;
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            Side s = side_of(v);
            for (int e : adj_[v]) {
                int w = s == Side::X ? p_ + edges_[e].second - 1 : edges_[e].first - 1;
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        return reached == n;
    }

    int p_;
    int q_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    bool connected_ = false;
};

inline Graph build_complete_bipartite(int p, int q) {
    if (p < 1 || q < 1)
        throw InvalidArgument("complete bipartite graph needs p >= 1 and q >= 1 (got p=" +
                              std::to_string(p) + ", q=" + std::to_string(q) + ")");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(p) * q);
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= q; ++j) edges.emplace_back(i, j);
    return Graph(p, q, std::move(edges));
}

// Cycle rank m - n + 1. Only defined for connected graphs.
inline int betti(const Graph& g) {
    if (!g.is_connected())
        throw InvalidArgument("betti: graph is not connected");
    return g.edge_count() - g.vertex_count() + 1;
}

inline int max_genus_upper_bound(const Graph& g) { return betti(g) / 2; }

}  // namespace mge
