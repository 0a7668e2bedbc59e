#pragma once

#include <algorithm>
#include <memory>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace mge {

// A rotation system over a shared immutable Graph: for every vertex, the
// cyclic order of its incident edges. Rotations are stored in canonical
// phase (first entry is the edge toward the smallest-indexed neighbor), so
// equality of embeddings is plain equality of the stored sequences.
// Embeddings are immutable values and safe to share across threads.
class Embedding {
public:
    // Tag for construction from rotations already known to be permutations
    // of the incidence lists (enumerators, insertion machinery). Phase is
    // still canonicalized.
    struct trusted_t {
        explicit trusted_t() = default;
    };
    static constexpr trusted_t trusted{};

    Embedding(std::shared_ptr<const Graph> g, std::vector<std::vector<int>> rotations)
        : graph_(std::move(g)), rot_(std::move(rotations)) {
        validate();
        canonicalize();
    }

    Embedding(trusted_t, std::shared_ptr<const Graph> g, std::vector<std::vector<int>> rotations)
        : graph_(std::move(g)), rot_(std::move(rotations)) {
        canonicalize();
    }

    const Graph& graph() const { return *graph_; }
    const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }

    const std::vector<std::vector<int>>& rotations() const { return rot_; }
    const std::vector<int>& rotation_ord(int ordinal) const { return rot_[ordinal]; }
    const std::vector<int>& rotation(VertexRef v) const { return rot_[graph_->ordinal(v)]; }

    int degree(VertexRef v) const { return graph_->degree(v); }

    // The rotation as a cyclic sequence of neighbor indices. Unlike edge
    // ids, these are comparable across embeddings whose graphs were built
    // in different edge orders.
    std::vector<int> rotation_neighbors(VertexRef v) const {
        const auto& r = rotation(v);
        std::vector<int> out(r.size());
        for (std::size_t t = 0; t < r.size(); ++t)
            out[t] = graph_->neighbor_index(r[t], v.side);
        return out;
    }

    friend bool operator==(const Embedding& a, const Embedding& b) {
        if (a.graph_ == b.graph_) return a.rot_ == b.rot_;
        if (*a.graph_ != *b.graph_) return false;
        for (int v = 0; v < a.graph_->vertex_count(); ++v) {
            VertexRef ref = a.graph_->vertex_at(v);
            if (a.rotation_neighbors(ref) != b.rotation_neighbors(ref)) return false;
        }
        return true;
    }
    friend bool operator!=(const Embedding& a, const Embedding& b) { return !(a == b); }

private:
    void validate() const {
        if (!graph_) throw InvalidArgument("embedding: null graph");
        if (static_cast<int>(rot_.size()) != graph_->vertex_count())
            throw InvalidArgument("embedding: rotation table has " +
                                  std::to_string(rot_.size()) + " entries for " +
                                  std::to_string(graph_->vertex_count()) + " vertices");
        for (int v = 0; v < graph_->vertex_count(); ++v) {
            std::vector<int> have = rot_[v];
            std::vector<int> want = graph_->incident_ord(v);
            std::sort(have.begin(), have.end());
            std::sort(want.begin(), want.end());
            if (have != want)
                throw InvalidArgument("embedding: rotation at " +
                                      to_string(graph_->vertex_at(v)) +
                                      " is not a permutation of its incident edges");
        }
    }

    void canonicalize() {
        for (int v = 0; v < graph_->vertex_count(); ++v) {
            auto& r = rot_[v];
            if (r.size() < 2) continue;
            Side s = graph_->side_of(v);
            std::size_t best = 0;
            for (std::size_t t = 1; t < r.size(); ++t)
                if (graph_->neighbor_index(r[t], s) < graph_->neighbor_index(r[best], s))
                    best = t;
            std::rotate(r.begin(), r.begin() + best, r.end());
        }
    }

    std::shared_ptr<const Graph> graph_;
    std::vector<std::vector<int>> rot_;
};

// Orientation reversal: every rotation reversed (and re-phased). An
// involution; face counts are preserved.
inline Embedding mirror(const Embedding& e) {
    std::vector<std::vector<int>> rot = e.rotations();
    for (auto& r : rot) std::reverse(r.begin(), r.end());
    return Embedding(Embedding::trusted, e.graph_ptr(), std::move(rot));
}

}  // namespace mge
