#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "embedding.hpp"

namespace mge {

// Line-based text format for embeddings:
//
//   graph bipartite <p> <q>
//   rot x1: y1 y3 y2
//   ...
//   rot y1: x1 x2
//
// One `rot` line per vertex, x side first, giving the cyclic rotation.
// Writers emit canonical phase; parsers accept any phase and
// re-canonicalize. Lines starting with `#` are comments.

inline std::string serialize(const Embedding& e) {
    const Graph& g = e.graph();
    std::string out = "graph bipartite " + std::to_string(g.p()) + " " +
                      std::to_string(g.q()) + "\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        VertexRef ref = g.vertex_at(v);
        out += "rot " + to_string(ref) + ":";
        for (int n : e.rotation_neighbors(ref))
            out += " " + to_string(VertexRef{ref.side == Side::X ? Side::Y : Side::X, n});
        out += "\n";
    }
    return out;
}

namespace detail {

inline bool is_blank_or_comment(std::string_view line) {
    for (char c : line) {
        if (c == '#') return true;
        if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true;
}

inline std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

inline VertexRef parse_vertex_token(std::string_view tok, std::size_t line) {
    if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'y'))
        throw ParseError(line, "expected a vertex like x1 or y2, got '" + std::string(tok) + "'");
    int idx = 0;
    for (std::size_t t = 1; t < tok.size(); ++t) {
        if (tok[t] < '0' || tok[t] > '9')
            throw ParseError(line, "bad vertex token '" + std::string(tok) + "'");
        idx = idx * 10 + (tok[t] - '0');
        if (idx > 1000000) throw ParseError(line, "vertex index out of range");
    }
    if (idx < 1)
        throw ParseError(line, "vertex indices are 1-based, got '" + std::string(tok) + "'");
    return VertexRef{tok[0] == 'x' ? Side::X : Side::Y, idx};
}

struct ParsedRotation {
    std::size_t line = 0;
    std::vector<int> neighbors;
};

inline Embedding parse_embedding_lines(const std::vector<std::pair<std::size_t, std::string>>& lines) {
    if (lines.empty()) throw ParseError(1, "empty input, expected 'graph bipartite <p> <q>'");

    auto head = split_ws(lines[0].second);
    const std::size_t head_line = lines[0].first;
    if (head.size() != 4 || head[0] != "graph" || head[1] != "bipartite")
        throw ParseError(head_line, "expected 'graph bipartite <p> <q>'");
    int p = 0, q = 0;
    try {
        p = std::stoi(head[2]);
        q = std::stoi(head[3]);
    } catch (const std::exception&) {
        throw ParseError(head_line, "part sizes must be integers");
    }
    if (p < 1 || q < 1) throw ParseError(head_line, "part sizes must be at least 1");

    // rotations keyed by (side, index); values are neighbor indices in file order
    std::map<std::pair<int, int>, ParsedRotation> rots;
    for (std::size_t t = 1; t < lines.size(); ++t) {
        const auto& [line_no, text] = lines[t];
        auto toks = split_ws(text);
        if (toks.empty() || toks[0] != "rot")
            throw ParseError(line_no, "expected a 'rot <vertex>: ...' line");
        if (toks.size() < 2) throw ParseError(line_no, "rot line names no vertex");
        std::string vtok = toks[1];
        std::size_t nstart = 2;
        if (!vtok.empty() && vtok.back() == ':') {
            vtok.pop_back();
        } else if (toks.size() >= 3 && toks[2] == ":") {
            nstart = 3;
        } else {
            throw ParseError(line_no, "missing ':' after vertex in rot line");
        }
        VertexRef v = parse_vertex_token(vtok, line_no);
        int part_size = v.side == Side::X ? p : q;
        if (v.index > part_size)
            throw ParseError(line_no, "unknown vertex " + to_string(v) + " (part has " +
                                          std::to_string(part_size) + " vertices)");
        auto key = std::make_pair(v.side == Side::X ? 0 : 1, v.index);
        if (rots.count(key))
            throw ParseError(line_no, "duplicate rotation line for " + to_string(v));
        ParsedRotation pr;
        pr.line = line_no;
        std::vector<char> dup(v.side == Side::X ? q + 1 : p + 1, 0);
        for (std::size_t u = nstart; u < toks.size(); ++u) {
            VertexRef w = parse_vertex_token(toks[u], line_no);
            if (w.side == v.side)
                throw ParseError(line_no, "edge " + to_string(v) + "-" + to_string(w) +
                                              " joins two vertices of the same part");
            int other_size = w.side == Side::X ? p : q;
            if (w.index > other_size)
                throw ParseError(line_no, "unknown vertex " + to_string(w) + " (part has " +
                                              std::to_string(other_size) + " vertices)");
            if (dup[w.index])
                throw ParseError(line_no, to_string(v) + " lists " + to_string(w) + " twice");
            dup[w.index] = 1;
            pr.neighbors.push_back(w.index);
        }
        rots.emplace(key, std::move(pr));
    }

    const std::size_t last_line = lines.back().first;
    for (int i = 1; i <= p; ++i)
        if (!rots.count({0, i}))
            throw ParseError(last_line, "missing rotation line for x" + std::to_string(i));
    for (int j = 1; j <= q; ++j)
        if (!rots.count({1, j}))
            throw ParseError(last_line, "missing rotation line for y" + std::to_string(j));

    // The two sides must describe the same edge set.
    std::vector<std::vector<char>> from_x(p + 1, std::vector<char>(q + 1, 0));
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= p; ++i) {
        for (int j : rots[{0, i}].neighbors) {
            from_x[i][j] = 1;
            edges.emplace_back(i, j);
        }
    }
    for (int j = 1; j <= q; ++j) {
        const auto& pr = rots[{1, j}];
        for (int i : pr.neighbors) {
            if (!from_x[i][j])
                throw ParseError(pr.line, "y" + std::to_string(j) + " lists x" +
                                              std::to_string(i) + " but x" + std::to_string(i) +
                                              " does not list y" + std::to_string(j));
            from_x[i][j] = 2;
        }
    }
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= q; ++j)
            if (from_x[i][j] == 1)
                throw ParseError(rots[{1, j}].line,
                                 "x" + std::to_string(i) + " lists y" + std::to_string(j) +
                                     " but the rotation of y" + std::to_string(j) +
                                     " does not list x" + std::to_string(i));

    auto graph = std::make_shared<const Graph>(p, q, std::move(edges));
    std::vector<std::vector<int>> rot(graph->vertex_count());
    for (int i = 1; i <= p; ++i) {
        const auto& pr = rots[{0, i}];
        auto& r = rot[i - 1];
        for (int j : pr.neighbors) r.push_back(*graph->find_edge(i, j));
    }
    for (int j = 1; j <= q; ++j) {
        const auto& pr = rots[{1, j}];
        auto& r = rot[p + j - 1];
        for (int i : pr.neighbors) r.push_back(*graph->find_edge(i, j));
    }
    return Embedding(std::move(graph), std::move(rot));
}

inline std::vector<std::pair<std::size_t, std::string>> significant_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(pos, end - pos);
        if (!is_blank_or_comment(line)) out.emplace_back(line_no, std::string(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

}  // namespace detail

inline Embedding parse_embedding(std::string_view text) {
    auto lines = detail::significant_lines(text);
    return detail::parse_embedding_lines(lines);
}

// Parses line-delimited `key=value` records (the machine-readable output
// format of the census, bound and trace commands): one map per line,
// comment lines skipped.
inline std::vector<std::map<std::string, std::string>> parse_records(std::string_view text) {
    std::vector<std::map<std::string, std::string>> out;
    for (const auto& [line_no, line] : detail::significant_lines(text)) {
        std::map<std::string, std::string> rec;
        for (const auto& tok : detail::split_ws(line)) {
            auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw ParseError(line_no, "expected key=value, got '" + tok + "'");
            rec[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

// Reads a file holding one or more embeddings; each record starts at its
// `graph` header line.
inline std::vector<Embedding> parse_embedding_file(std::string_view text) {
    auto lines = detail::significant_lines(text);
    std::vector<Embedding> out;
    std::vector<std::pair<std::size_t, std::string>> block;
    auto flush = [&]() {
        if (!block.empty()) {
            out.push_back(detail::parse_embedding_lines(block));
            block.clear();
        }
    };
    for (auto& l : lines) {
        if (l.second.rfind("graph", 0) == 0) flush();
        block.push_back(l);
    }
    flush();
    return out;
}

}  // namespace mge
