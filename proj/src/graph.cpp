#include "egognn/graph.hpp"

#include <algorithm>
#include <string>

#include "egognn/error.hpp"

namespace egognn {

Graph::Graph(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<Triplet> entries;
    entries.reserve(2 * edges.size());
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for n=" +
                        std::to_string(n));
        }
        if (u == v) throw Error("self-loop at node " + std::to_string(u) + " is not allowed in graph storage");
        entries.push_back({u, v, 1.0});
        entries.push_back({v, u, 1.0});
    }
    adjacency_ = SparseMatrix::from_triplets(n, n, std::move(entries));
    for (double w : adjacency_.values()) {
        if (w != 1.0) throw Error("duplicate edge in edge list");
    }
}

Graph::Graph(SparseMatrix adjacency) : adjacency_(std::move(adjacency)) {
    if (adjacency_.rows() != adjacency_.cols()) throw DimensionError("adjacency must be square");
    for (std::size_t i = 0; i < adjacency_.rows(); ++i) {
        if (adjacency_.at(i, i) != 0.0) throw Error("adjacency has a self-loop at node " + std::to_string(i));
    }
    for (double w : adjacency_.values()) {
        if (w != 1.0) throw Error("adjacency weights must all be 1");
    }
    if (!adjacency_.is_symmetric()) throw Error("adjacency is not symmetric");
}

bool Graph::has_edge(std::size_t u, std::size_t v) const { return adjacency_.at(u, v) != 0.0; }

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (std::size_t u = 0; u < n(); ++u)
        for (std::size_t v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

void Graph::set_features(DenseMatrix x) {
    if (x.rows() != n()) {
        throw DimensionError("features have " + std::to_string(x.rows()) + " rows for " + std::to_string(n()) +
                             " nodes");
    }
    features_ = std::move(x);
}

void Graph::set_labels(std::vector<int> y) {
    if (y.size() != n()) {
        throw DimensionError("labels have " + std::to_string(y.size()) + " entries for " + std::to_string(n()) +
                             " nodes");
    }
    labels_ = std::move(y);
}

Graph Graph::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != n()) throw DimensionError("permutation size does not match node count");
    std::vector<Edge> e;
    for (const auto& [u, v] : edges()) e.emplace_back(perm[u], perm[v]);
    Graph out(n(), e);
    if (features_) {
        DenseMatrix x(n(), features_->cols());
        for (std::size_t v = 0; v < n(); ++v) std::copy(features_->row(v).begin(), features_->row(v).end(), x.row(perm[v]).begin());
        out.features_ = std::move(x);
    }
    if (labels_) {
        std::vector<int> y(n());
        for (std::size_t v = 0; v < n(); ++v) y[perm[v]] = (*labels_)[v];
        out.labels_ = std::move(y);
    }
    return out;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> e = a.edges();
    for (const auto& [u, v] : b.edges()) e.emplace_back(u + a.n(), v + a.n());
    return Graph(a.n() + b.n(), e);
}

DegreeVector degrees(const Graph& g) {
    DegreeVector d(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) d[i] = g.degree(i);
    return d;
}

std::vector<std::size_t> ego_members(const Graph& g, std::size_t center) {
    if (center >= g.n()) {
        throw Error("node " + std::to_string(center) + " out of range for n=" + std::to_string(g.n()));
    }
    auto nb = g.neighbors(center);
    std::vector<std::size_t> m;
    m.reserve(nb.size() + 1);
    auto it = std::lower_bound(nb.begin(), nb.end(), center);
    m.insert(m.end(), nb.begin(), it);
    m.push_back(center);
    m.insert(m.end(), it, nb.end());
    return m;
}

EgoGraph extract_ego(const Graph& g, std::size_t center) {
    EgoGraph ego;
    ego.center = center;
    ego.members = ego_members(g, center);

    const std::size_t n = g.n();
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<std::size_t> cols;
    std::vector<char> in_ego(n, 0);
    for (std::size_t u : ego.members) in_ego[u] = 1;

    for (std::size_t r = 0; r < n; ++r) {
        if (in_ego[r]) {
            // Merge the self-loop into the sorted neighbor list.
            bool placed_self = false;
            for (std::size_t v : g.neighbors(r)) {
                if (!placed_self && v > r) {
                    cols.push_back(r);
                    placed_self = true;
                }
                if (in_ego[v]) cols.push_back(v);
            }
            if (!placed_self) cols.push_back(r);
        }
        offsets[r + 1] = cols.size();
    }
    std::vector<double> vals(cols.size(), 1.0);
    ego.adjacency = SparseMatrix::from_csr(n, n, std::move(offsets), std::move(cols), std::move(vals));
    return ego;
}

namespace named {

Graph cycle(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, e);
}

Graph path(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

Graph complete(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, e);
}

Graph star(std::size_t leaves) {
    std::vector<Edge> e;
    for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph(leaves + 1, e);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return Graph(a + b, e);
}

Graph empty(std::size_t n) { return Graph(n, {}); }

} // namespace named

} // namespace egognn
