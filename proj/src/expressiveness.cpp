#include "egognn/expressiveness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "egognn/ego_propagation.hpp"
#include "egognn/error.hpp"

namespace egognn {

std::size_t ColorState::num_colors() const {
    if (colors.empty()) return 0;
    return *std::max_element(colors.begin(), colors.end()) + 1;
}

namespace {

std::vector<std::size_t> sorted_copy(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Dense ids by first appearance.
template <typename Key>
std::vector<std::size_t> canonicalize(const std::vector<Key>& keys) {
    std::map<Key, std::size_t> ids;
    std::vector<std::size_t> out(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        auto [it, inserted] = ids.try_emplace(keys[i], ids.size());
        out[i] = it->second;
    }
    return out;
}

} // namespace

ColorState wl_refine(const Graph& g, std::size_t max_rounds, const std::vector<std::size_t>* initial) {
    if (max_rounds < 1) throw Error("wl_refine: max_rounds must be >= 1");
    ColorState state;
    if (initial) {
        if (initial->size() != g.n()) throw DimensionError("wl_refine: initial colors do not match node count");
        state.colors = canonicalize(*initial);
    } else {
        state.colors.assign(g.n(), 0);
    }
    state.history.push_back(sorted_copy(state.colors));

    std::vector<std::vector<std::size_t>> signatures(g.n());
    while (state.round < max_rounds) {
        for (std::size_t i = 0; i < g.n(); ++i) {
            auto& sig = signatures[i];
            sig.clear();
            for (std::size_t j : g.neighbors(i)) sig.push_back(state.colors[j]);
            std::sort(sig.begin(), sig.end());
            sig.insert(sig.begin(), state.colors[i]);
        }
        const std::size_t before = state.num_colors();
        state.colors = canonicalize(signatures);
        ++state.round;
        state.history.push_back(sorted_copy(state.colors));
        // The new color embeds the old one, so an unchanged count means an
        // unchanged partition.
        if (state.num_colors() == before) {
            state.stable = true;
            break;
        }
    }
    return state;
}

WlComparison wl_compare(const Graph& g1, const Graph& g2) {
    const Graph u = disjoint_union(g1, g2);
    const ColorState s = wl_refine(u, std::max<std::size_t>(u.n(), 1));
    WlComparison cmp;
    cmp.rounds = s.round;
    cmp.signature1.assign(s.colors.begin(), s.colors.begin() + static_cast<std::ptrdiff_t>(g1.n()));
    cmp.signature2.assign(s.colors.begin() + static_cast<std::ptrdiff_t>(g1.n()), s.colors.end());
    std::sort(cmp.signature1.begin(), cmp.signature1.end());
    std::sort(cmp.signature2.begin(), cmp.signature2.end());
    cmp.distinguished = cmp.signature1 != cmp.signature2;
    return cmp;
}

bool wl_distinguish(const Graph& g1, const Graph& g2) { return wl_compare(g1, g2).distinguished; }

Schedule default_distinguish_schedule() {
    return {LayerSpec::make_ego(1, false), LayerSpec::make_gcn(std::nullopt, false)};
}

Schedule plain_message_passing_schedule() {
    return {LayerSpec::make_gcn(std::nullopt, false), LayerSpec::make_gcn(std::nullopt, false)};
}

EgoComparison ego_compare(const Graph& g1, const Graph& g2, const Schedule& schedule, std::size_t width) {
    for (const auto& l : schedule) {
        if (l.kind == LayerSpec::Kind::gcn && l.gcn.has_weights()) {
            throw Error("ego_compare: schedule layer '" + format_layer(l) + "' needs weights; use parameter-free layers");
        }
    }
    EgoComparison cmp;
    cmp.signature1 = row_mean(interleaved_forward(g1, DenseMatrix(g1.n(), width, 1.0), schedule));
    cmp.signature2 = row_mean(interleaved_forward(g2, DenseMatrix(g2.n(), width, 1.0), schedule));
    for (std::size_t c = 0; c < width; ++c)
        cmp.distinguished |= std::abs(cmp.signature1[c] - cmp.signature2[c]) > kSignatureTolerance;
    return cmp;
}

bool ego_distinguish(const Graph& g1, const Graph& g2, const Schedule& schedule) {
    return ego_compare(g1, g2, schedule).distinguished;
}

namespace {

std::uint64_t triangles_at_marked(const Graph& g, std::size_t i, std::vector<char>& in_ego) {
    in_ego[i] = 1;
    for (std::size_t j : g.neighbors(i)) in_ego[j] = 1;
    // Ego-degree of neighbor j, self-loop excluded: its edge to i plus one
    // edge per common neighbor.
    std::uint64_t ego_degree_sum = 0;
    for (std::size_t j : g.neighbors(i))
        for (std::size_t v : g.neighbors(j)) ego_degree_sum += in_ego[v] ? 1 : 0;
    in_ego[i] = 0;
    for (std::size_t j : g.neighbors(i)) in_ego[j] = 0;
    return (ego_degree_sum - g.degree(i)) / 2;
}

} // namespace

std::uint64_t triangles_at(const Graph& g, std::size_t i) {
    if (i >= g.n()) throw Error("triangles_at: node " + std::to_string(i) + " out of range");
    std::vector<char> in_ego(g.n(), 0);
    return triangles_at_marked(g, i, in_ego);
}

std::vector<std::uint64_t> triangles_per_node(const Graph& g) {
    std::vector<std::uint64_t> out(g.n());
    const auto n = static_cast<std::ptrdiff_t>(g.n());
#pragma omp parallel
    {
        std::vector<char> in_ego(g.n(), 0);
#pragma omp for schedule(dynamic, 32)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] = triangles_at_marked(g, static_cast<std::size_t>(i), in_ego);
    }
    return out;
}

std::uint64_t triangles_total(const Graph& g) {
    std::uint64_t s = 0;
    for (auto t : triangles_per_node(g)) s += t;
    return s / 3;
}

std::uint64_t triangle_oracle(const Graph& g) {
    const std::size_t n = g.n();
    std::vector<char> adj(n * n, 0);
    for (const auto& [u, v] : g.edges()) {
        adj[u * n + v] = 1;
        adj[v * n + u] = 1;
    }
    std::uint64_t count = 0;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            if (!adj[u * n + v]) continue;
            for (std::size_t w = v + 1; w < n; ++w) count += adj[u * n + w] && adj[v * n + w];
        }
    return count;
}

} // namespace egognn
