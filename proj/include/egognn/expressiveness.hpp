#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "egognn/graph.hpp"
#include "egognn/schedule.hpp"

namespace egognn {

// 1-WL color refinement state. Colors are dense integers assigned in order of
// first appearance (node order) of each (old color, sorted neighbor colors)
// signature.
struct ColorState {
    std::vector<std::size_t> colors;
    std::size_t round = 0;
    // Sorted color multiset after each round; history[0] is the initial one.
    std::vector<std::vector<std::size_t>> history;
    bool stable = false;

    std::size_t num_colors() const;
};

// Starts from uniform colors unless initial is given.
ColorState wl_refine(const Graph& g, std::size_t max_rounds, const std::vector<std::size_t>* initial = nullptr);

struct WlComparison {
    bool distinguished = false;
    std::vector<std::size_t> signature1;  // sorted final colors of g1
    std::vector<std::size_t> signature2;
    std::size_t rounds = 0;
};

// Refines the disjoint union so colors are comparable across the two graphs.
WlComparison wl_compare(const Graph& g1, const Graph& g2);
bool wl_distinguish(const Graph& g1, const Graph& g2);

struct EgoComparison {
    bool distinguished = false;
    std::vector<double> signature1;  // mean node representation
    std::vector<double> signature2;
};

inline constexpr double kSignatureTolerance = 1e-9;
inline constexpr std::size_t kDefaultSignatureWidth = 3;

// Raw ego layer followed by an unnormalized parameter-free GCN layer.
Schedule default_distinguish_schedule();
// Two unnormalized parameter-free GCN layers.
Schedule plain_message_passing_schedule();

// Runs the schedule on constant all-ones features of the given width and
// compares mean node representations with absolute tolerance 1e-9.
EgoComparison ego_compare(const Graph& g1, const Graph& g2, const Schedule& schedule = default_distinguish_schedule(),
                          std::size_t width = kDefaultSignatureWidth);
bool ego_distinguish(const Graph& g1, const Graph& g2, const Schedule& schedule = default_distinguish_schedule());

// Closed triangles through node i, from ego-graph degrees: every neighbor j of
// i has ego-degree 1 + t_ij (the edge to i plus one per common neighbor), so
// the count is (sum_j ego_deg(j) - deg(i)) / 2.
std::uint64_t triangles_at(const Graph& g, std::size_t i);
std::vector<std::uint64_t> triangles_per_node(const Graph& g);
std::uint64_t triangles_total(const Graph& g);

// Brute-force enumeration of pairwise-adjacent triples u < v < w.
std::uint64_t triangle_oracle(const Graph& g);

} // namespace egognn
