#pragma once

#include <string>
#include <vector>

#include "hyperlim/homomorphism.hpp"

namespace hyperlim {

// Edge indices into H's canonical edge list, sorted.
using EdgeSet = std::vector<std::size_t>;

// Repeatedly takes the edge lying in the most not-yet-hit images; ties go to
// the smaller edge index. Throws InvalidInput on a truncated image set.
EdgeSet greedy_hitting_set(const HomImageSet& images);

struct HittingBudget {
    std::size_t max_candidate_edges = 256;
    std::uint64_t max_nodes = 50'000'000;
};

struct HittingSetResult {
    EdgeSet edges;
    bool optimal = false;
};

// Minimum hitting set by branch and bound (branching on the uncovered image
// with fewest edges, bounded below by a greedy packing of disjoint images).
// Falls back to the greedy set with optimal = false when the budget runs out.
HittingSetResult exact_hitting_set(const HomImageSet& images, HittingBudget budget = {});

enum class RemovalMethod { exact, greedy };

std::string to_string(RemovalMethod m);
RemovalMethod parse_removal_method(const std::string& name);

struct RemovalResult {
    EdgeSet removed;
    std::size_t edges_before = 0;
    std::size_t images = 0;
    bool truncated = false;
    Rational removed_fraction;  // |L| / C(n,k)
    Rational residual_density;  // t(K, H \ L), recomputed by full hom count
    RemovalMethod method = RemovalMethod::exact;
    bool optimal = false;
    bool verified = false;      // residual is 0 and no truncation happened
};

// Requires K with at least one edge.
RemovalResult removal_experiment(const UniformHypergraph& k_graph, const UniformHypergraph& h_graph,
                                 RemovalMethod method, std::size_t image_cap = default_image_cap,
                                 HittingBudget budget = {});

}  // namespace hyperlim
