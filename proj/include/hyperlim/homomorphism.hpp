#pragma once

#include <vector>

#include "hyperlim/hypergraph.hpp"

namespace hyperlim {

// hom(K,H) together with the size |V(H)|^|V(K)| of the map space.
struct HomCount {
    BigInt count;
    BigInt domain_size;
};

// Number of maps V(K) -> V(H) carrying every edge of K onto an edge of H.
// Non-injective maps are counted. Throws InvalidInput on arity mismatch.
HomCount hom_count(const UniformHypergraph& k_graph, const UniformHypergraph& h_graph);

// t(K,H) = hom(K,H) / |V(H)|^|V(K)|, exact.
Rational hom_density(const UniformHypergraph& k_graph, const UniformHypergraph& h_graph);

// Distinct edge images {f(E) : E in E(K)} over all homomorphisms f. Each image
// is a sorted list of indices into h_graph's edge list; images are sorted.
struct HomImageSet {
    std::vector<std::vector<std::size_t>> images;
    bool truncated = false;
};

inline constexpr std::size_t default_image_cap = 1'000'000;

// Requires K to have at least one edge. When more than `cap` distinct images
// exist the result keeps the `cap` smallest and sets `truncated`.
HomImageSet enumerate_hom_images(const UniformHypergraph& k_graph,
                                 const UniformHypergraph& h_graph,
                                 std::size_t cap = default_image_cap);

UniformHypergraph disjoint_union(const UniformHypergraph& a, const UniformHypergraph& b);

}  // namespace hyperlim
