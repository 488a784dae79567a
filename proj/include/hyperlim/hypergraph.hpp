#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hyperlim/common.hpp"

namespace hyperlim {

using Vertex = std::uint32_t;

// Finite k-uniform hypergraph on {0..n-1}. Edges are strictly increasing
// k-tuples kept in lexicographic order in one flat buffer. Immutable.
class UniformHypergraph {
public:
    // Accepts edges in any order with vertices in any order; throws
    // InvalidInput on out-of-range or repeated vertices and on duplicate edges.
    UniformHypergraph(int arity, std::size_t n_vertices,
                      const std::vector<std::vector<Vertex>>& edges);

    // Empty hypergraph.
    UniformHypergraph(int arity, std::size_t n_vertices);

    int arity() const noexcept { return arity_; }
    std::size_t n_vertices() const noexcept { return n_vertices_; }
    std::size_t edge_count() const noexcept { return flat_.size() / arity_; }

    std::span<const Vertex> edge(std::size_t i) const noexcept {
        return {flat_.data() + i * arity_, static_cast<std::size_t>(arity_)};
    }
    std::vector<std::vector<Vertex>> edge_list() const;

    // Lookup of a strictly increasing k-tuple; binary search.
    bool contains(std::span<const Vertex> sorted_edge) const noexcept;
    std::optional<std::size_t> find_edge(std::span<const Vertex> sorted_edge) const noexcept;

    // Hypergraph with the listed edge indices removed.
    UniformHypergraph without_edges(std::span<const std::size_t> edge_ids) const;

    std::vector<std::size_t> degrees() const;

    friend bool operator==(const UniformHypergraph&, const UniformHypergraph&) = default;

private:
    struct FlatTag {};
    UniformHypergraph(FlatTag, int arity, std::size_t n_vertices, std::vector<Vertex> flat_sorted);

    int arity_;
    std::size_t n_vertices_;
    std::vector<Vertex> flat_;
};

UniformHypergraph complete_hypergraph(int arity, std::size_t n_vertices);

// |E(H)| / C(n,k), exact. Throws InvalidInput when n < k.
Rational edge_density(const UniformHypergraph& h);

// Membership in the S_k-invariant tuple set S_H: true iff the entries are
// distinct and form an edge. Throws InvalidInput on size or range errors.
bool symmetric_membership(const UniformHypergraph& h, std::span<const Vertex> tuple);

// ---- r-subsets of {0..n-1} in lexicographic order --------------------------

std::uint64_t subset_rank(std::size_t n, std::span<const Vertex> sorted_subset);
std::vector<Vertex> subset_unrank(std::size_t n, std::size_t r, std::uint64_t rank);

// Calls fn(std::span<const Vertex>) on every r-subset in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t r, Fn&& fn) {
    if (r > n) return;
    std::vector<Vertex> cur(r);
    for (std::size_t i = 0; i < r; ++i) cur[i] = static_cast<Vertex>(i);
    for (;;) {
        fn(std::span<const Vertex>(cur));
        std::size_t i = r;
        while (i > 0 && cur[i - 1] == n - r + i - 1) --i;
        if (i == 0) return;
        ++cur[i - 1];
        for (std::size_t j = i; j < r; ++j) cur[j] = cur[j - 1] + 1;
    }
}

// ---- nonempty subsets of [k] and the S_k action ---------------------------

// Nonempty subsets A_1..A_{2^k-1} of [k] (stored as bitmasks over
// positions 0..k-1) ordered by size, then lexicographically; the last one is
// [k] itself. Permutations of [k] are listed in lexicographic order; remap(p)
// sends the index of A to the index of p(A), so remap(p o q) = remap(p) o remap(q).
class SubsetIndexing {
public:
    static const SubsetIndexing& of(int k);

    int arity() const noexcept { return k_; }
    std::size_t size() const noexcept { return masks_.size(); }
    std::uint8_t mask(std::size_t i) const noexcept { return masks_[i]; }
    std::size_t index_of(std::uint8_t mask) const noexcept { return index_of_mask_[mask]; }
    std::size_t top_index() const noexcept { return masks_.size() - 1; }

    std::size_t permutation_count() const noexcept { return perms_.size(); }
    std::span<const std::uint8_t> permutation(std::size_t p) const noexcept {
        return {perms_[p].data(), static_cast<std::size_t>(k_)};
    }
    std::span<const std::uint8_t> remap(std::size_t p) const noexcept {
        return {remaps_[p].data(), masks_.size()};
    }
    std::size_t inverse(std::size_t p) const noexcept { return inverses_[p]; }
    std::size_t compose(std::size_t p, std::size_t q) const noexcept { return compose_[p][q]; }
    std::size_t identity() const noexcept { return 0; }

    // Coordinate action on vectors indexed by subsets:
    // (y^p)_{A} = y_{p^{-1}(A)}.
    template <class T>
    std::vector<T> act(std::size_t p, std::span<const T> y) const {
        const auto back = remap(inverse(p));
        std::vector<T> out(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[back[i]];
        return out;
    }

    // Lexicographically least image of y over the whole group.
    template <class T>
    std::vector<T> canonical(std::span<const T> y) const {
        std::vector<T> best(y.begin(), y.end());
        std::vector<T> cand(y.size());
        for (std::size_t p = 1; p < perms_.size(); ++p) {
            const auto r = remap(p);
            for (std::size_t i = 0; i < y.size(); ++i) cand[i] = y[r[i]];
            if (cand < best) best = cand;
        }
        return best;
    }

private:
    explicit SubsetIndexing(int k);

    int k_;
    std::vector<std::uint8_t> masks_;
    std::array<std::size_t, 1u << max_arity> index_of_mask_{};
    std::vector<std::array<std::uint8_t, max_arity>> perms_;
    std::vector<std::array<std::uint8_t, (1u << max_arity) - 1>> remaps_;
    std::vector<std::size_t> inverses_;
    std::vector<std::vector<std::size_t>> compose_;
};

// Nonempty faces of the simplicial complex generated by the edges of K,
// ordered by size then lexicographically. For every edge E and every subset
// index i of SubsetIndexing::of(k), face_of(E, i) is the position of s_E(A_i)
// where s_E is the order-preserving bijection [k] -> E.
class SimplicialSupport {
public:
    explicit SimplicialSupport(const UniformHypergraph& k_graph);

    std::size_t size() const noexcept { return faces_.size(); }
    const std::vector<Vertex>& face(std::size_t i) const noexcept { return faces_[i]; }
    // Position of a strictly increasing face; throws InvalidInput if absent.
    std::size_t find(std::span<const Vertex> sorted_face) const;
    std::size_t face_of(std::size_t edge, std::size_t subset_index) const noexcept {
        return edge_faces_[edge * width_ + subset_index];
    }
    std::size_t edge_count() const noexcept { return width_ == 0 ? 0 : edge_faces_.size() / width_; }

private:
    std::vector<std::vector<Vertex>> faces_;
    std::size_t width_;
    std::vector<std::size_t> edge_faces_;
};

}  // namespace hyperlim
