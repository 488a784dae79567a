#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "hyperlim/hypergraph.hpp"

namespace hyperlim {

enum class ValueKind { indicator, projected };

using BoxIndex = std::uint16_t;
using BoxKey = std::vector<BoxIndex>;

// S_k-invariant step function on the l-box grid of [0,1]^(2^k-1). Coordinates
// follow SubsetIndexing order. Only canonical orbit representatives are stored;
// unlisted boxes are 0. Coordinate x lies in box floor(l*x).
class StepHypergraphon {
public:
    // Entries must be canonical, in range, unique, and (for indicator) equal
    // to 1; projected values must lie in [0,1]. Throws InvalidInput otherwise.
    static StepHypergraphon from_entries(int k, int l, ValueKind kind,
                                         std::vector<std::pair<BoxKey, double>> entries);

    // Evaluates `value` on every canonical box; zero values are not stored.
    // The grid l^(2^k-1) must not exceed enumeration_limit.
    static StepHypergraphon from_function(int k, int l, ValueKind kind,
                                          const std::function<double(std::span<const BoxIndex>)>& value);

    static constexpr std::uint64_t enumeration_limit = std::uint64_t{1} << 22;

    int arity() const noexcept { return k_; }
    int resolution() const noexcept { return l_; }
    ValueKind kind() const noexcept { return kind_; }
    std::size_t dimension() const noexcept { return dim_; }
    const std::map<BoxKey, double>& entries() const noexcept { return entries_; }

    double box_value(std::span<const BoxIndex> box) const;
    // Throws InvalidInput on wrong length or coordinates outside [0,1).
    double eval(std::span<const double> point) const;

    // Mixed-radix grid index of a box (coordinate i has stride l^(d-1-i)),
    // and the dense table when one was built.
    bool has_dense_table() const noexcept { return !dense_.empty(); }
    std::uint64_t grid_index(std::span<const BoxIndex> box) const noexcept;
    double dense_value(std::uint64_t grid_index) const noexcept { return dense_[grid_index]; }

private:
    StepHypergraphon(int k, int l, ValueKind kind, std::map<BoxKey, double> entries);

    int k_;
    int l_;
    ValueKind kind_;
    std::size_t dim_;
    std::map<BoxKey, double> entries_;
    std::vector<double> dense_;
};

// eval == p. Indicator kind with l = 1 when p is 0 or 1, projected otherwise.
StepHypergraphon constant_hypergraphon(int k, double p);

// Averages out the top ([k]) coordinate; the result is constant along it.
StepHypergraphon project(const StepHypergraphon& w);

struct ExactBudget {
    // Upper bound on the number of grid assignments l^s summed.
    std::uint64_t max_terms = std::uint64_t{1} << 28;
};

// Homomorphism density of K in W: the average over all l^s assignments of box
// indices to the faces of K of the product over edges E of W at the boxes of
// s_E(A_1..A_{2^k-1}). Throws BudgetExceeded before any work when l^s is too
// large and InvalidInput on arity mismatch.
double exact_density(const UniformHypergraph& k_graph, const StepHypergraphon& w,
                     ExactBudget budget = {});

// Same integral as a nested sum: faces are summed one at a time with the face
// listed first in `face_order` outermost. Single-threaded.
double exact_density_iterated(const UniformHypergraph& k_graph, const StepHypergraphon& w,
                              std::span<const std::size_t> face_order, ExactBudget budget = {});

// Density under explicit (not necessarily order-preserving) bijections
// s_E : [k] -> E; bijections[e][j] is the position within edge e that j maps to.
double exact_density_with_bijections(const UniformHypergraph& k_graph, const StepHypergraphon& w,
                                     const std::vector<std::vector<int>>& bijections,
                                     ExactBudget budget = {});

struct DensityEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

// Monte-Carlo estimate of the same integral; sample i draws its coordinates
// from its own stream, so the result depends only on (seed, n_samples).
DensityEstimate mc_density(const UniformHypergraph& k_graph, const StepHypergraphon& w,
                           std::uint64_t n_samples, std::uint64_t seed);

// A W-random hypergraph with its latent coordinates. Latents are 64-bit
// fixed-point fractions u = bits / 2^64, one per vertex subset of size 1..k,
// stored per size in lexicographic rank order.
class LatentSample {
public:
    LatentSample(UniformHypergraph graph, std::uint64_t seed,
                 std::vector<std::vector<std::uint64_t>> latents);

    const UniformHypergraph& graph() const noexcept { return graph_; }
    std::uint64_t seed() const noexcept { return seed_; }
    int arity() const noexcept { return graph_.arity(); }
    std::size_t n_vertices() const noexcept { return graph_.n_vertices(); }

    std::uint64_t latent_bits(std::span<const Vertex> sorted_subset) const;
    double latent(std::span<const Vertex> sorted_subset) const;
    std::span<const std::uint64_t> level(std::size_t r) const { return latents_.at(r - 1); }

    // floor(l * u_B).
    BoxIndex box_of(std::span<const Vertex> sorted_subset, int l) const;

    friend bool operator==(const LatentSample&, const LatentSample&) = default;

private:
    UniformHypergraph graph_;
    std::uint64_t seed_;
    std::vector<std::vector<std::uint64_t>> latents_;
};

// Box vector of the k-subset `edge` (strictly increasing) read off the latents
// through the order-preserving bijection [k] -> edge.
BoxKey latent_box(const LatentSample& sample, std::span<const Vertex> edge, int l);

// Requires an indicator W and n >= k. Latent u_B is drawn from the stream
// keyed by (seed, "latent", |B|, rank(B)).
LatentSample sample_w_random(const StepHypergraphon& w, std::size_t n, std::uint64_t seed);

}  // namespace hyperlim
