#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hyperlim/hypergraphon.hpp"

namespace hyperlim {

// An l-hyperpartition: for each level r = 1..k every r-subset of {0..n-1}
// carries a class label in {0..l-1}. Labels are stored per level in
// lexicographic rank order of the subsets.
class Hyperpartition {
public:
    Hyperpartition(int k, std::size_t n, int l, std::vector<std::vector<std::uint32_t>> labels);

    int arity() const noexcept { return k_; }
    std::size_t n_vertices() const noexcept { return n_; }
    int resolution() const noexcept { return l_; }

    std::uint32_t label(std::span<const Vertex> sorted_subset) const;
    std::span<const std::uint32_t> level(std::size_t r) const { return labels_.at(r - 1); }

    // P^j_r as an r-uniform hypergraph.
    UniformHypergraph class_hypergraph(std::size_t r, std::uint32_t j) const;
    std::vector<std::size_t> class_sizes(std::size_t r) const;

    friend bool operator==(const Hyperpartition&, const Hyperpartition&) = default;

private:
    int k_;
    std::size_t n_;
    int l_;
    std::vector<std::vector<std::uint32_t>> labels_;
};

// iid uniform labels; the label of the r-subset with rank i is drawn from the
// stream keyed by (seed, "partition", r) at position i.
Hyperpartition random_hyperpartition(int k, std::size_t n, int l, std::uint64_t seed);

// Label of B = floor(l * u_B).
Hyperpartition latent_hyperpartition(const LatentSample& sample, int l);

// Canonical profile of a k-subset: labels of its subsets in SubsetIndexing
// order, minimized over the S_k action.
using CellProfile = BoxKey;

CellProfile cell_profile(const Hyperpartition& p, std::span<const Vertex> sorted_k_subset);

// Profile of every k-subset, indexed by lexicographic rank.
std::vector<CellProfile> induce_cells(const Hyperpartition& p);

struct CellStats {
    std::uint64_t size = 0;
    std::uint64_t edges = 0;
    Rational density() const { return Rational(BigInt(edges), BigInt(size)); }
};

std::map<CellProfile, CellStats> cell_statistics(const UniformHypergraph& h, const Hyperpartition& p);
std::map<CellProfile, Rational> cell_density(const UniformHypergraph& h, const Hyperpartition& p);

struct CellApproximation {
    std::vector<CellProfile> cells;  // T = union of these cells
    std::uint64_t symmetric_difference = 0;
    Rational error;  // |H triangle T| / C(n,k)
};

// T = cells with density strictly above 1/2.
CellApproximation cell_approximation(const UniformHypergraph& h, const Hyperpartition& p);

struct Equitability {
    std::vector<Rational> per_level;  // delta_r, r = 1..k
    Rational overall;
};

Equitability equitability(const Hyperpartition& p);

// r many (r-1)-uniform hypergraphs B_1..B_r on a common vertex set. An
// r-subset belongs to L when some bijection assigns to each B_i a distinct
// omitted element such that the remaining (r-1)-subset lies in B_i.
class CylinderIntersection {
public:
    explicit CylinderIntersection(std::vector<UniformHypergraph> bases);

    std::size_t arity() const noexcept { return bases_.size(); }
    std::size_t n_vertices() const noexcept { return bases_.front().n_vertices(); }
    const std::vector<UniformHypergraph>& bases() const noexcept { return bases_; }

    // Throws InvalidInput unless the subset is a strictly increasing r-subset.
    bool contains(std::span<const Vertex> sorted_subset) const;

    UniformHypergraph materialize() const;

private:
    std::vector<UniformHypergraph> bases_;
};

struct DeviationResult {
    bool admitted = false;      // |L| >= eps * C(n,r)
    std::uint64_t l_size = 0;
    std::uint64_t g_in_l = 0;
    Rational deviation;         // meaningful only when admitted
};

DeviationResult regularity_deviation(const UniformHypergraph& g, const CylinderIntersection& l,
                                     const Rational& eps);

enum class RegularityMode { exhaustive, sampled };

struct RegularityReport {
    Rational max_deviation;
    std::uint64_t tested = 0;
    std::uint64_t admitted = 0;
    Rational eps;
    std::optional<CylinderIntersection> witness;
    RegularityMode mode = RegularityMode::sampled;
};

std::vector<double> default_density_grid();

// Tests every provided cylinder intersection, then `samples` random ones
// whose B_i are iid random (r-1)-uniform hypergraphs, each at a density drawn
// from `density_grid`. The witness is the admitted intersection of largest
// deviation when that deviation exceeds eps. Requires r = arity(G) >= 2.
RegularityReport check_regularity_sampled(const UniformHypergraph& g, const Rational& eps,
                                          std::uint64_t samples, std::uint64_t seed,
                                          const std::vector<double>& density_grid,
                                          const std::vector<CylinderIntersection>& planted = {});

// Exhaustive over an explicit family.
RegularityReport check_regularity_family(const UniformHypergraph& g, const Rational& eps,
                                         const std::vector<CylinderIntersection>& family);

struct IndependenceStatistic {
    double max_discrepancy = 0.0;
    double bound = 0.0;  // 4 sigma, sigma = sqrt(p(1-p)/C(n,k)), p = prod mu(S_i)
    std::uint64_t trials = 0;
    bool within_bound() const noexcept { return max_discrepancy <= bound; }
};

// For each trial a fresh random hyperpartition; S_i is the set of ordered
// k-tuples of distinct vertices whose A_i-projection lies in class 0 at level
// |A_i|. Compares mu(S_1 cap ... cap S_m) with prod mu(S_i) over all trials.
// Subsets are bitmasks over [k]; duplicates are rejected.
IndependenceStatistic independence_test(int k, std::size_t n, int l,
                                        const std::vector<std::uint8_t>& subsets,
                                        std::uint64_t seed, std::uint64_t trials);

// Projected step hypergraphon whose value on the orbit of each cell profile is
// that cell's edge density.
StepHypergraphon extract_step_hypergraphon(const UniformHypergraph& h, const Hyperpartition& p);

}  // namespace hyperlim
