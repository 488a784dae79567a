#include "hyperlim/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hyperlim {

namespace {

// Binomial table for ranking small subsets without repeated recomputation.
class RankTable {
public:
    RankTable(std::size_t n, std::size_t max_r) : n_(n), width_(max_r + 1), table_((n + 1) * (max_r + 1), 0) {
        for (std::size_t a = 0; a <= n; ++a)
            for (std::size_t b = 0; b <= max_r; ++b) table_[a * width_ + b] = binomial(a, b);
    }
    std::uint64_t choose(std::size_t a, std::size_t b) const { return table_[a * width_ + b]; }
    std::uint64_t rank(const Vertex* s, std::size_t r) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < r; ++i) acc += choose(n_ - 1 - s[i], r - i);
        return choose(n_, r) - 1 - acc;
    }

private:
    std::size_t n_;
    std::size_t width_;
    std::vector<std::uint64_t> table_;
};

void next_subset(std::vector<Vertex>& cur, std::size_t n) {
    const std::size_t r = cur.size();
    std::size_t i = r;
    while (i > 0 && cur[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++cur[i - 1];
    for (std::size_t j = i; j < r; ++j) cur[j] = cur[j - 1] + 1;
}

void require_same_frame(const UniformHypergraph& h, const Hyperpartition& p) {
    if (h.arity() != p.arity()) throw InvalidInput("hypergraph and hyperpartition arities differ");
    if (h.n_vertices() != p.n_vertices()) throw InvalidInput("hypergraph and hyperpartition vertex counts differ");
}

// Membership of an r-subset in a cylinder intersection given per-base
// membership bitmaps over (r-1)-subset ranks.
class CylinderEvaluator {
public:
    explicit CylinderEvaluator(const CylinderIntersection& c)
        : r_(c.arity()), n_(c.n_vertices()), ranks_(c.n_vertices(), c.arity()) {
        for (const auto& b : c.bases()) {
            std::vector<char> bits(binomial(n_, r_ - 1), 0);
            for (std::size_t e = 0; e < b.edge_count(); ++e) bits[ranks_.rank(b.edge(e).data(), r_ - 1)] = 1;
            member_.push_back(std::move(bits));
        }
        std::vector<std::uint8_t> perm(r_);
        std::iota(perm.begin(), perm.end(), std::uint8_t{0});
        do {
            perms_.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    bool contains(const Vertex* s) const {
        // ok[i][j]: s without its j-th element lies in B_i.
        std::array<std::array<bool, max_arity>, max_arity> ok{};
        std::array<Vertex, max_arity> rest{};
        for (std::size_t j = 0; j < r_; ++j) {
            std::size_t len = 0;
            for (std::size_t t = 0; t < r_; ++t)
                if (t != j) rest[len++] = s[t];
            const std::uint64_t rank = ranks_.rank(rest.data(), r_ - 1);
            for (std::size_t i = 0; i < r_; ++i) ok[i][j] = member_[i][rank] != 0;
        }
        for (const auto& perm : perms_) {
            bool all = true;
            for (std::size_t i = 0; i < r_ && all; ++i) all = ok[i][perm[i]];
            if (all) return true;
        }
        return false;
    }

    std::size_t arity() const noexcept { return r_; }
    std::size_t n() const noexcept { return n_; }

private:
    std::size_t r_;
    std::size_t n_;
    RankTable ranks_;
    std::vector<std::vector<char>> member_;
    std::vector<std::vector<std::uint8_t>> perms_;
};

DeviationResult deviation_of(const UniformHypergraph& g, const CylinderEvaluator& eval, const Rational& eps) {
    const std::size_t r = eval.arity();
    const std::size_t n = eval.n();
    DeviationResult out;
    if (n < r) return out;
    std::vector<Vertex> cur(r);
    std::iota(cur.begin(), cur.end(), Vertex{0});
    const std::uint64_t total = binomial(n, r);
    std::size_t next_edge = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
        bool is_edge = false;
        while (next_edge < g.edge_count() &&
               std::lexicographical_compare(g.edge(next_edge).begin(), g.edge(next_edge).end(), cur.begin(), cur.end()))
            ++next_edge;
        if (next_edge < g.edge_count() && std::equal(cur.begin(), cur.end(), g.edge(next_edge).begin()))
            is_edge = true;
        if (eval.contains(cur.data())) {
            ++out.l_size;
            if (is_edge) ++out.g_in_l;
        }
        next_subset(cur, n);
    }
    out.admitted = out.l_size > 0 && Rational(BigInt(out.l_size)) >= eps * Rational(BigInt(total));
    if (out.admitted) {
        const Rational global(BigInt(g.edge_count()), BigInt(total));
        const Rational local(BigInt(out.g_in_l), BigInt(out.l_size));
        out.deviation = global > local ? global - local : local - global;
    }
    return out;
}

void require_cylinder_frame(const UniformHypergraph& g, std::size_t r, std::size_t n) {
    if (static_cast<std::size_t>(g.arity()) != r) throw InvalidInput("cylinder arity differs from G");
    if (g.n_vertices() != n) throw InvalidInput("cylinder and G vertex sets differ");
}

RegularityReport summarize(const std::vector<DeviationResult>& results,
                           const std::vector<CylinderIntersection>& cylinders, const Rational& eps,
                           RegularityMode mode) {
    RegularityReport report;
    report.eps = eps;
    report.mode = mode;
    report.tested = results.size();
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!results[i].admitted) continue;
        ++report.admitted;
        if (!best || results[i].deviation > results[*best].deviation) best = i;
    }
    if (best) {
        report.max_deviation = results[*best].deviation;
        if (report.max_deviation > eps) report.witness = cylinders[*best];
    }
    return report;
}

}  // namespace

Hyperpartition::Hyperpartition(int k, std::size_t n, int l, std::vector<std::vector<std::uint32_t>> labels)
    : k_(k), n_(n), l_(l), labels_(std::move(labels)) {
    if (k < 1 || k > max_arity) throw InvalidInput("hyperpartition arity outside 1..4");
    if (l < 1) throw InvalidInput("hyperpartition needs at least one class");
    if (labels_.size() != static_cast<std::size_t>(k)) throw InvalidInput("hyperpartition needs one level per r = 1..k");
    for (std::size_t r = 1; r <= labels_.size(); ++r) {
        if (labels_[r - 1].size() != binomial(n, r))
            throw InvalidInput("level " + std::to_string(r) + " does not label every subset");
        for (const auto label : labels_[r - 1])
            if (label >= static_cast<std::uint32_t>(l)) throw InvalidInput("class label out of range");
    }
}

std::uint32_t Hyperpartition::label(std::span<const Vertex> sorted_subset) const {
    if (sorted_subset.empty() || sorted_subset.size() > labels_.size())
        throw InvalidInput("subset size outside 1..k");
    return labels_[sorted_subset.size() - 1][subset_rank(n_, sorted_subset)];
}

UniformHypergraph Hyperpartition::class_hypergraph(std::size_t r, std::uint32_t j) const {
    const auto& lv = labels_.at(r - 1);
    std::vector<std::vector<Vertex>> edges;
    std::uint64_t rank = 0;
    for_each_subset(n_, r, [&](std::span<const Vertex> s) {
        if (lv[rank++] == j) edges.emplace_back(s.begin(), s.end());
    });
    return UniformHypergraph(static_cast<int>(r), n_, edges);
}

std::vector<std::size_t> Hyperpartition::class_sizes(std::size_t r) const {
    std::vector<std::size_t> sizes(l_, 0);
    for (const auto label : labels_.at(r - 1)) ++sizes[label];
    return sizes;
}

Hyperpartition random_hyperpartition(int k, std::size_t n, int l, std::uint64_t seed) {
    if (l < 1) throw InvalidInput("hyperpartition needs at least one class");
    std::vector<std::vector<std::uint32_t>> labels(k < 1 ? 0 : k);
    for (int r = 1; r <= k; ++r) {
        const std::uint64_t key = derive_seed(seed, "partition", {static_cast<std::uint64_t>(r)});
        auto& level = labels[r - 1];
        level.resize(binomial(n, r));
        for (std::uint64_t rank = 0; rank < level.size(); ++rank)
            level[rank] = static_cast<std::uint32_t>(
                SplitMix64::scale_fraction(mix64(key + golden_gamma * (rank + 1)), l));
    }
    return Hyperpartition(k, n, l, std::move(labels));
}

Hyperpartition latent_hyperpartition(const LatentSample& sample, int l) {
    if (l < 1) throw InvalidInput("hyperpartition needs at least one class");
    const int k = sample.arity();
    std::vector<std::vector<std::uint32_t>> labels(k);
    for (int r = 1; r <= k; ++r) {
        const auto latents = sample.level(r);
        labels[r - 1].reserve(latents.size());
        for (const auto bits : latents)
            labels[r - 1].push_back(static_cast<std::uint32_t>(SplitMix64::scale_fraction(bits, l)));
    }
    return Hyperpartition(k, sample.n_vertices(), l, std::move(labels));
}

CellProfile cell_profile(const Hyperpartition& p, std::span<const Vertex> s) {
    if (s.size() != static_cast<std::size_t>(p.arity())) throw InvalidInput("cell profile needs a k-subset");
    const auto& idx = SubsetIndexing::of(p.arity());
    BoxKey raw(idx.size());
    std::array<Vertex, max_arity> face{};
    for (std::size_t i = 0; i < idx.size(); ++i) {
        std::size_t len = 0;
        for (std::size_t j = 0; j < s.size(); ++j)
            if (idx.mask(i) & (1u << j)) face[len++] = s[j];
        raw[i] = static_cast<BoxIndex>(p.label({face.data(), len}));
    }
    return idx.canonical<BoxIndex>(raw);
}

std::vector<CellProfile> induce_cells(const Hyperpartition& p) {
    std::vector<CellProfile> out;
    out.reserve(binomial(p.n_vertices(), p.arity()));
    for_each_subset(p.n_vertices(), p.arity(),
                    [&](std::span<const Vertex> s) { out.push_back(cell_profile(p, s)); });
    return out;
}

std::map<CellProfile, CellStats> cell_statistics(const UniformHypergraph& h, const Hyperpartition& p) {
    require_same_frame(h, p);
    std::map<CellProfile, CellStats> stats;
    std::size_t next_edge = 0;
    for_each_subset(p.n_vertices(), p.arity(), [&](std::span<const Vertex> s) {
        auto& cell = stats[cell_profile(p, s)];
        ++cell.size;
        if (next_edge < h.edge_count() && std::equal(s.begin(), s.end(), h.edge(next_edge).begin())) {
            ++cell.edges;
            ++next_edge;
        }
    });
    return stats;
}

std::map<CellProfile, Rational> cell_density(const UniformHypergraph& h, const Hyperpartition& p) {
    std::map<CellProfile, Rational> out;
    for (const auto& [profile, stats] : cell_statistics(h, p)) out.emplace(profile, stats.density());
    return out;
}

CellApproximation cell_approximation(const UniformHypergraph& h, const Hyperpartition& p) {
    CellApproximation out;
    for (const auto& [profile, stats] : cell_statistics(h, p)) {
        if (2 * stats.edges > stats.size) {
            out.cells.push_back(profile);
            out.symmetric_difference += stats.size - stats.edges;
        } else {
            out.symmetric_difference += stats.edges;
        }
    }
    const std::uint64_t total = binomial(p.n_vertices(), p.arity());
    out.error = total == 0 ? Rational(0) : Rational(BigInt(out.symmetric_difference), BigInt(total));
    return out;
}

Equitability equitability(const Hyperpartition& p) {
    Equitability out;
    out.overall = 0;
    for (std::size_t r = 1; r <= static_cast<std::size_t>(p.arity()); ++r) {
        const auto sizes = p.class_sizes(r);
        const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
        const std::uint64_t total = binomial(p.n_vertices(), r);
        Rational delta = total == 0 ? Rational(0) : Rational(BigInt(*hi - *lo), BigInt(total));
        if (delta > out.overall) out.overall = delta;
        out.per_level.push_back(std::move(delta));
    }
    return out;
}

CylinderIntersection::CylinderIntersection(std::vector<UniformHypergraph> bases) : bases_(std::move(bases)) {
    const std::size_t r = bases_.size();
    if (r < 2 || r > static_cast<std::size_t>(max_arity))
        throw InvalidInput("cylinder intersections need 2..4 base hypergraphs");
    for (const auto& b : bases_) {
        if (static_cast<std::size_t>(b.arity()) != r - 1) throw InvalidInput("base hypergraphs must be (r-1)-uniform");
        if (b.n_vertices() != bases_.front().n_vertices()) throw InvalidInput("base hypergraphs must share a vertex set");
    }
}

bool CylinderIntersection::contains(std::span<const Vertex> s) const {
    const std::size_t r = arity();
    if (s.size() != r) throw InvalidInput("subset size differs from cylinder arity");
    for (std::size_t i = 0; i < r; ++i) {
        if (s[i] >= n_vertices()) throw InvalidInput("vertex out of range");
        if (i > 0 && s[i] <= s[i - 1]) throw InvalidInput("subset must be strictly increasing");
    }
    std::vector<std::uint8_t> perm(r);
    std::iota(perm.begin(), perm.end(), std::uint8_t{0});
    std::vector<Vertex> rest;
    do {
        bool all = true;
        for (std::size_t i = 0; i < r && all; ++i) {
            rest.clear();
            for (std::size_t t = 0; t < r; ++t)
                if (t != perm[i]) rest.push_back(s[t]);
            all = bases_[i].contains(rest);
        }
        if (all) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

UniformHypergraph CylinderIntersection::materialize() const {
    const CylinderEvaluator eval(*this);
    std::vector<std::vector<Vertex>> edges;
    for_each_subset(n_vertices(), arity(), [&](std::span<const Vertex> s) {
        if (eval.contains(s.data())) edges.emplace_back(s.begin(), s.end());
    });
    return UniformHypergraph(static_cast<int>(arity()), n_vertices(), edges);
}

DeviationResult regularity_deviation(const UniformHypergraph& g, const CylinderIntersection& l, const Rational& eps) {
    require_cylinder_frame(g, l.arity(), l.n_vertices());
    return deviation_of(g, CylinderEvaluator(l), eps);
}

std::vector<double> default_density_grid() { return {0.25, 0.5, 0.75}; }

RegularityReport check_regularity_family(const UniformHypergraph& g, const Rational& eps,
                                         const std::vector<CylinderIntersection>& family) {
    for (const auto& c : family) require_cylinder_frame(g, c.arity(), c.n_vertices());
    std::vector<DeviationResult> results(family.size());
    parallel_for(family.size(), [&](std::size_t i) {
        results[i] = deviation_of(g, CylinderEvaluator(family[i]), eps);
    });
    return summarize(results, family, eps, RegularityMode::exhaustive);
}

RegularityReport check_regularity_sampled(const UniformHypergraph& g, const Rational& eps, std::uint64_t samples,
                                          std::uint64_t seed, const std::vector<double>& density_grid,
                                          const std::vector<CylinderIntersection>& planted) {
    const std::size_t r = static_cast<std::size_t>(g.arity());
    if (r < 2) throw InvalidInput("cylinder intersections are undefined for 1-uniform hypergraphs");
    if (samples < 1) throw InvalidInput("at least one sampled cylinder intersection required");
    if (density_grid.empty()) throw InvalidInput("density grid is empty");
    for (const double d : density_grid)
        if (!(d >= 0.0 && d <= 1.0)) throw InvalidInput("grid density outside [0,1]");
    for (const auto& c : planted) require_cylinder_frame(g, c.arity(), c.n_vertices());

    const std::size_t n = g.n_vertices();
    std::vector<CylinderIntersection> cylinders(planted);
    cylinders.reserve(planted.size() + samples);
    for (std::uint64_t m = 0; m < samples; ++m) {
        SplitMix64 rng(derive_seed(seed, "cylinder", {m}));
        std::vector<UniformHypergraph> bases;
        for (std::size_t i = 0; i < r; ++i) {
            const double density = density_grid[rng.below(density_grid.size())];
            std::vector<std::vector<Vertex>> edges;
            for_each_subset(n, r - 1, [&](std::span<const Vertex> s) {
                if (rng.uniform() < density) edges.emplace_back(s.begin(), s.end());
            });
            bases.emplace_back(static_cast<int>(r - 1), n, edges);
        }
        cylinders.emplace_back(std::move(bases));
    }
    std::vector<DeviationResult> results(cylinders.size());
    parallel_for(cylinders.size(), [&](std::size_t i) {
        results[i] = deviation_of(g, CylinderEvaluator(cylinders[i]), eps);
    });
    return summarize(results, cylinders, eps, RegularityMode::sampled);
}

IndependenceStatistic independence_test(int k, std::size_t n, int l, const std::vector<std::uint8_t>& subsets,
                                        std::uint64_t seed, std::uint64_t trials) {
    if (k < 1 || k > max_arity) throw InvalidInput("arity outside 1..4");
    if (n < static_cast<std::size_t>(k)) throw InvalidInput("fewer vertices than the arity");
    if (subsets.empty()) throw InvalidInput("at least one subset required");
    if (trials < 1) throw InvalidInput("at least one trial required");
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        if (subsets[i] == 0 || subsets[i] >= (1u << k)) throw InvalidInput("subset must be a nonempty subset of [k]");
        for (std::size_t j = 0; j < i; ++j)
            if (subsets[i] == subsets[j]) throw InvalidInput("duplicate subset");
    }

    const RankTable ranks(n, static_cast<std::size_t>(k));
    IndependenceStatistic stat;
    stat.trials = trials;
    stat.bound = std::numeric_limits<double>::infinity();
    const double units = static_cast<double>(binomial(n, k));
    for (std::uint64_t t = 0; t < trials; ++t) {
        const Hyperpartition p = random_hyperpartition(k, n, l, derive_seed(seed, "independence", {t}));
        std::vector<std::uint64_t> hits(subsets.size(), 0);
        std::uint64_t joint = 0, tuples = 0;
        std::array<Vertex, max_arity> tuple{};
        std::array<Vertex, max_arity> proj{};
        auto visit = [&](auto&& self, int depth) -> void {
            if (depth == k) {
                ++tuples;
                bool all = true;
                for (std::size_t i = 0; i < subsets.size(); ++i) {
                    std::size_t len = 0;
                    for (int j = 0; j < k; ++j)
                        if (subsets[i] & (1u << j)) proj[len++] = tuple[j];
                    std::sort(proj.begin(), proj.begin() + len);
                    const bool in = p.level(len)[ranks.rank(proj.data(), len)] == 0;
                    hits[i] += in;
                    all = all && in;
                }
                joint += all;
                return;
            }
            for (Vertex v = 0; v < n; ++v) {
                bool fresh = true;
                for (int j = 0; j < depth; ++j) fresh = fresh && tuple[j] != v;
                if (!fresh) continue;
                tuple[depth] = v;
                self(self, depth + 1);
            }
        };
        visit(visit, 0);
        double product = 1.0;
        for (const auto h : hits) product *= static_cast<double>(h) / static_cast<double>(tuples);
        const double joint_mu = static_cast<double>(joint) / static_cast<double>(tuples);
        stat.max_discrepancy = std::max(stat.max_discrepancy, std::abs(joint_mu - product));
        stat.bound = std::min(stat.bound, 4.0 * std::sqrt(product * (1.0 - product) / units));
    }
    return stat;
}

StepHypergraphon extract_step_hypergraphon(const UniformHypergraph& h, const Hyperpartition& p) {
    std::vector<std::pair<BoxKey, double>> entries;
    for (const auto& [profile, stats] : cell_statistics(h, p))
        entries.emplace_back(profile, to_double(stats.density()));
    return StepHypergraphon::from_entries(p.arity(), p.resolution(), ValueKind::projected, std::move(entries));
}

}  // namespace hyperlim
