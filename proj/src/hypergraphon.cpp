#include "hyperlim/hypergraphon.hpp"

#include <cmath>

namespace hyperlim {

namespace {

constexpr std::uint64_t block_terms = std::uint64_t{1} << 16;
constexpr std::uint64_t mc_chunk = 4096;

std::uint64_t grid_size(int l, std::size_t dim, std::uint64_t limit) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        if (total > limit / static_cast<std::uint64_t>(l)) return limit + 1;
        total *= static_cast<std::uint64_t>(l);
    }
    return total;
}

void check_resolution(int l) {
    if (l < 1 || l > 65535) throw InvalidInput("resolution must lie in 1..65535");
}

// Per-edge face table for the density integrand: edge_face[e*d + i] is the
// face of K holding the coordinate of subset A_i for edge e.
struct DensityKernel {
    const StepHypergraphon& w;
    std::size_t faces;
    std::size_t dim;
    std::size_t edges;
    std::vector<std::size_t> edge_face;
    std::vector<std::uint64_t> strides;

    DensityKernel(const StepHypergraphon& w_, std::size_t faces_, std::vector<std::size_t> table)
        : w(w_), faces(faces_), dim(w_.dimension()), edge_face(std::move(table)) {
        edges = dim == 0 ? 0 : edge_face.size() / dim;
        strides.assign(dim, 1);
        for (std::size_t i = dim; i-- > 1;)
            strides[i - 1] = strides[i] * static_cast<std::uint64_t>(w.resolution());
    }

    double product(const BoxIndex* assignment) const {
        double prod = 1.0;
        BoxKey box(dim);
        for (std::size_t e = 0; e < edges; ++e) {
            const std::size_t* row = edge_face.data() + e * dim;
            double v;
            if (w.has_dense_table()) {
                std::uint64_t idx = 0;
                for (std::size_t i = 0; i < dim; ++i) idx += assignment[row[i]] * strides[i];
                v = w.dense_value(idx);
            } else {
                for (std::size_t i = 0; i < dim; ++i) box[i] = assignment[row[i]];
                v = w.box_value(box);
            }
            if (v == 0.0) return 0.0;
            prod *= v;
        }
        return prod;
    }
};

std::vector<std::size_t> order_preserving_faces(const UniformHypergraph& kg, const SimplicialSupport& support) {
    const std::size_t dim = SubsetIndexing::of(kg.arity()).size();
    std::vector<std::size_t> table;
    table.reserve(kg.edge_count() * dim);
    for (std::size_t e = 0; e < kg.edge_count(); ++e)
        for (std::size_t i = 0; i < dim; ++i) table.push_back(support.face_of(e, i));
    return table;
}

void require_match(const UniformHypergraph& kg, const StepHypergraphon& w) {
    if (kg.arity() != w.arity())
        throw InvalidInput("arity mismatch: K has " + std::to_string(kg.arity()) + ", W has " +
                           std::to_string(w.arity()));
}

std::uint64_t checked_terms(int l, std::size_t faces, ExactBudget budget) {
    const std::uint64_t terms = grid_size(l, faces, budget.max_terms);
    if (terms > budget.max_terms)
        throw BudgetExceeded("exact density needs " + std::to_string(l) + "^" + std::to_string(faces) +
                             " terms, budget is " + std::to_string(budget.max_terms));
    return terms;
}

double flat_sum(const DensityKernel& kernel, int l, ExactBudget budget) {
    const std::uint64_t terms = checked_terms(l, kernel.faces, budget);
    if (kernel.faces == 0) return kernel.product(nullptr);
    const std::uint64_t blocks = (terms + block_terms - 1) / block_terms;
    std::vector<CompensatedSum> partial(blocks);
    parallel_for(blocks, [&](std::size_t b) {
        const std::uint64_t begin = b * block_terms;
        const std::uint64_t end = std::min(terms, begin + block_terms);
        std::vector<BoxIndex> digits(kernel.faces);
        std::uint64_t rest = begin;
        for (auto& d : digits) {
            d = static_cast<BoxIndex>(rest % l);
            rest /= l;
        }
        CompensatedSum sum;
        for (std::uint64_t t = begin; t < end; ++t) {
            sum.add(kernel.product(digits.data()));
            for (auto& d : digits) {
                if (++d < l) break;
                d = 0;
            }
        }
        partial[b] = sum;
    });
    CompensatedSum total;
    for (const auto& p : partial) total.add(p);
    return total.value() / static_cast<double>(terms);
}

}  // namespace

StepHypergraphon::StepHypergraphon(int k, int l, ValueKind kind, std::map<BoxKey, double> entries)
    : k_(k), l_(l), kind_(kind), dim_(SubsetIndexing::of(k).size()), entries_(std::move(entries)) {
    const std::uint64_t cells = grid_size(l_, dim_, enumeration_limit);
    if (cells > enumeration_limit) return;
    const auto& idx = SubsetIndexing::of(k_);
    dense_.assign(cells, 0.0);
    BoxKey image(dim_);
    for (const auto& [box, value] : entries_) {
        for (std::size_t p = 0; p < idx.permutation_count(); ++p) {
            const auto r = idx.remap(p);
            for (std::size_t i = 0; i < dim_; ++i) image[i] = box[r[i]];
            dense_[grid_index(image)] = value;
        }
    }
}

StepHypergraphon StepHypergraphon::from_entries(int k, int l, ValueKind kind,
                                                std::vector<std::pair<BoxKey, double>> entries) {
    const auto& idx = SubsetIndexing::of(k);
    check_resolution(l);
    std::map<BoxKey, double> stored;
    for (auto& [box, value] : entries) {
        if (box.size() != idx.size())
            throw InvalidInput("box has " + std::to_string(box.size()) + " coordinates, expected " +
                               std::to_string(idx.size()));
        for (const BoxIndex b : box)
            if (b >= l) throw InvalidInput("box index " + std::to_string(b) + " outside 0.." + std::to_string(l - 1));
        if (idx.canonical<BoxIndex>(box) != box) throw InvalidInput("box is not a canonical orbit representative");
        if (kind == ValueKind::indicator && value != 1.0)
            throw InvalidInput("indicator entries must have value 1");
        if (!(value >= 0.0 && value <= 1.0)) throw InvalidInput("value outside [0,1]");
        if (!stored.emplace(std::move(box), value).second) throw InvalidInput("duplicate orbit entry");
    }
    return StepHypergraphon(k, l, kind, std::move(stored));
}

StepHypergraphon StepHypergraphon::from_function(int k, int l, ValueKind kind,
                                                 const std::function<double(std::span<const BoxIndex>)>& value) {
    const auto& idx = SubsetIndexing::of(k);
    check_resolution(l);
    const std::uint64_t cells = grid_size(l, idx.size(), enumeration_limit);
    if (cells > enumeration_limit) throw BudgetExceeded("box grid too large to enumerate");
    std::map<BoxKey, double> stored;
    BoxKey box(idx.size(), 0);
    for (std::uint64_t c = 0; c < cells; ++c) {
        if (idx.canonical<BoxIndex>(box) == box) {
            const double v = value(box);
            if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("value outside [0,1]");
            if (kind == ValueKind::indicator && v != 0.0 && v != 1.0)
                throw InvalidInput("indicator values must be 0 or 1");
            if (v != 0.0) stored.emplace(box, v);
        }
        for (std::size_t i = box.size(); i-- > 0;) {
            if (++box[i] < l) break;
            box[i] = 0;
        }
    }
    return StepHypergraphon(k, l, kind, std::move(stored));
}

std::uint64_t StepHypergraphon::grid_index(std::span<const BoxIndex> box) const noexcept {
    std::uint64_t g = 0;
    for (const BoxIndex b : box) g = g * static_cast<std::uint64_t>(l_) + b;
    return g;
}

double StepHypergraphon::box_value(std::span<const BoxIndex> box) const {
    if (box.size() != dim_) throw InvalidInput("box length differs from 2^k-1");
    for (const BoxIndex b : box)
        if (b >= l_) throw InvalidInput("box index out of range");
    if (!dense_.empty()) return dense_[grid_index(box)];
    const auto it = entries_.find(SubsetIndexing::of(k_).canonical<BoxIndex>(box));
    return it == entries_.end() ? 0.0 : it->second;
}

double StepHypergraphon::eval(std::span<const double> point) const {
    if (point.size() != dim_) throw InvalidInput("point length differs from 2^k-1");
    BoxKey box(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        const double x = point[i];
        if (!(x >= 0.0 && x < 1.0)) throw InvalidInput("coordinate outside [0,1)");
        const auto b = static_cast<long>(std::floor(x * l_));
        box[i] = static_cast<BoxIndex>(std::min<long>(b, l_ - 1));
    }
    return box_value(box);
}

StepHypergraphon constant_hypergraphon(int k, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("constant value outside [0,1]");
    const std::size_t dim = SubsetIndexing::of(k).size();
    std::vector<std::pair<BoxKey, double>> entries;
    if (p != 0.0) entries.emplace_back(BoxKey(dim, 0), p);
    const ValueKind kind = (p == 0.0 || p == 1.0) ? ValueKind::indicator : ValueKind::projected;
    return StepHypergraphon::from_entries(k, 1, kind, std::move(entries));
}

StepHypergraphon project(const StepHypergraphon& w) {
    const std::size_t top = SubsetIndexing::of(w.arity()).top_index();
    const int l = w.resolution();
    return StepHypergraphon::from_function(w.arity(), l, ValueKind::projected,
                                           [&](std::span<const BoxIndex> box) {
                                               BoxKey b(box.begin(), box.end());
                                               CompensatedSum sum;
                                               for (int j = 0; j < l; ++j) {
                                                   b[top] = static_cast<BoxIndex>(j);
                                                   sum.add(w.box_value(b));
                                               }
                                               return std::min(1.0, sum.value() / l);
                                           });
}

double exact_density(const UniformHypergraph& kg, const StepHypergraphon& w, ExactBudget budget) {
    require_match(kg, w);
    const SimplicialSupport support(kg);
    const DensityKernel kernel(w, support.size(), order_preserving_faces(kg, support));
    return flat_sum(kernel, w.resolution(), budget);
}

double exact_density_with_bijections(const UniformHypergraph& kg, const StepHypergraphon& w,
                                     const std::vector<std::vector<int>>& bijections,
                                     ExactBudget budget) {
    require_match(kg, w);
    if (bijections.size() != kg.edge_count()) throw InvalidInput("one bijection per edge required");
    const auto& idx = SubsetIndexing::of(kg.arity());
    const SimplicialSupport support(kg);
    std::vector<std::size_t> table;
    for (std::size_t e = 0; e < kg.edge_count(); ++e) {
        const auto& s = bijections[e];
        std::vector<int> check(s);
        std::sort(check.begin(), check.end());
        for (int j = 0; j < kg.arity(); ++j)
            if (check.size() != static_cast<std::size_t>(kg.arity()) || check[j] != j)
                throw InvalidInput("not a bijection of [k]");
        for (std::size_t i = 0; i < idx.size(); ++i) {
            std::vector<Vertex> face;
            for (int j = 0; j < kg.arity(); ++j)
                if (idx.mask(i) & (1u << j)) face.push_back(kg.edge(e)[s[j]]);
            std::sort(face.begin(), face.end());
            table.push_back(support.find(face));
        }
    }
    const DensityKernel kernel(w, support.size(), std::move(table));
    return flat_sum(kernel, w.resolution(), budget);
}

double exact_density_iterated(const UniformHypergraph& kg, const StepHypergraphon& w,
                              std::span<const std::size_t> face_order, ExactBudget budget) {
    require_match(kg, w);
    const SimplicialSupport support(kg);
    const DensityKernel kernel(w, support.size(), order_preserving_faces(kg, support));
    checked_terms(w.resolution(), support.size(), budget);
    std::vector<std::size_t> sorted(face_order.begin(), face_order.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i || sorted.size() != support.size())
            throw InvalidInput("face order must be a permutation of the faces");

    const int l = w.resolution();
    std::vector<BoxIndex> assignment(support.size(), 0);
    auto nested = [&](auto&& self, std::size_t level) -> double {
        if (level == face_order.size()) return kernel.product(assignment.data());
        CompensatedSum sum;
        for (int b = 0; b < l; ++b) {
            assignment[face_order[level]] = static_cast<BoxIndex>(b);
            sum.add(self(self, level + 1));
        }
        return sum.value() / l;
    };
    return nested(nested, 0);
}

DensityEstimate mc_density(const UniformHypergraph& kg, const StepHypergraphon& w,
                           std::uint64_t n_samples, std::uint64_t seed) {
    require_match(kg, w);
    if (n_samples < 2) throw InvalidInput("Monte-Carlo density needs at least 2 samples");
    const SimplicialSupport support(kg);
    const DensityKernel kernel(w, support.size(), order_preserving_faces(kg, support));
    const int l = w.resolution();
    const std::uint64_t key = derive_seed(seed, "mc-density");
    const std::uint64_t chunks = (n_samples + mc_chunk - 1) / mc_chunk;
    std::vector<CompensatedSum> sums(chunks), squares(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        std::vector<BoxIndex> assignment(support.size());
        const std::uint64_t end = std::min(n_samples, (c + 1) * mc_chunk);
        for (std::uint64_t i = c * mc_chunk; i < end; ++i) {
            SplitMix64 rng(mix64(key + golden_gamma * (i + 1)));
            for (auto& a : assignment) a = static_cast<BoxIndex>(rng.below(l));
            const double v = kernel.product(assignment.data());
            sums[c].add(v);
            squares[c].add(v * v);
        }
    });
    CompensatedSum sum, square;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        sum.add(sums[c]);
        square.add(squares[c]);
    }
    const auto n = static_cast<double>(n_samples);
    const double mean = sum.value() / n;
    const double variance = std::max(0.0, (square.value() - sum.value() * mean) / (n - 1.0));
    return {mean, std::sqrt(variance / n), n_samples, seed};
}

LatentSample::LatentSample(UniformHypergraph graph, std::uint64_t seed,
                           std::vector<std::vector<std::uint64_t>> latents)
    : graph_(std::move(graph)), seed_(seed), latents_(std::move(latents)) {
    if (latents_.size() != static_cast<std::size_t>(graph_.arity()))
        throw InvalidInput("latents needed for every subset size 1..k");
    for (std::size_t r = 1; r <= latents_.size(); ++r)
        if (latents_[r - 1].size() != binomial(graph_.n_vertices(), r))
            throw InvalidInput("missing latents at subset size " + std::to_string(r));
}

std::uint64_t LatentSample::latent_bits(std::span<const Vertex> sorted_subset) const {
    if (sorted_subset.empty() || sorted_subset.size() > latents_.size())
        throw InvalidInput("latent requested for a subset of unsupported size");
    return latents_[sorted_subset.size() - 1][subset_rank(n_vertices(), sorted_subset)];
}

double LatentSample::latent(std::span<const Vertex> sorted_subset) const {
    return static_cast<double>(latent_bits(sorted_subset) >> 11) * 0x1.0p-53;
}

BoxIndex LatentSample::box_of(std::span<const Vertex> sorted_subset, int l) const {
    return static_cast<BoxIndex>(SplitMix64::scale_fraction(latent_bits(sorted_subset), l));
}

BoxKey latent_box(const LatentSample& sample, std::span<const Vertex> edge, int l) {
    const auto& idx = SubsetIndexing::of(sample.arity());
    BoxKey box(idx.size());
    std::array<Vertex, max_arity> face{};
    for (std::size_t i = 0; i < idx.size(); ++i) {
        std::size_t len = 0;
        for (std::size_t j = 0; j < edge.size(); ++j)
            if (idx.mask(i) & (1u << j)) face[len++] = edge[j];
        box[i] = sample.box_of({face.data(), len}, l);
    }
    return box;
}

LatentSample sample_w_random(const StepHypergraphon& w, std::size_t n, std::uint64_t seed) {
    if (w.kind() != ValueKind::indicator)
        throw InvalidInput("W-random sampling requires an indicator hypergraphon");
    const int k = w.arity();
    if (n < static_cast<std::size_t>(k)) throw InvalidInput("sample size below the arity");

    std::vector<std::vector<std::uint64_t>> latents(k);
    for (int r = 1; r <= k; ++r) {
        const std::uint64_t key = derive_seed(seed, "latent", {static_cast<std::uint64_t>(r)});
        auto& level = latents[r - 1];
        level.resize(binomial(n, r));
        for (std::uint64_t rank = 0; rank < level.size(); ++rank)
            level[rank] = mix64(key + golden_gamma * (rank + 1));
    }
    const LatentSample bare(UniformHypergraph(k, n), seed, latents);

    const std::uint64_t subsets = binomial(n, k);
    const std::uint64_t chunk = 4096;
    const std::uint64_t chunks = (subsets + chunk - 1) / chunk;
    std::vector<std::vector<std::vector<Vertex>>> found(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        auto cur = subset_unrank(n, k, c * chunk);
        const std::uint64_t end = std::min(subsets, (c + 1) * chunk);
        for (std::uint64_t rank = c * chunk; rank < end; ++rank) {
            if (w.box_value(latent_box(bare, cur, w.resolution())) == 1.0) found[c].push_back(cur);
            std::size_t i = k;
            while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++cur[i - 1];
            for (std::size_t j = i; j < static_cast<std::size_t>(k); ++j) cur[j] = cur[j - 1] + 1;
        }
    });
    std::vector<std::vector<Vertex>> edges;
    for (auto& f : found)
        for (auto& e : f) edges.push_back(std::move(e));
    return LatentSample(UniformHypergraph(k, n, edges), seed, std::move(latents));
}

}  // namespace hyperlim
