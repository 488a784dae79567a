#include "hyperlim/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hyperlim {

namespace {

void check_arity(int arity) {
    if (arity < 1 || arity > max_arity)
        throw InvalidInput("arity " + std::to_string(arity) + " outside supported range 1.." +
                           std::to_string(max_arity));
}

bool edge_less(std::span<const Vertex> a, std::span<const Vertex> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<int> mask_elements(std::uint8_t mask) {
    std::vector<int> out;
    for (int i = 0; i < 8; ++i)
        if (mask & (1u << i)) out.push_back(i);
    return out;
}

}  // namespace

UniformHypergraph::UniformHypergraph(int arity, std::size_t n_vertices)
    : arity_(arity), n_vertices_(n_vertices) {
    check_arity(arity);
}

UniformHypergraph::UniformHypergraph(FlatTag, int arity, std::size_t n_vertices,
                                     std::vector<Vertex> flat_sorted)
    : arity_(arity), n_vertices_(n_vertices), flat_(std::move(flat_sorted)) {}

UniformHypergraph::UniformHypergraph(int arity, std::size_t n_vertices,
                                     const std::vector<std::vector<Vertex>>& edges)
    : arity_(arity), n_vertices_(n_vertices) {
    check_arity(arity);
    const auto k = static_cast<std::size_t>(arity);
    std::vector<std::vector<Vertex>> sorted;
    sorted.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto e = edges[i];
        if (e.size() != k)
            throw InvalidInput("edge " + std::to_string(i) + " has " + std::to_string(e.size()) +
                               " vertices, expected " + std::to_string(k));
        for (const Vertex v : e)
            if (v >= n_vertices)
                throw InvalidInput("edge " + std::to_string(i) + ": vertex " + std::to_string(v) +
                                   " out of range");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw InvalidInput("edge " + std::to_string(i) + ": repeated vertex");
        sorted.push_back(std::move(e));
    }
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidInput("duplicate edge");
    flat_.reserve(sorted.size() * k);
    for (const auto& e : sorted) flat_.insert(flat_.end(), e.begin(), e.end());
}

std::vector<std::vector<Vertex>> UniformHypergraph::edge_list() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(edge_count());
    for (std::size_t i = 0; i < edge_count(); ++i) {
        const auto e = edge(i);
        out.emplace_back(e.begin(), e.end());
    }
    return out;
}

std::optional<std::size_t> UniformHypergraph::find_edge(std::span<const Vertex> sorted_edge) const noexcept {
    if (sorted_edge.size() != static_cast<std::size_t>(arity_)) return std::nullopt;
    std::size_t lo = 0, hi = edge_count();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (edge_less(edge(mid), sorted_edge))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < edge_count() && std::equal(sorted_edge.begin(), sorted_edge.end(), edge(lo).begin()))
        return lo;
    return std::nullopt;
}

bool UniformHypergraph::contains(std::span<const Vertex> sorted_edge) const noexcept {
    return find_edge(sorted_edge).has_value();
}

UniformHypergraph UniformHypergraph::without_edges(std::span<const std::size_t> edge_ids) const {
    std::vector<bool> drop(edge_count(), false);
    for (const std::size_t id : edge_ids) {
        if (id >= edge_count()) throw InvalidInput("edge index out of range");
        drop[id] = true;
    }
    std::vector<Vertex> flat;
    for (std::size_t i = 0; i < edge_count(); ++i)
        if (!drop[i]) flat.insert(flat.end(), edge(i).begin(), edge(i).end());
    return UniformHypergraph(FlatTag{}, arity_, n_vertices_, std::move(flat));
}

std::vector<std::size_t> UniformHypergraph::degrees() const {
    std::vector<std::size_t> deg(n_vertices_, 0);
    for (const Vertex v : flat_) ++deg[v];
    return deg;
}

UniformHypergraph complete_hypergraph(int arity, std::size_t n_vertices) {
    check_arity(arity);
    if (static_cast<std::size_t>(arity) > n_vertices)
        return UniformHypergraph(arity, n_vertices);
    std::vector<std::vector<Vertex>> edges;
    edges.reserve(binomial(n_vertices, arity));
    for_each_subset(n_vertices, arity, [&](std::span<const Vertex> s) {
        edges.emplace_back(s.begin(), s.end());
    });
    return UniformHypergraph(arity, n_vertices, edges);
}

Rational edge_density(const UniformHypergraph& h) {
    if (h.n_vertices() < static_cast<std::size_t>(h.arity()))
        throw InvalidInput("edge density undefined: fewer vertices than the arity");
    return Rational(BigInt(h.edge_count()), BigInt(binomial(h.n_vertices(), h.arity())));
}

bool symmetric_membership(const UniformHypergraph& h, std::span<const Vertex> tuple) {
    if (tuple.size() != static_cast<std::size_t>(h.arity()))
        throw InvalidInput("tuple length differs from arity");
    std::array<Vertex, max_arity> buf{};
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (tuple[i] >= h.n_vertices()) throw InvalidInput("tuple entry out of range");
        buf[i] = tuple[i];
    }
    std::sort(buf.begin(), buf.begin() + tuple.size());
    if (std::adjacent_find(buf.begin(), buf.begin() + tuple.size()) != buf.begin() + tuple.size())
        return false;
    return h.contains({buf.data(), tuple.size()});
}

std::uint64_t subset_rank(std::size_t n, std::span<const Vertex> s) {
    const std::size_t r = s.size();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < r; ++i) acc += binomial(n - 1 - s[i], r - i);
    return binomial(n, r) - 1 - acc;
}

std::vector<Vertex> subset_unrank(std::size_t n, std::size_t r, std::uint64_t rank) {
    std::vector<Vertex> out;
    out.reserve(r);
    Vertex v = 0;
    for (std::size_t i = 0; i < r; ++i) {
        for (;; ++v) {
            const std::uint64_t block = binomial(n - 1 - v, r - 1 - i);
            if (rank < block) break;
            rank -= block;
        }
        out.push_back(v++);
    }
    return out;
}

SubsetIndexing::SubsetIndexing(int k) : k_(k) {
    check_arity(k);
    std::vector<std::uint8_t> masks;
    for (unsigned m = 1; m < (1u << k); ++m) masks.push_back(static_cast<std::uint8_t>(m));
    std::sort(masks.begin(), masks.end(), [](std::uint8_t a, std::uint8_t b) {
        const auto ea = mask_elements(a), eb = mask_elements(b);
        if (ea.size() != eb.size()) return ea.size() < eb.size();
        return ea < eb;
    });
    masks_ = masks;
    index_of_mask_.fill(0);
    for (std::size_t i = 0; i < masks_.size(); ++i) index_of_mask_[masks_[i]] = i;

    std::array<std::uint8_t, max_arity> p{};
    std::iota(p.begin(), p.begin() + k, std::uint8_t{0});
    do {
        perms_.push_back(p);
    } while (std::next_permutation(p.begin(), p.begin() + k));

    for (const auto& perm : perms_) {
        std::array<std::uint8_t, (1u << max_arity) - 1> table{};
        for (std::size_t i = 0; i < masks_.size(); ++i) {
            std::uint8_t image = 0;
            for (int e = 0; e < k; ++e)
                if (masks_[i] & (1u << e)) image |= static_cast<std::uint8_t>(1u << perm[e]);
            table[i] = static_cast<std::uint8_t>(index_of_mask_[image]);
        }
        remaps_.push_back(table);
    }

    std::map<std::array<std::uint8_t, max_arity>, std::size_t> index;
    for (std::size_t i = 0; i < perms_.size(); ++i) index[perms_[i]] = i;
    compose_.assign(perms_.size(), std::vector<std::size_t>(perms_.size()));
    inverses_.resize(perms_.size());
    for (std::size_t a = 0; a < perms_.size(); ++a) {
        std::array<std::uint8_t, max_arity> inv{};
        for (int e = 0; e < k; ++e) inv[perms_[a][e]] = static_cast<std::uint8_t>(e);
        inverses_[a] = index.at(inv);
        for (std::size_t b = 0; b < perms_.size(); ++b) {
            std::array<std::uint8_t, max_arity> c{};
            for (int e = 0; e < k; ++e) c[e] = perms_[a][perms_[b][e]];
            compose_[a][b] = index.at(c);
        }
    }
}

const SubsetIndexing& SubsetIndexing::of(int k) {
    check_arity(k);
    static const std::array<SubsetIndexing, max_arity> table{
        SubsetIndexing(1), SubsetIndexing(2), SubsetIndexing(3), SubsetIndexing(4)};
    return table[k - 1];
}

SimplicialSupport::SimplicialSupport(const UniformHypergraph& g)
    : width_(SubsetIndexing::of(g.arity()).size()) {
    const auto& idx = SubsetIndexing::of(g.arity());
    std::vector<std::vector<Vertex>> faces;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto edge = g.edge(e);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            std::vector<Vertex> face;
            for (int j = 0; j < g.arity(); ++j)
                if (idx.mask(i) & (1u << j)) face.push_back(edge[j]);
            faces.push_back(std::move(face));
        }
    }
    std::sort(faces.begin(), faces.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    faces_ = std::move(faces);

    edge_faces_.reserve(g.edge_count() * width_);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto edge = g.edge(e);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            std::vector<Vertex> face;
            for (int j = 0; j < g.arity(); ++j)
                if (idx.mask(i) & (1u << j)) face.push_back(edge[j]);
            edge_faces_.push_back(find(face));
        }
    }
}

std::size_t SimplicialSupport::find(std::span<const Vertex> sorted_face) const {
    const std::vector<Vertex> key(sorted_face.begin(), sorted_face.end());
    const auto it = std::lower_bound(faces_.begin(), faces_.end(), key, [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    if (it == faces_.end() || *it != key) throw InvalidInput("not a face of the simplicial support");
    return static_cast<std::size_t>(it - faces_.begin());
}

}  // namespace hyperlim
