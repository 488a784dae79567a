#include "hyperlim/homomorphism.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>

namespace hyperlim {

namespace {

// Edge lookup on ordered k-tuples of H. Dense when n^k is small, otherwise a
// hash of the sorted tuple.
class EdgeTable {
public:
    static constexpr std::uint64_t dense_limit = std::uint64_t{1} << 24;

    explicit EdgeTable(const UniformHypergraph& h) : k_(h.arity()), n_(h.n_vertices()) {
        std::uint64_t cells = 1;
        bool fits = true;
        for (int i = 0; i < k_; ++i) {
            if (n_ != 0 && cells > dense_limit / n_) {
                fits = false;
                break;
            }
            cells *= n_;
        }
        dense_ = fits;
        if (dense_) {
            table_.assign(cells, -1);
            std::array<Vertex, max_arity> perm{};
            for (std::size_t e = 0; e < h.edge_count(); ++e) {
                const auto edge = h.edge(e);
                std::copy(edge.begin(), edge.end(), perm.begin());
                do {
                    table_[dense_key(perm.data())] = static_cast<std::int32_t>(e);
                } while (std::next_permutation(perm.begin(), perm.begin() + k_));
            }
        } else {
            for (std::size_t e = 0; e < h.edge_count(); ++e) sparse_.emplace(packed(h.edge(e).data()), e);
        }
    }

    // Index of the edge {t_0..t_{k-1}} or -1 (also for repeated entries).
    std::int64_t lookup(const Vertex* tuple) const {
        if (dense_) return table_[dense_key(tuple)];
        std::array<Vertex, max_arity> buf{};
        std::copy(tuple, tuple + k_, buf.begin());
        std::sort(buf.begin(), buf.begin() + k_);
        for (int i = 1; i < k_; ++i)
            if (buf[i] == buf[i - 1]) return -1;
        const auto it = sparse_.find(packed(buf.data()));
        return it == sparse_.end() ? -1 : static_cast<std::int64_t>(it->second);
    }

private:
    std::uint64_t dense_key(const Vertex* t) const {
        std::uint64_t key = 0;
        for (int i = k_ - 1; i >= 0; --i) key = key * n_ + t[i];
        return key;
    }
    std::uint64_t packed(const Vertex* sorted) const {
        std::uint64_t key = 0;
        for (int i = 0; i < k_; ++i) key = key * (n_ + 1) + sorted[i];
        return key;
    }

    int k_;
    std::uint64_t n_;
    bool dense_ = false;
    std::vector<std::int32_t> table_;
    std::unordered_map<std::uint64_t, std::size_t> sparse_;
};

// Assignment order and the K-edges that become fully assigned at each depth.
struct SearchPlan {
    std::vector<Vertex> order;                        // active K-vertices
    std::vector<std::vector<std::size_t>> checks;     // per depth: K-edge ids
    std::vector<std::array<std::size_t, max_arity>> edge_depths;  // K-edge -> depths of its vertices
    std::size_t isolated = 0;
    int arity = 0;

    explicit SearchPlan(const UniformHypergraph& kg) : arity(kg.arity()) {
        const auto deg = kg.degrees();
        for (Vertex v = 0; v < kg.n_vertices(); ++v) {
            if (deg[v] > 0)
                order.push_back(v);
            else
                ++isolated;
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](Vertex a, Vertex b) { return deg[a] > deg[b]; });
        std::vector<std::size_t> depth_of(kg.n_vertices(), 0);
        for (std::size_t d = 0; d < order.size(); ++d) depth_of[order[d]] = d;
        checks.resize(order.size());
        edge_depths.resize(kg.edge_count());
        for (std::size_t e = 0; e < kg.edge_count(); ++e) {
            std::size_t last = 0;
            for (int j = 0; j < arity; ++j) {
                edge_depths[e][j] = depth_of[kg.edge(e)[j]];
                last = std::max(last, edge_depths[e][j]);
            }
            checks[last].push_back(e);
        }
    }
};

class Search {
public:
    Search(const SearchPlan& plan, const EdgeTable& table, std::size_t n)
        : plan_(plan), table_(table), n_(n), assign_(plan.order.size(), 0) {}

    bool accept(std::size_t depth) const {
        std::array<Vertex, max_arity> tuple{};
        for (const std::size_t e : plan_.checks[depth]) {
            for (int j = 0; j < plan_.arity; ++j) tuple[j] = assign_[plan_.edge_depths[e][j]];
            if (table_.lookup(tuple.data()) < 0) return false;
        }
        return true;
    }

    // Calls leaf() for every homomorphism extending assign_[0..depth).
    template <class Leaf>
    void run(std::size_t depth, Leaf& leaf) {
        for (Vertex v = 0; v < n_; ++v) {
            assign_[depth] = v;
            if (!accept(depth)) continue;
            if (depth + 1 == assign_.size())
                leaf(assign_);
            else
                run(depth + 1, leaf);
        }
    }

    // Number of homomorphisms extending assign_[0..depth).
    void count(std::size_t depth, std::uint64_t& small, BigInt& big) {
        const bool last = depth + 1 == assign_.size();
        for (Vertex v = 0; v < n_; ++v) {
            assign_[depth] = v;
            if (!accept(depth)) continue;
            if (last) {
                if (++small == (std::uint64_t{1} << 62)) {
                    big += small;
                    small = 0;
                }
            } else {
                count(depth + 1, small, big);
            }
        }
    }

    std::vector<Vertex>& assignment() { return assign_; }

private:
    const SearchPlan& plan_;
    const EdgeTable& table_;
    std::size_t n_;
    std::vector<Vertex> assign_;
};

void require_same_arity(const UniformHypergraph& a, const UniformHypergraph& b) {
    if (a.arity() != b.arity())
        throw InvalidInput("arity mismatch: " + std::to_string(a.arity()) + " vs " +
                           std::to_string(b.arity()));
}

}  // namespace

HomCount hom_count(const UniformHypergraph& kg, const UniformHypergraph& hg) {
    require_same_arity(kg, hg);
    const std::size_t n = hg.n_vertices();
    HomCount result{0, big_pow(n, kg.n_vertices())};
    const SearchPlan plan(kg);
    if (plan.order.empty()) {
        result.count = result.domain_size;
        return result;
    }
    const EdgeTable table(hg);
    std::vector<BigInt> partial(n);
    parallel_for(n, [&](std::size_t first) {
        Search search(plan, table, n);
        search.assignment()[0] = static_cast<Vertex>(first);
        if (!search.accept(0)) return;
        if (plan.order.size() == 1) {
            partial[first] = 1;
            return;
        }
        std::uint64_t small = 0;
        BigInt big = 0;
        search.count(1, small, big);
        partial[first] = big + small;
    });
    BigInt total = 0;
    for (const auto& p : partial) total += p;
    result.count = total * big_pow(n, plan.isolated);
    return result;
}

Rational hom_density(const UniformHypergraph& kg, const UniformHypergraph& hg) {
    require_same_arity(kg, hg);
    if (hg.n_vertices() == 0) throw InvalidInput("hom density undefined: H has no vertices");
    const HomCount c = hom_count(kg, hg);
    return Rational(c.count, c.domain_size);
}

HomImageSet enumerate_hom_images(const UniformHypergraph& kg, const UniformHypergraph& hg,
                                 std::size_t cap) {
    require_same_arity(kg, hg);
    if (kg.edge_count() == 0) throw InvalidInput("image enumeration needs K with at least one edge");
    const std::size_t n = hg.n_vertices();
    const SearchPlan plan(kg);
    const EdgeTable table(hg);
    using Image = std::vector<std::size_t>;
    const std::size_t keep = cap == std::numeric_limits<std::size_t>::max() ? cap : cap + 1;

    std::vector<std::set<Image>> partial(n);
    parallel_for(n, [&](std::size_t first) {
        Search search(plan, table, n);
        auto& found = partial[first];
        Image image;
        std::array<Vertex, max_arity> tuple{};
        auto leaf = [&](const std::vector<Vertex>& assign) {
            image.clear();
            for (std::size_t e = 0; e < kg.edge_count(); ++e) {
                for (int j = 0; j < kg.arity(); ++j) tuple[j] = assign[plan.edge_depths[e][j]];
                image.push_back(static_cast<std::size_t>(table.lookup(tuple.data())));
            }
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            if (found.size() >= keep && !(image < *found.rbegin())) return;
            found.insert(image);
            if (found.size() > keep) found.erase(std::prev(found.end()));
        };
        search.assignment()[0] = static_cast<Vertex>(first);
        if (!search.accept(0)) return;
        if (plan.order.size() == 1)
            leaf(search.assignment());
        else
            search.run(1, leaf);
    });

    std::set<Image> merged;
    for (auto& p : partial) merged.merge(p);
    HomImageSet result;
    result.truncated = merged.size() > cap;
    for (auto& img : merged) {
        if (result.images.size() == cap) break;
        result.images.push_back(img);
    }
    return result;
}

UniformHypergraph disjoint_union(const UniformHypergraph& a, const UniformHypergraph& b) {
    require_same_arity(a, b);
    auto edges = a.edge_list();
    const auto offset = static_cast<Vertex>(a.n_vertices());
    for (auto e : b.edge_list()) {
        for (auto& v : e) v += offset;
        edges.push_back(std::move(e));
    }
    return UniformHypergraph(a.arity(), a.n_vertices() + b.n_vertices(), edges);
}

}  // namespace hyperlim
