#include "hyperlim/removal.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace hyperlim {

namespace {

EdgeSet greedy_cover(const std::vector<std::vector<std::size_t>>& images) {
    std::map<std::size_t, std::vector<std::size_t>> containing;  // edge -> images
    for (std::size_t i = 0; i < images.size(); ++i)
        for (const std::size_t e : images[i]) containing[e].push_back(i);
    std::vector<bool> hit(images.size(), false);
    std::size_t remaining = images.size();
    EdgeSet chosen;
    while (remaining > 0) {
        std::size_t best_edge = 0, best_gain = 0;
        for (const auto& [edge, owners] : containing) {
            std::size_t gain = 0;
            for (const std::size_t i : owners) gain += !hit[i];
            if (gain > best_gain) {
                best_gain = gain;
                best_edge = edge;
            }
        }
        chosen.push_back(best_edge);
        for (const std::size_t i : containing[best_edge]) {
            if (!hit[i]) --remaining;
            hit[i] = true;
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

using Bits = std::vector<std::uint64_t>;

bool intersects(const Bits& a, const Bits& b) {
    for (std::size_t w = 0; w < a.size(); ++w)
        if (a[w] & b[w]) return true;
    return false;
}

class BranchAndBound {
public:
    BranchAndBound(std::vector<Bits> images, std::size_t width, std::uint64_t max_nodes)
        : images_(std::move(images)), words_(width), max_nodes_(max_nodes) {}

    // Returns false when the node budget ran out.
    bool solve(std::vector<std::size_t> initial_best) {
        best_ = std::move(initial_best);
        std::vector<std::size_t> open(images_.size());
        for (std::size_t i = 0; i < open.size(); ++i) open[i] = i;
        std::vector<std::size_t> chosen;
        Bits forbidden(words_, 0);
        return search(open, chosen, forbidden);
    }

    const std::vector<std::size_t>& best() const { return best_; }

private:
    std::size_t popcount_allowed(const Bits& img, const Bits& forbidden) const {
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_; ++w) c += std::popcount(img[w] & ~forbidden[w]);
        return c;
    }

    std::size_t packing_bound(const std::vector<std::size_t>& open) const {
        Bits used(words_, 0);
        std::size_t count = 0;
        for (const std::size_t i : open) {
            if (intersects(images_[i], used)) continue;
            for (std::size_t w = 0; w < words_; ++w) used[w] |= images_[i][w];
            ++count;
        }
        return count;
    }

    bool search(const std::vector<std::size_t>& open, std::vector<std::size_t>& chosen, Bits& forbidden) {
        if (++nodes_ > max_nodes_) return false;
        if (open.empty()) {
            if (chosen.size() < best_.size()) best_ = chosen;
            return true;
        }
        if (chosen.size() + packing_bound(open) >= best_.size()) return true;

        std::size_t pivot = open.front();
        std::size_t pivot_size = popcount_allowed(images_[pivot], forbidden);
        for (const std::size_t i : open) {
            const std::size_t s = popcount_allowed(images_[i], forbidden);
            if (s < pivot_size) {
                pivot = i;
                pivot_size = s;
            }
        }
        if (pivot_size == 0) return true;

        std::vector<std::size_t> tried;
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = images_[pivot][w] & ~forbidden[w];
            while (bits) {
                const auto b = static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                const std::size_t edge = w * 64 + b;
                std::vector<std::size_t> rest;
                for (const std::size_t i : open)
                    if (!(images_[i][edge / 64] >> (edge % 64) & 1)) rest.push_back(i);
                chosen.push_back(edge);
                const bool ok = search(rest, chosen, forbidden);
                chosen.pop_back();
                if (!ok) {
                    for (const std::size_t t : tried) forbidden[t / 64] &= ~(std::uint64_t{1} << (t % 64));
                    return false;
                }
                // Later branches at this node exclude this edge.
                forbidden[w] |= std::uint64_t{1} << b;
                tried.push_back(edge);
            }
        }
        for (const std::size_t t : tried) forbidden[t / 64] &= ~(std::uint64_t{1} << (t % 64));
        return true;
    }

    std::vector<Bits> images_;
    std::size_t words_;
    std::uint64_t max_nodes_;
    std::uint64_t nodes_ = 0;
    std::vector<std::size_t> best_;
};

}  // namespace

EdgeSet greedy_hitting_set(const HomImageSet& images) {
    if (images.truncated) throw InvalidInput("greedy hitting set needs a complete image set");
    return greedy_cover(images.images);
}

HittingSetResult exact_hitting_set(const HomImageSet& images, HittingBudget budget) {
    const EdgeSet greedy = greedy_hitting_set(images);
    std::vector<std::size_t> candidates;
    for (const auto& img : images.images) candidates.insert(candidates.end(), img.begin(), img.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.size() > budget.max_candidate_edges) return {greedy, false};

    const std::size_t words = (candidates.size() + 63) / 64;
    auto local = [&](std::size_t edge) {
        return static_cast<std::size_t>(std::lower_bound(candidates.begin(), candidates.end(), edge) -
                                        candidates.begin());
    };
    std::vector<Bits> bits;
    bits.reserve(images.images.size());
    for (const auto& img : images.images) {
        Bits b(words, 0);
        for (const std::size_t e : img) {
            const std::size_t i = local(e);
            b[i / 64] |= std::uint64_t{1} << (i % 64);
        }
        bits.push_back(std::move(b));
    }
    std::vector<std::size_t> initial;
    for (const std::size_t e : greedy) initial.push_back(local(e));

    BranchAndBound solver(std::move(bits), words, budget.max_nodes);
    if (!solver.solve(initial)) return {greedy, false};
    EdgeSet out;
    for (const std::size_t i : solver.best()) out.push_back(candidates[i]);
    std::sort(out.begin(), out.end());
    return {out, true};
}

std::string to_string(RemovalMethod m) { return m == RemovalMethod::exact ? "exact" : "greedy"; }

RemovalMethod parse_removal_method(const std::string& name) {
    if (name == "exact") return RemovalMethod::exact;
    if (name == "greedy") return RemovalMethod::greedy;
    throw InvalidInput("unknown removal mode '" + name + "' (expected exact or greedy)");
}

RemovalResult removal_experiment(const UniformHypergraph& kg, const UniformHypergraph& hg, RemovalMethod method,
                                 std::size_t image_cap, HittingBudget budget) {
    const HomImageSet images = enumerate_hom_images(kg, hg, image_cap);
    RemovalResult result;
    result.edges_before = hg.edge_count();
    result.images = images.images.size();
    result.truncated = images.truncated;
    result.method = method;
    if (images.truncated) {
        result.removed = greedy_cover(images.images);
        result.method = RemovalMethod::greedy;
    } else if (method == RemovalMethod::exact) {
        auto hs = exact_hitting_set(images, budget);
        result.removed = std::move(hs.edges);
        result.optimal = hs.optimal;
    } else {
        result.removed = greedy_hitting_set(images);
    }
    const std::uint64_t total = hg.n_vertices() >= static_cast<std::size_t>(hg.arity())
                                    ? binomial(hg.n_vertices(), hg.arity())
                                    : 0;
    result.removed_fraction = total == 0 ? Rational(0) : Rational(BigInt(result.removed.size()), BigInt(total));
    result.residual_density = hom_density(kg, hg.without_edges(result.removed));
    result.verified = !result.truncated && result.residual_density == 0;
    return result;
}

}  // namespace hyperlim
