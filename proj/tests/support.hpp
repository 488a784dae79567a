#pragma once

// Brute-force oracles and random generators shared by the test binaries.
// The oracles deliberately avoid the library's search and summation code.

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "hyperlim/hyperlim.hpp"

namespace hyperlim::testing {

using EdgeSetOracle = std::set<std::vector<Vertex>>;

inline EdgeSetOracle edge_set(const UniformHypergraph& h) {
    EdgeSetOracle out;
    for (auto e : h.edge_list()) out.insert(std::move(e));
    return out;
}

// Calls fn(map) for every map {0..domain-1} -> {0..range-1}.
inline void for_each_map(std::size_t domain, std::size_t range,
                         const std::function<void(const std::vector<Vertex>&)>& fn) {
    std::vector<Vertex> f(domain, 0);
    if (range == 0) {
        if (domain == 0) fn(f);
        return;
    }
    for (;;) {
        fn(f);
        std::size_t i = 0;
        while (i < domain && ++f[i] == range) f[i++] = 0;
        if (i == domain) return;
    }
}

inline std::vector<Vertex> image_of(const std::vector<Vertex>& edge, const std::vector<Vertex>& f) {
    std::vector<Vertex> img;
    for (const Vertex v : edge) img.push_back(f[v]);
    std::sort(img.begin(), img.end());
    return img;
}

inline bool is_hom(const std::vector<std::vector<Vertex>>& k_edges, const EdgeSetOracle& h_edges,
                   const std::vector<Vertex>& f) {
    for (const auto& e : k_edges) {
        auto img = image_of(e, f);
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
        if (!h_edges.count(img)) return false;
    }
    return true;
}

// Enumerates all |V(H)|^|V(K)| maps.
inline std::uint64_t brute_hom_count(const UniformHypergraph& kg, const UniformHypergraph& hg) {
    const auto k_edges = kg.edge_list();
    const auto h_edges = edge_set(hg);
    std::uint64_t count = 0;
    for_each_map(kg.n_vertices(), hg.n_vertices(), [&](const std::vector<Vertex>& f) {
        count += is_hom(k_edges, h_edges, f);
    });
    return count;
}

// Distinct edge-images over all maps, as sets of H-edges.
inline std::set<std::set<std::vector<Vertex>>> brute_hom_images(const UniformHypergraph& kg,
                                                                const UniformHypergraph& hg) {
    const auto k_edges = kg.edge_list();
    const auto h_edges = edge_set(hg);
    std::set<std::set<std::vector<Vertex>>> out;
    for_each_map(kg.n_vertices(), hg.n_vertices(), [&](const std::vector<Vertex>& f) {
        if (!is_hom(k_edges, h_edges, f)) return;
        std::set<std::vector<Vertex>> img;
        for (const auto& e : k_edges) img.insert(image_of(e, f));
        out.insert(img);
    });
    return out;
}

// Density integral by direct enumeration: faces of K are recomputed here,
// W is evaluated through eval() at box midpoints, and the sum is a plain
// long double accumulation over every assignment.
inline double brute_density(const UniformHypergraph& kg, const StepHypergraphon& w) {
    const int k = kg.arity();
    const int l = w.resolution();
    std::vector<std::uint8_t> masks;  // nonempty subsets of [k] by size, then lex
    for (int size = 1; size <= k; ++size) {
        std::vector<std::vector<int>> subsets;
        for (unsigned m = 1; m < (1u << k); ++m) {
            if (std::popcount(m) != size) continue;
            std::vector<int> el;
            for (int j = 0; j < k; ++j)
                if (m & (1u << j)) el.push_back(j);
            subsets.push_back(el);
        }
        std::sort(subsets.begin(), subsets.end());
        for (const auto& s : subsets) {
            std::uint8_t m = 0;
            for (const int j : s) m |= static_cast<std::uint8_t>(1u << j);
            masks.push_back(m);
        }
    }
    std::set<std::vector<Vertex>> face_set;
    const auto edges = kg.edge_list();
    for (const auto& e : edges)
        for (const auto m : masks) {
            std::vector<Vertex> f;
            for (int j = 0; j < k; ++j)
                if (m & (1u << j)) f.push_back(e[j]);
            face_set.insert(f);
        }
    const std::vector<std::vector<Vertex>> faces(face_set.begin(), face_set.end());
    auto face_index = [&](const std::vector<Vertex>& f) {
        return static_cast<std::size_t>(std::lower_bound(faces.begin(), faces.end(), f) - faces.begin());
    };
    std::vector<std::vector<std::size_t>> coords;
    for (const auto& e : edges) {
        std::vector<std::size_t> row;
        for (const auto m : masks) {
            std::vector<Vertex> f;
            for (int j = 0; j < k; ++j)
                if (m & (1u << j)) f.push_back(e[j]);
            row.push_back(face_index(f));
        }
        coords.push_back(row);
    }
    long double total = 0;
    std::uint64_t terms = 0;
    for_each_map(faces.size(), static_cast<std::size_t>(l), [&](const std::vector<Vertex>& box) {
        long double prod = 1;
        for (const auto& row : coords) {
            std::vector<double> point;
            for (const auto c : row) point.push_back((box[c] + 0.5) / l);
            prod *= w.eval(point);
        }
        total += prod;
        ++terms;
    });
    return static_cast<double>(total / terms);
}

inline UniformHypergraph random_hypergraph(std::mt19937_64& rng, int k, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<std::vector<Vertex>> edges;
    for_each_subset(n, k, [&](std::span<const Vertex> s) {
        if (coin(rng)) edges.emplace_back(s.begin(), s.end());
    });
    return UniformHypergraph(k, n, edges);
}

inline UniformHypergraph relabel(const UniformHypergraph& h, const std::vector<Vertex>& perm) {
    auto edges = h.edge_list();
    for (auto& e : edges)
        for (auto& v : e) v = perm[v];
    return UniformHypergraph(h.arity(), h.n_vertices(), edges);
}

// Random indicator hypergraphon built from a random value per canonical box.
inline StepHypergraphon random_hypergraphon(std::mt19937_64& rng, int k, int l, ValueKind kind) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    return StepHypergraphon::from_function(k, l, kind, [&](std::span<const BoxIndex>) {
        const double u = unif(rng);
        return kind == ValueKind::indicator ? (u < 0.5 ? 1.0 : 0.0) : u;
    });
}

// Minimum hitting set by trying every subset of the candidate edges in
// order of size.
inline std::size_t brute_min_hitting_set(const std::vector<std::vector<std::size_t>>& images) {
    std::vector<std::size_t> cand;
    for (const auto& img : images) cand.insert(cand.end(), img.begin(), img.end());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::size_t best = cand.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cand.size()); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size >= best) continue;
        bool all = true;
        for (const auto& img : images) {
            bool hit = false;
            for (const auto e : img) {
                const auto pos = std::lower_bound(cand.begin(), cand.end(), e) - cand.begin();
                if (mask >> pos & 1) hit = true;
            }
            if (!hit) {
                all = false;
                break;
            }
        }
        if (all) best = size;
    }
    return best;
}

inline UniformHypergraph graph_from(int k, std::size_t n, std::vector<std::vector<Vertex>> edges) {
    return UniformHypergraph(k, n, edges);
}

}  // namespace hyperlim::testing
