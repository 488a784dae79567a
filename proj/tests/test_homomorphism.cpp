#include <doctest.h>

#include "support.hpp"

using namespace hyperlim;
using namespace hyperlim::testing;

namespace {

std::vector<UniformHypergraph> all_graphs(int k, std::size_t n) {
    std::vector<std::vector<Vertex>> subsets;
    for_each_subset(n, k, [&](std::span<const Vertex> s) { subsets.emplace_back(s.begin(), s.end()); });
    std::vector<UniformHypergraph> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << subsets.size()); ++m) {
        std::vector<std::vector<Vertex>> edges;
        for (std::size_t i = 0; i < subsets.size(); ++i)
            if (m >> i & 1) edges.push_back(subsets[i]);
        out.emplace_back(k, n, edges);
    }
    return out;
}

}  // namespace

TEST_CASE("hom count examples") {
    const auto edge2 = graph_from(2, 2, {{0, 1}});
    const auto tri = complete_hypergraph(2, 3);
    CHECK(hom_count(edge2, tri).count == 6);
    CHECK(hom_density(edge2, tri) == Rational(2, 3));
    CHECK(hom_count(UniformHypergraph(2, 3), UniformHypergraph(2, 5)).count == 125);
    CHECK(hom_density(UniformHypergraph(2, 3), tri) == 1);
    const auto triple = graph_from(3, 3, {{0, 1, 2}});
    CHECK(hom_count(triple, complete_hypergraph(3, 4)).count == 24);
    CHECK(hom_density(triple, complete_hypergraph(3, 4)) == Rational(3, 8));
    CHECK_THROWS_AS(hom_count(edge2, complete_hypergraph(3, 4)), InvalidInput);
    CHECK_THROWS_AS(hom_density(edge2, UniformHypergraph(2, 0)), InvalidInput);
}

TEST_CASE("hom count matches brute force on small graphs") {
    std::mt19937_64 rng(2024);
    for (int k = 2; k <= 3; ++k)
        for (std::size_t kn = k; kn <= 4; ++kn)
            for (int trial = 0; trial < 25; ++trial) {
                const auto kg = random_hypergraph(rng, k, kn, 0.5);
                const auto hg = random_hypergraph(rng, k, 2 + trial % 4, 0.6);
                const auto hc = hom_count(kg, hg);
                REQUIRE(hc.count == brute_hom_count(kg, hg));
                CHECK(hc.domain_size == big_pow(hg.n_vertices(), kg.n_vertices()));
            }
}

TEST_CASE("multiplicativity under disjoint union") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const int k = 2 + trial % 2;
        const auto a = random_hypergraph(rng, k, 3 + trial % 2, 0.5);
        const auto b = random_hypergraph(rng, k, 3, 0.5);
        const auto h = random_hypergraph(rng, k, 5, 0.6);
        CHECK(hom_density(disjoint_union(a, b), h) == hom_density(a, h) * hom_density(b, h));
    }
    const auto e = graph_from(2, 2, {{0, 1}});
    const auto u = disjoint_union(e, e);
    CHECK(u.n_vertices() == 4);
    CHECK(u.edge_count() == 2);
    const auto tri = complete_hypergraph(2, 3);
    CHECK(disjoint_union(tri, tri).edge_count() == 6);
    CHECK(disjoint_union(tri, UniformHypergraph(2, 2)).edge_list() == tri.edge_list());
}

TEST_CASE("relabeling and monotonicity") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const int k = 2 + trial % 2;
        const auto kg = random_hypergraph(rng, k, 4, 0.5);
        auto hg = random_hypergraph(rng, k, 6, 0.4);
        const auto base = hom_count(kg, hg).count;

        std::vector<Vertex> pk(kg.n_vertices()), ph(hg.n_vertices());
        std::iota(pk.begin(), pk.end(), Vertex{0});
        std::iota(ph.begin(), ph.end(), Vertex{0});
        std::shuffle(pk.begin(), pk.end(), rng);
        std::shuffle(ph.begin(), ph.end(), rng);
        CHECK(hom_count(relabel(kg, pk), relabel(hg, ph)).count == base);

        std::vector<std::vector<Vertex>> missing;
        for_each_subset(hg.n_vertices(), k, [&](std::span<const Vertex> s) {
            if (!hg.contains(s)) missing.emplace_back(s.begin(), s.end());
        });
        if (missing.empty()) continue;
        auto edges = hg.edge_list();
        edges.push_back(missing[trial % missing.size()]);
        CHECK(hom_count(kg, UniformHypergraph(k, hg.n_vertices(), edges)).count >= base);
    }
}

TEST_CASE("single edge into the complete hypergraph gives the falling factorial") {
    for (int k = 1; k <= 3; ++k)
        for (std::size_t n = k; n <= 8; ++n) {
            std::vector<Vertex> e(k);
            std::iota(e.begin(), e.end(), Vertex{0});
            const auto single = graph_from(k, k, {e});
            BigInt falling = 1;
            for (int i = 0; i < k; ++i) falling *= BigInt(n - i);
            const Rational expected(falling, big_pow(n, k));
            CHECK(hom_density(single, complete_hypergraph(k, n)) == expected);
            if (n <= 6) CHECK(hom_count(single, complete_hypergraph(k, n)).count == brute_hom_count(single, complete_hypergraph(k, n)));
        }
}

TEST_CASE("exhaustive tiny k=2 battery") {
    const auto hs = all_graphs(2, 4);
    for (std::size_t kn = 1; kn <= 3; ++kn)
        for (const auto& kg : all_graphs(2, kn))
            for (const auto& hg : hs) REQUIRE(hom_count(kg, hg).count == brute_hom_count(kg, hg));
}

TEST_CASE("hom image examples") {
    const auto path = graph_from(2, 3, {{0, 1}, {1, 2}});
    const auto two = graph_from(2, 4, {{0, 1}, {2, 3}});
    const auto imgs = enumerate_hom_images(two, path);
    CHECK_FALSE(imgs.truncated);
    // edge 0 = {0,1}, edge 1 = {1,2}
    CHECK(imgs.images == std::vector<std::vector<std::size_t>>{{0}, {0, 1}, {1}});

    CHECK(enumerate_hom_images(complete_hypergraph(2, 3), path).images.empty());

    const auto h = complete_hypergraph(3, 5);
    const auto single = enumerate_hom_images(graph_from(3, 3, {{0, 1, 2}}), h);
    CHECK(single.images.size() == h.edge_count());

    CHECK_THROWS_AS(enumerate_hom_images(UniformHypergraph(2, 2), path), InvalidInput);
}

TEST_CASE("hom images agree with brute force and honour the cap") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 2 + trial % 2;
        auto kg = random_hypergraph(rng, k, k + 1, 0.6);
        if (kg.edge_count() == 0) continue;
        const auto hg = random_hypergraph(rng, k, 5, 0.5);
        const auto got = enumerate_hom_images(kg, hg);
        const auto want = brute_hom_images(kg, hg);
        REQUIRE(got.images.size() == want.size());
        std::set<std::set<std::vector<Vertex>>> as_sets;
        for (const auto& img : got.images) {
            std::set<std::vector<Vertex>> s;
            for (const auto e : img) {
                const auto span = hg.edge(e);
                s.emplace(span.begin(), span.end());
            }
            as_sets.insert(s);
        }
        CHECK(as_sets == want);
        CHECK(got.images.empty() == (hom_count(kg, hg).count == 0));
        if (got.images.size() > 2) {
            const auto capped = enumerate_hom_images(kg, hg, 2);
            CHECK(capped.truncated);
            CHECK(capped.images.size() == 2);
            CHECK(capped.images[0] == got.images[0]);
            CHECK(capped.images[1] == got.images[1]);
        }
    }
}

TEST_CASE("hom count does not depend on the thread count") {
    std::mt19937_64 rng(77);
    const auto kg = random_hypergraph(rng, 3, 5, 0.5);
    const auto hg = random_hypergraph(rng, 3, 14, 0.5);
    const auto before = thread_count();
    set_thread_count(1);
    const auto one = hom_count(kg, hg).count;
    const auto img1 = enumerate_hom_images(kg, hg, 500);
    set_thread_count(4);
    CHECK(hom_count(kg, hg).count == one);
    const auto img4 = enumerate_hom_images(kg, hg, 500);
    CHECK(img4.images == img1.images);
    CHECK(img4.truncated == img1.truncated);
    set_thread_count(0);
    (void)before;
}
