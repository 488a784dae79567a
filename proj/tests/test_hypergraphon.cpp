#include <doctest.h>

#include "support.hpp"

using namespace hyperlim;
using namespace hyperlim::testing;

namespace {

// k=2, l=2: W = 1 iff the pair coordinate lies in box 0.
StepHypergraphon pair_low() {
    return StepHypergraphon::from_function(2, 2, ValueKind::indicator,
                                           [](std::span<const BoxIndex> b) { return b[2] == 0 ? 1.0 : 0.0; });
}

std::vector<UniformHypergraph> small_ks(int k) {
    std::vector<UniformHypergraph> out;
    if (k == 2) {
        out.push_back(graph_from(2, 2, {{0, 1}}));
        out.push_back(graph_from(2, 3, {{0, 1}, {1, 2}}));
        out.push_back(complete_hypergraph(2, 3));
        out.push_back(graph_from(2, 4, {{0, 1}, {2, 3}}));
    } else {
        out.push_back(graph_from(3, 3, {{0, 1, 2}}));
        out.push_back(graph_from(3, 4, {{0, 1, 2}, {0, 1, 3}}));
        out.push_back(graph_from(3, 4, {{0, 1, 2}, {1, 2, 3}}));
    }
    return out;
}

}  // namespace

TEST_CASE("eval examples") {
    const auto c = constant_hypergraphon(2, 0.5);
    const std::vector<double> pt{0.1, 0.9, 0.4};
    CHECK(c.eval(pt) == 0.5);
    const auto w = pair_low();
    const std::vector<double> low{0.2, 0.8, 0.3}, high{0.2, 0.8, 0.7};
    CHECK(w.eval(low) == 1.0);
    CHECK(w.eval(high) == 0.0);
    const std::vector<double> bad{0.2, 1.0, 0.3}, shortpt{0.1};
    CHECK_THROWS_AS(w.eval(bad), InvalidInput);
    CHECK_THROWS_AS(w.eval(shortpt), InvalidInput);
}

TEST_CASE("eval is invariant under the coordinate action") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 2; k <= 3; ++k) {
        const auto& idx = SubsetIndexing::of(k);
        const auto w = random_hypergraphon(rng, k, 3, ValueKind::projected);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> x(idx.size());
            for (auto& v : x) v = unif(rng);
            const double base = w.eval(x);
            for (std::size_t p = 0; p < idx.permutation_count(); ++p)
                REQUIRE(w.eval(idx.act<double>(p, x)) == base);
        }
    }
}

TEST_CASE("constant hypergraphons") {
    CHECK(constant_hypergraphon(2, 1.0).kind() == ValueKind::indicator);
    CHECK(constant_hypergraphon(3, 0.0).entries().empty());
    CHECK(constant_hypergraphon(2, 0.5).kind() == ValueKind::projected);
    CHECK_THROWS_AS(constant_hypergraphon(2, 1.5), InvalidInput);
    for (const double p : {0.0, 0.25, 0.5, 0.75, 1.0})
        for (int k = 2; k <= 3; ++k)
            for (const auto& kg : small_ks(k))
                CHECK(std::abs(exact_density(kg, constant_hypergraphon(k, p)) -
                               std::pow(p, static_cast<double>(kg.edge_count()))) < 1e-12);
}

TEST_CASE("exact density examples") {
    const auto tri = complete_hypergraph(2, 3);
    CHECK(std::abs(exact_density(tri, constant_hypergraphon(2, 0.5)) - 0.125) < 1e-15);
    CHECK(std::abs(exact_density(tri, pair_low()) - 0.125) < 1e-15);
    CHECK(exact_density(UniformHypergraph(2, 3), pair_low()) == 1.0);
    CHECK_THROWS_AS(exact_density(graph_from(3, 3, {{0, 1, 2}}), pair_low()), InvalidInput);
    ExactBudget tiny;
    tiny.max_terms = 32;
    CHECK_THROWS_AS(exact_density(tri, pair_low(), tiny), BudgetExceeded);
}

TEST_CASE("exact density matches the brute oracle") {
    std::mt19937_64 rng(41);
    for (int k = 2; k <= 3; ++k)
        for (int trial = 0; trial < 4; ++trial) {
            const auto w = random_hypergraphon(rng, k, 2, trial % 2 ? ValueKind::projected : ValueKind::indicator);
            for (const auto& kg : small_ks(k))
                CHECK(std::abs(exact_density(kg, w) - brute_density(kg, w)) < 1e-12);
        }
}

TEST_CASE("iterated sums, projection and bijections agree with the flat sum") {
    std::mt19937_64 rng(43);
    for (int k = 2; k <= 3; ++k)
        for (int trial = 0; trial < 3; ++trial) {
            const auto w = random_hypergraphon(rng, k, 2, ValueKind::indicator);
            const auto pw = project(w);
            CHECK(pw.kind() == ValueKind::projected);
            for (const auto& kg : small_ks(k)) {
                const double flat = exact_density(kg, w);
                const SimplicialSupport s(kg);
                std::vector<std::size_t> order(s.size());
                std::iota(order.begin(), order.end(), std::size_t{0});
                std::shuffle(order.begin(), order.end(), rng);
                CHECK(std::abs(exact_density_iterated(kg, w, order) - flat) < 1e-12);
                std::reverse(order.begin(), order.end());
                CHECK(std::abs(exact_density_iterated(kg, w, order) - flat) < 1e-12);
                CHECK(std::abs(exact_density(kg, pw) - flat) < 1e-12);

                std::vector<std::vector<int>> bij(kg.edge_count(), std::vector<int>(k));
                for (auto& b : bij) {
                    std::iota(b.begin(), b.end(), 0);
                    std::shuffle(b.begin(), b.end(), rng);
                }
                CHECK(std::abs(exact_density_with_bijections(kg, w, bij) - flat) < 1e-12);
            }
        }
}

TEST_CASE("projection of simple hypergraphons") {
    const auto top_half = StepHypergraphon::from_function(
        2, 2, ValueKind::indicator, [](std::span<const BoxIndex> b) { return b[2] == 1 ? 1.0 : 0.0; });
    const auto p = project(top_half);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const std::vector<double> x{unif(rng), unif(rng), unif(rng)};
        CHECK(p.eval(x) == 0.5);
        CHECK(project(constant_hypergraphon(2, 0.25)).eval(x) == 0.25);
    }
}

TEST_CASE("Monte Carlo density") {
    const auto tri = complete_hypergraph(2, 3);
    const auto half = constant_hypergraphon(2, 0.5);
    const auto est = mc_density(tri, half, 100000, 5);
    CHECK(std::abs(est.estimate - 0.125) <= 3 * est.standard_error);
    CHECK(est.n_samples == 100000);
    const auto again = mc_density(tri, half, 100000, 5);
    CHECK(again.estimate == est.estimate);
    CHECK(again.standard_error == est.standard_error);

    std::mt19937_64 rng(47);
    int within = 0, total = 0;
    for (int k = 2; k <= 3; ++k) {
        const auto w = random_hypergraphon(rng, k, 2, ValueKind::indicator);
        for (const auto& kg : small_ks(k))
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                const auto e = mc_density(kg, w, 4000, seed);
                within += std::abs(e.estimate - exact_density(kg, w)) <= 4 * e.standard_error + 1e-15;
                ++total;
            }
    }
    CHECK(within >= total * 99 / 100);

    set_thread_count(1);
    const auto one = mc_density(tri, pair_low(), 20000, 99);
    set_thread_count(3);
    const auto three = mc_density(tri, pair_low(), 20000, 99);
    set_thread_count(0);
    CHECK(one.estimate == three.estimate);
    CHECK(one.standard_error == three.standard_error);
}

TEST_CASE("sampling") {
    CHECK(sample_w_random(constant_hypergraphon(3, 1.0), 7, 1).graph() == complete_hypergraph(3, 7));
    CHECK(sample_w_random(constant_hypergraphon(3, 0.0), 7, 1).graph().edge_count() == 0);
    CHECK_THROWS_AS(sample_w_random(constant_hypergraphon(2, 0.5), 5, 1), InvalidInput);
    CHECK_THROWS_AS(sample_w_random(constant_hypergraphon(3, 1.0), 2, 1), InvalidInput);

    const auto w = pair_low();
    const auto s = sample_w_random(w, 100, 12345);
    const double sigma = std::sqrt(0.25 / 4950.0);
    CHECK(std::abs(to_double(edge_density(s.graph())) - 0.5) <= 4 * sigma);

    // The latent invariant: edges are exactly where W is 1.
    for_each_subset(100, 2, [&](std::span<const Vertex> e) {
        const auto box = latent_box(s, e, 2);
        REQUIRE((w.box_value(box) == 1.0) == s.graph().contains(e));
    });

    CHECK(sample_w_random(w, 100, 12345) == s);
    set_thread_count(1);
    const auto one = sample_w_random(w, 60, 8);
    set_thread_count(4);
    CHECK(sample_w_random(w, 60, 8) == one);
    set_thread_count(0);
}

TEST_CASE("from_entries validation") {
    using E = std::vector<std::pair<BoxKey, double>>;
    CHECK_NOTHROW(StepHypergraphon::from_entries(2, 2, ValueKind::indicator, E{{{0, 1, 0}, 1.0}}));
    CHECK_THROWS_AS(StepHypergraphon::from_entries(2, 2, ValueKind::indicator, E{{{1, 0, 0}, 1.0}}), InvalidInput);
    CHECK_THROWS_AS(StepHypergraphon::from_entries(2, 2, ValueKind::indicator, E{{{0, 2, 0}, 1.0}}), InvalidInput);
    CHECK_THROWS_AS(StepHypergraphon::from_entries(2, 2, ValueKind::indicator, E{{{0, 1, 0}, 0.5}}), InvalidInput);
    CHECK_THROWS_AS(
        StepHypergraphon::from_entries(2, 2, ValueKind::projected, E{{{0, 1, 0}, 0.5}, {{0, 1, 0}, 0.5}}),
        InvalidInput);
    const auto w = StepHypergraphon::from_entries(2, 2, ValueKind::indicator, E{{{0, 1, 0}, 1.0}});
    const std::vector<BoxIndex> swapped{1, 0, 0};
    CHECK(w.box_value(swapped) == 1.0);
}
