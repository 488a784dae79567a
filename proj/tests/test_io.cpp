#include <doctest.h>

#include "support.hpp"

using namespace hyperlim;

TEST_CASE("HG parsing") {
    const auto tri = parse_hypergraph("HG 2 3 3\n0 1\n0 2\n1 2\n");
    CHECK(tri == complete_hypergraph(2, 3));
    const auto one = parse_hypergraph("# a comment\nHG 3 4 1\n0 1 2\n");
    CHECK(one.n_vertices() == 4);
    CHECK(one.edge_count() == 1);
}

TEST_CASE("HG parse errors carry line numbers") {
    auto line_of = [](std::string_view text) -> std::size_t {
        try {
            parse_hypergraph(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("HG 2 3 1\n0 3\n") == 2);        // vertex out of range
    CHECK(line_of("HG 2 3 1\n1 1\n") == 2);        // repeated vertex
    CHECK(line_of("HG 2 3 2\n0 1\n#x\n0 1\n") == 4);  // duplicate edge
    CHECK(line_of("HG 2 3\n") == 1);               // malformed header
    CHECK(line_of("HX 2 3 0\n") == 1);
    CHECK(line_of("HG 2 3 1\n1 0\n") == 2);        // not increasing
    CHECK(line_of("HG 2 3 2\n0 1\n") == 3);        // missing edge line
    CHECK(line_of("HG 2 3 0\n0 1\n") == 2);        // trailing content
    CHECK(line_of("HG 9 3 0\n") == 1);             // arity cap
}

TEST_CASE("HG serialization round trip is bit exact") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 1 + trial % 4;
        const auto h = hyperlim::testing::random_hypergraph(rng, k, 4 + trial % 5, 0.4);
        const auto text = serialize_hypergraph(h);
        CHECK(parse_hypergraph(text) == h);
        CHECK(serialize_hypergraph(parse_hypergraph(text)) == text);
    }
    CHECK(serialize_hypergraph(complete_hypergraph(2, 3)) == "HG 2 3 3\n0 1\n0 2\n1 2\n");
}

TEST_CASE("HGON parsing and round trip") {
    const auto w = parse_hypergraphon("HGON 2 2 ind 2\n0 0 0 1\n0 1 0 1\n");
    CHECK(w.kind() == ValueKind::indicator);
    const std::vector<BoxIndex> swapped{1, 0, 0};
    CHECK(w.box_value(swapped) == 1.0);
    CHECK(serialize_hypergraphon(w) == "HGON 2 2 ind 2\n0 0 0 1\n0 1 0 1\n");

    std::mt19937_64 rng(5);
    const auto p = hyperlim::testing::random_hypergraphon(rng, 3, 2, ValueKind::projected);
    const auto text = serialize_hypergraphon(p);
    const auto back = parse_hypergraphon(text);
    CHECK(back.entries() == p.entries());
    CHECK(serialize_hypergraphon(back) == text);

    CHECK_THROWS_AS(parse_hypergraphon("HGON 2 2 ind 1\n1 0 0 1\n"), ParseError);     // not canonical
    CHECK_THROWS_AS(parse_hypergraphon("HGON 2 2 ind 2\n0 1 0 1\n0 1 0 1\n"), ParseError);  // duplicate
    CHECK_THROWS_AS(parse_hypergraphon("HGON 2 2 ind 1\n0 0 0 0.5\n"), ParseError);
    CHECK_THROWS_AS(parse_hypergraphon("HGON 2 2 proj 1\n0 0 0 1.5\n"), ParseError);
    CHECK_THROWS_AS(parse_hypergraphon("HGON 2 2 bad 0\n"), ParseError);
}

TEST_CASE("HP and LAT round trips") {
    const auto p = random_hyperpartition(3, 6, 3, 99);
    const auto text = serialize_hyperpartition(p);
    CHECK(parse_hyperpartition(text) == p);
    CHECK_THROWS_AS(parse_hyperpartition("HP 2 3 2\nLEVEL 1\n0 0\n2 1\n1 0\nLEVEL 2\n0 1 0\n0 2 0\n1 2 0\n"),
                    ParseError);

    const auto w = constant_hypergraphon(3, 1.0);
    const auto sample = sample_w_random(w, 7, 1234);
    const auto lat = serialize_latent_sample(sample);
    const auto back = parse_latent_sample(lat);
    CHECK(back == sample);
    CHECK(serialize_latent_sample(back) == lat);
    CHECK_THROWS_AS(parse_latent_sample("LAT 1 2 5\n0 00000000000000ff\n1 zz\nHG 1 2 0\n"), ParseError);
}
