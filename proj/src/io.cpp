#include "hyperlim/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hyperlim {

namespace {

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    // Next non-comment, non-blank line split on whitespace; false at end.
    bool next(std::vector<std::string_view>& tokens) {
        while (pos_ < text_.size()) {
            const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
            std::string_view line = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            tokens.clear();
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
                const std::size_t start = i;
                while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
                if (i > start) tokens.push_back(line.substr(start, i - start));
            }
            if (tokens.empty() || tokens.front().front() == '#') continue;
            return true;
        }
        return false;
    }

    std::vector<std::string_view> expect(const char* what) {
        std::vector<std::string_view> tokens;
        if (!next(tokens)) throw ParseError(line_no_ + 1, std::string("unexpected end of input, expected ") + what);
        return tokens;
    }

    void expect_end() {
        std::vector<std::string_view> tokens;
        if (next(tokens)) throw ParseError(line_no_, "trailing content");
    }

    std::size_t line() const noexcept { return line_no_; }

    template <class T>
    T integer(std::string_view token, const char* what) const {
        T value{};
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            throw ParseError(line_no_, std::string("malformed ") + what + " '" + std::string(token) + "'");
        return value;
    }

    double real(std::string_view token, const char* what) const {
        double value{};
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            throw ParseError(line_no_, std::string("malformed ") + what + " '" + std::string(token) + "'");
        return value;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
};

void expect_header(LineReader& in, const std::vector<std::string_view>& tokens, std::string_view tag,
                   std::size_t fields) {
    if (tokens.front() != tag || tokens.size() != fields + 1)
        throw ParseError(in.line(), "malformed header, expected '" + std::string(tag) + "' with " +
                                        std::to_string(fields) + " fields");
}

int parse_arity(LineReader& in, std::string_view token) {
    const int k = in.integer<int>(token, "arity");
    if (k < 1 || k > max_arity) throw ParseError(in.line(), "arity outside 1.." + std::to_string(max_arity));
    return k;
}

// Reads "HG k n m" and m edge lines.
UniformHypergraph read_hypergraph(LineReader& in) {
    auto header = in.expect("HG header");
    expect_header(in, header, "HG", 3);
    const int k = parse_arity(in, header[1]);
    const auto n = in.integer<std::size_t>(header[2], "vertex count");
    const auto m = in.integer<std::size_t>(header[3], "edge count");
    std::vector<std::vector<Vertex>> edges;
    edges.reserve(m);
    std::vector<std::size_t> lines;
    for (std::size_t e = 0; e < m; ++e) {
        const auto tokens = in.expect("edge line");
        if (tokens.size() != static_cast<std::size_t>(k))
            throw ParseError(in.line(), "edge has " + std::to_string(tokens.size()) + " vertices, expected " +
                                            std::to_string(k));
        std::vector<Vertex> edge;
        for (const auto t : tokens) {
            const auto v = in.integer<Vertex>(t, "vertex id");
            if (v >= n) throw ParseError(in.line(), "vertex " + std::to_string(v) + " out of range");
            for (const Vertex u : edge)
                if (u == v) throw ParseError(in.line(), "repeated vertex " + std::to_string(v) + " within edge");
            if (!edge.empty() && v < edge.back())
                throw ParseError(in.line(), "edge vertices must be strictly increasing");
            edge.push_back(v);
        }
        edges.push_back(std::move(edge));
        lines.push_back(in.line());
    }
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return edges[a] != edges[b] ? edges[a] < edges[b] : a < b;
    });
    for (std::size_t i = 1; i < m; ++i)
        if (edges[order[i]] == edges[order[i - 1]])
            throw ParseError(lines[std::max(order[i], order[i - 1])], "duplicate edge");
    return UniformHypergraph(k, n, edges);
}

void write_hypergraph(std::ostringstream& out, const UniformHypergraph& h) {
    out << "HG " << h.arity() << ' ' << h.n_vertices() << ' ' << h.edge_count() << '\n';
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        const auto edge = h.edge(e);
        for (std::size_t j = 0; j < edge.size(); ++j) out << (j ? " " : "") << edge[j];
        out << '\n';
    }
}

void check_subset_line(LineReader& in, const std::vector<std::string_view>& tokens,
                       const std::vector<Vertex>& expected) {
    for (std::size_t j = 0; j < expected.size(); ++j)
        if (in.integer<Vertex>(tokens[j], "vertex id") != expected[j])
            throw ParseError(in.line(), "subsets must appear in lexicographic order");
}

}  // namespace

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

UniformHypergraph parse_hypergraph(std::string_view text) {
    LineReader in(text);
    auto h = read_hypergraph(in);
    in.expect_end();
    return h;
}

std::string serialize_hypergraph(const UniformHypergraph& h) {
    std::ostringstream out;
    write_hypergraph(out, h);
    return out.str();
}

StepHypergraphon parse_hypergraphon(std::string_view text) {
    LineReader in(text);
    auto header = in.expect("HGON header");
    expect_header(in, header, "HGON", 4);
    const int k = parse_arity(in, header[1]);
    const int l = in.integer<int>(header[2], "resolution");
    if (l < 1 || l > 65535) throw ParseError(in.line(), "resolution outside 1..65535");
    ValueKind kind;
    if (header[3] == "ind")
        kind = ValueKind::indicator;
    else if (header[3] == "proj")
        kind = ValueKind::projected;
    else
        throw ParseError(in.line(), "kind must be 'ind' or 'proj'");
    const auto s = in.integer<std::size_t>(header[4], "entry count");
    const auto& idx = SubsetIndexing::of(k);
    std::map<BoxKey, std::size_t> seen;
    std::vector<std::pair<BoxKey, double>> entries;
    for (std::size_t i = 0; i < s; ++i) {
        const auto tokens = in.expect("box entry");
        if (tokens.size() != idx.size() + 1)
            throw ParseError(in.line(), "entry needs " + std::to_string(idx.size()) + " box indices and a value");
        BoxKey box;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            const auto b = in.integer<unsigned>(tokens[j], "box index");
            if (b >= static_cast<unsigned>(l)) throw ParseError(in.line(), "box index out of range");
            box.push_back(static_cast<BoxIndex>(b));
        }
        const double value = in.real(tokens.back(), "value");
        if (idx.canonical<BoxIndex>(box) != box) throw ParseError(in.line(), "box is not a canonical orbit representative");
        if (!seen.emplace(box, in.line()).second) throw ParseError(in.line(), "duplicate orbit entry");
        if (kind == ValueKind::indicator && value != 1.0) throw ParseError(in.line(), "indicator entries must be 1");
        if (!(value >= 0.0 && value <= 1.0)) throw ParseError(in.line(), "value outside [0,1]");
        entries.emplace_back(std::move(box), value);
    }
    in.expect_end();
    return StepHypergraphon::from_entries(k, l, kind, std::move(entries));
}

std::string serialize_hypergraphon(const StepHypergraphon& w) {
    std::ostringstream out;
    out << "HGON " << w.arity() << ' ' << w.resolution() << ' '
        << (w.kind() == ValueKind::indicator ? "ind" : "proj") << ' ' << w.entries().size() << '\n';
    for (const auto& [box, value] : w.entries()) {
        for (const BoxIndex b : box) out << b << ' ';
        out << (w.kind() == ValueKind::indicator ? std::string("1") : format_real(value)) << '\n';
    }
    return out.str();
}

Hyperpartition parse_hyperpartition(std::string_view text) {
    LineReader in(text);
    auto header = in.expect("HP header");
    expect_header(in, header, "HP", 3);
    const int k = parse_arity(in, header[1]);
    const auto n = in.integer<std::size_t>(header[2], "vertex count");
    const int l = in.integer<int>(header[3], "class count");
    if (l < 1) throw ParseError(in.line(), "class count must be positive");
    std::vector<std::vector<std::uint32_t>> labels(k);
    for (int r = 1; r <= k; ++r) {
        const auto level = in.expect("LEVEL line");
        if (level.size() != 2 || level[0] != "LEVEL" || in.integer<int>(level[1], "level") != r)
            throw ParseError(in.line(), "expected 'LEVEL " + std::to_string(r) + "'");
        const std::uint64_t count = binomial(n, r);
        labels[r - 1].reserve(count);
        for (std::uint64_t rank = 0; rank < count; ++rank) {
            const auto tokens = in.expect("subset label line");
            if (tokens.size() != static_cast<std::size_t>(r) + 1)
                throw ParseError(in.line(), "expected " + std::to_string(r) + " vertices and a label");
            check_subset_line(in, tokens, subset_unrank(n, r, rank));
            const auto label = in.integer<std::uint32_t>(tokens.back(), "label");
            if (label >= static_cast<std::uint32_t>(l)) throw ParseError(in.line(), "label out of range");
            labels[r - 1].push_back(label);
        }
    }
    in.expect_end();
    return Hyperpartition(k, n, l, std::move(labels));
}

std::string serialize_hyperpartition(const Hyperpartition& p) {
    std::ostringstream out;
    out << "HP " << p.arity() << ' ' << p.n_vertices() << ' ' << p.resolution() << '\n';
    for (int r = 1; r <= p.arity(); ++r) {
        out << "LEVEL " << r << '\n';
        const auto labels = p.level(r);
        std::uint64_t rank = 0;
        for_each_subset(p.n_vertices(), r, [&](std::span<const Vertex> s) {
            for (const Vertex v : s) out << v << ' ';
            out << labels[rank++] << '\n';
        });
    }
    return out.str();
}

LatentSample parse_latent_sample(std::string_view text) {
    LineReader in(text);
    auto header = in.expect("LAT header");
    expect_header(in, header, "LAT", 3);
    const int k = parse_arity(in, header[1]);
    const auto n = in.integer<std::size_t>(header[2], "vertex count");
    const auto seed = in.integer<std::uint64_t>(header[3], "seed");
    std::vector<std::vector<std::uint64_t>> latents(k);
    for (int r = 1; r <= k; ++r) {
        const std::uint64_t count = binomial(n, r);
        latents[r - 1].reserve(count);
        for (std::uint64_t rank = 0; rank < count; ++rank) {
            const auto tokens = in.expect("latent line");
            if (tokens.size() != static_cast<std::size_t>(r) + 1)
                throw ParseError(in.line(), "expected " + std::to_string(r) + " vertices and a latent");
            check_subset_line(in, tokens, subset_unrank(n, r, rank));
            const auto hex = tokens.back();
            std::uint64_t bits = 0;
            const auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), bits, 16);
            if (hex.size() != 16 || ec != std::errc{} || ptr != hex.data() + hex.size())
                throw ParseError(in.line(), "latent must be 16 hex digits");
            latents[r - 1].push_back(bits);
        }
    }
    auto graph = read_hypergraph(in);
    in.expect_end();
    if (graph.arity() != k || graph.n_vertices() != n)
        throw ParseError(in.line(), "embedded HG block disagrees with the LAT header");
    return LatentSample(std::move(graph), seed, std::move(latents));
}

std::string serialize_latent_sample(const LatentSample& s) {
    std::ostringstream out;
    out << "LAT " << s.arity() << ' ' << s.n_vertices() << ' ' << s.seed() << '\n';
    char hex[17];
    for (int r = 1; r <= s.arity(); ++r) {
        const auto level = s.level(r);
        std::uint64_t rank = 0;
        for_each_subset(s.n_vertices(), r, [&](std::span<const Vertex> b) {
            for (const Vertex v : b) out << v << ' ';
            std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(level[rank++]));
            out << hex << '\n';
        });
    }
    write_hypergraph(out, s.graph());
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << contents;
}

}  // namespace hyperlim
