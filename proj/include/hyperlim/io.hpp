#pragma once

#include <string>
#include <string_view>

#include "hyperlim/regularity.hpp"

namespace hyperlim {

// Text formats. All parsers skip blank lines and lines starting with '#',
// report errors as ParseError with a 1-based line number, and reject
// trailing content. Serializers emit the canonical form.
//
//   HG <k> <n> <m>           then m lines of k increasing vertex ids
//   HGON <k> <l> <ind|proj> <s>
//                            then s lines of 2^k-1 box indices and a value
//   HP <k> <n> <l>           then for r = 1..k: "LEVEL <r>" and C(n,r) lines
//                            "<sorted r-subset> <label>" in lexicographic order
//   LAT <k> <n> <seed>       then one line per subset B (by size, then
//                            lexicographic): "<members> <u_B as 16 hex digits>",
//                            then an HG block

UniformHypergraph parse_hypergraph(std::string_view text);
std::string serialize_hypergraph(const UniformHypergraph& h);

StepHypergraphon parse_hypergraphon(std::string_view text);
std::string serialize_hypergraphon(const StepHypergraphon& w);

Hyperpartition parse_hyperpartition(std::string_view text);
std::string serialize_hyperpartition(const Hyperpartition& p);

LatentSample parse_latent_sample(std::string_view text);
std::string serialize_latent_sample(const LatentSample& s);

// Whole-file helpers; throw InvalidInput when the file cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

// "%.17g".
std::string format_real(double x);

}  // namespace hyperlim
