// hyperlim command-line tool. Exit codes: 0 ok, 2 bad input, 3 budget
// exceeded, 4 verification failed.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "hyperlim/hyperlim.hpp"

using namespace hyperlim;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_budget = 3;
constexpr int exit_verify = 4;

UniformHypergraph load_hg(const std::string& path) {
    try {
        return parse_hypergraph(read_text_file(path));
    } catch (const ParseError& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

StepHypergraphon load_hgon(const std::string& path) {
    try {
        return parse_hypergraphon(read_text_file(path));
    } catch (const ParseError& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

Hyperpartition load_hp(const std::string& path) {
    try {
        return parse_hyperpartition(read_text_file(path));
    } catch (const ParseError& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

// Writes to `path`, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
    } else {
        write_text_file(path, text);
    }
}

std::vector<double> parse_reals(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.empty()) throw InvalidInput("not a number: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw InvalidInput("empty list");
    return out;
}

Rational parse_eps(double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw InvalidInput("eps must lie in (0,1]");
    // eps is read as a decimal; keep it exact up to 1e-9 resolution
    const auto scaled = static_cast<long long>(std::llround(eps * 1e9));
    return Rational(BigInt(scaled), BigInt(1000000000));
}

std::string stem_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

struct Options {
    // shared
    std::uint64_t seed = 0;
    std::string out;
    // hom / density / removal
    std::string k_path, h_path, w_path, p_path;
    std::string mode = "exact";
    std::uint64_t samples = 100000;
    std::uint64_t max_terms = ExactBudget{}.max_terms;
    // sample
    std::size_t n = 0;
    std::string latents;
    // cells
    bool approx = false;
    std::string extract;
    // regularity
    double eps = 0.1;
    std::uint64_t m = 200;
    std::string grid = "0.25,0.5,0.75";
    bool strict = false;
    // removal
    std::string removal_mode = "exact";
    std::size_t cap = default_image_cap;
    std::string instance = "H";
    bool header = true;
    std::string residual_out;
    // experiments
    std::vector<std::string> k_paths;
    std::string ns = "20,40,80";
    std::size_t reps = 20;
    int l = 2;
};

int cmd_hom(const Options& o) {
    const auto kg = load_hg(o.k_path);
    const auto hg = load_hg(o.h_path);
    const auto hc = hom_count(kg, hg);
    if (hg.n_vertices() == 0) throw InvalidInput("H has no vertices");
    std::printf("hom=%s t=%s\n", hc.count.str().c_str(), to_string(Rational(hc.count, hc.domain_size)).c_str());
    return exit_ok;
}

int cmd_density(const Options& o) {
    const auto kg = load_hg(o.k_path);
    const auto w = load_hgon(o.w_path);
    if (o.mode == "exact") {
        ExactBudget budget;
        budget.max_terms = o.max_terms;
        std::printf("%s\n", format_real(exact_density(kg, w, budget)).c_str());
    } else if (o.mode == "mc") {
        if (o.samples < 2) throw InvalidInput("--samples must be at least 2");
        const auto est = mc_density(kg, w, o.samples, o.seed);
        std::printf("%s\n", format_real(est.estimate).c_str());
        std::fprintf(stderr, "se=%s samples=%llu seed=%llu\n", format_real(est.standard_error).c_str(),
                     static_cast<unsigned long long>(est.n_samples), static_cast<unsigned long long>(est.seed));
    } else {
        throw InvalidInput("unknown density mode '" + o.mode + "' (expected exact or mc)");
    }
    return exit_ok;
}

int cmd_sample(const Options& o) {
    const auto w = load_hgon(o.w_path);
    const auto s = sample_w_random(w, o.n, o.seed);
    emit(o.out, serialize_hypergraph(s.graph()));
    if (!o.latents.empty()) write_text_file(o.latents, serialize_latent_sample(s));
    return exit_ok;
}

std::string profile_string(const CellProfile& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(c[i]);
    }
    return s;
}

int cmd_cells(const Options& o) {
    const auto h = load_hg(o.h_path);
    const auto p = load_hp(o.p_path);
    if (p.arity() != h.arity() || p.n_vertices() != h.n_vertices())
        throw InvalidInput("partition and hypergraph disagree on arity or vertex count");
    std::string text;
    if (o.approx) {
        const auto a = cell_approximation(h, p);
        text = "cells=" + std::to_string(cell_statistics(h, p).size()) +
               " majority=" + std::to_string(a.cells.size()) +
               " sym_diff=" + std::to_string(a.symmetric_difference) + " error=" + to_string(a.error) + "\n";
    } else {
        text = "profile,size,edges,density\n";
        for (const auto& [cell, st] : cell_statistics(h, p))
            text += profile_string(cell) + "," + std::to_string(st.size) + "," + std::to_string(st.edges) + "," +
                    to_string(st.density()) + "\n";
    }
    emit(o.out, text);
    if (!o.extract.empty()) write_text_file(o.extract, serialize_hypergraphon(extract_step_hypergraphon(h, p)));
    return exit_ok;
}

int cmd_regularity(const Options& o) {
    const auto g = load_hg(o.h_path);
    if (g.arity() < 2) throw InvalidInput("regularity needs an r-uniform hypergraph with r >= 2");
    if (o.m < 1) throw InvalidInput("--samples must be positive");
    const auto rep = check_regularity_sampled(g, parse_eps(o.eps), o.m, o.seed, parse_reals(o.grid));
    std::string text = "max_deviation=" + to_string(rep.max_deviation) + " (" +
                       format_real(to_double(rep.max_deviation)) + ")" +
                       " tested=" + std::to_string(rep.tested) + " admitted=" + std::to_string(rep.admitted) +
                       " eps=" + to_string(rep.eps) + " witness=" + (rep.witness ? "yes" : "no") + "\n";
    emit(o.out, text);
    return rep.witness && o.strict ? exit_verify : exit_ok;
}

std::string removal_header() { return "instance,edges,images,method,removed,fraction,residual,verified\n"; }

std::string removal_row(const std::string& id, const RemovalResult& r) {
    return id + "," + std::to_string(r.edges_before) + "," + std::to_string(r.images) + "," + to_string(r.method) +
           "," + std::to_string(r.removed.size()) + "," + to_string(r.removed_fraction) + "," +
           to_string(r.residual_density) + "," + (r.verified ? "1" : "0") + "\n";
}

int cmd_removal(const Options& o) {
    const auto kg = load_hg(o.k_path);
    const auto hg = load_hg(o.h_path);
    if (kg.edge_count() == 0) throw InvalidInput("K must have at least one edge");
    if (kg.arity() != hg.arity()) throw InvalidInput("K and H have different arity");
    const auto r = removal_experiment(kg, hg, parse_removal_method(o.removal_mode), o.cap);
    emit(o.out, (o.header ? removal_header() : std::string()) + removal_row(o.instance, r));
    if (!o.residual_out.empty()) write_text_file(o.residual_out, serialize_hypergraph(hg.without_edges(r.removed)));
    return r.verified ? exit_ok : exit_verify;
}

int cmd_convergence(const Options& o) {
    const auto w = load_hgon(o.w_path);
    if (o.k_paths.empty()) throw InvalidInput("at least one K is required");
    if (o.reps < 1) throw InvalidInput("--reps must be positive");
    std::vector<std::size_t> ns;
    for (const double v : parse_reals(o.ns)) {
        if (v < 1 || v != std::floor(v)) throw InvalidInput("--ns entries must be positive integers");
        ns.push_back(static_cast<std::size_t>(v));
    }
    struct Target {
        std::string id;
        UniformHypergraph graph;
        double t_w;
    };
    std::vector<Target> targets;
    for (const auto& path : o.k_paths) {
        auto kg = load_hg(path);
        const double t_w = exact_density(kg, w);
        targets.push_back({stem_of(path), std::move(kg), t_w});
    }
    // t_h[n index][rep][K index]
    std::vector<std::vector<std::vector<double>>> t_h(ns.size());
    for (std::size_t ni = 0; ni < ns.size(); ++ni)
        for (std::size_t rep = 0; rep < o.reps; ++rep) {
            const auto s = sample_w_random(w, ns[ni], derive_seed(o.seed, "convergence", {ns[ni], rep}));
            std::vector<double> row;
            for (const auto& t : targets) row.push_back(to_double(hom_density(t.graph, s.graph())));
            t_h[ni].push_back(std::move(row));
        }
    std::string csv = "K,n,rep,t_H,t_W,abs_diff\n";
    for (std::size_t ki = 0; ki < targets.size(); ++ki)
        for (std::size_t ni = 0; ni < ns.size(); ++ni) {
            CompensatedSum sum_t, sum_d;
            for (std::size_t rep = 0; rep < o.reps; ++rep) {
                const double th = t_h[ni][rep][ki];
                const double d = std::abs(th - targets[ki].t_w);
                sum_t.add(th);
                sum_d.add(d);
                csv += targets[ki].id + "," + std::to_string(ns[ni]) + "," + std::to_string(rep) + "," +
                       format_real(th) + "," + format_real(targets[ki].t_w) + "," + format_real(d) + "\n";
            }
            const double reps = static_cast<double>(o.reps);
            csv += targets[ki].id + "," + std::to_string(ns[ni]) + ",mean," + format_real(sum_t.value() / reps) +
                   "," + format_real(targets[ki].t_w) + "," + format_real(sum_d.value() / reps) + "\n";
        }
    emit(o.out, csv);
    return exit_ok;
}

int cmd_experiment_regularity(const Options& o) {
    const auto w = load_hgon(o.w_path);
    if (o.l < 1) throw InvalidInput("--l must be positive");
    if (o.m < 1) throw InvalidInput("--samples must be positive");
    const auto eps = parse_eps(o.eps);
    const auto grid = parse_reals(o.grid);
    const auto s = sample_w_random(w, o.n, o.seed);
    const auto p = latent_hyperpartition(s, o.l);
    std::string csv = "metric,level,class,value,tested,admitted,witness\n";
    const auto eq = equitability(p);
    for (std::size_t r = 1; r <= eq.per_level.size(); ++r)
        csv += "equitability," + std::to_string(r) + ",," + to_string(eq.per_level[r - 1]) + ",,,\n";
    for (std::size_t r = 2; r <= static_cast<std::size_t>(p.arity()); ++r)
        for (std::uint32_t j = 0; j < static_cast<std::uint32_t>(o.l); ++j) {
            const auto rep = check_regularity_sampled(p.class_hypergraph(r, j), eps, o.m,
                                                      derive_seed(o.seed, "regularity", {r, j}), grid);
            csv += "regularity," + std::to_string(r) + "," + std::to_string(j) + "," + to_string(rep.max_deviation) +
                   "," + std::to_string(rep.tested) + "," + std::to_string(rep.admitted) + "," +
                   (rep.witness ? "1" : "0") + "\n";
        }
    std::size_t impure = 0;
    const auto stats = cell_statistics(s.graph(), p);
    for (const auto& [cell, st] : stats) impure += st.edges != 0 && st.edges != st.size;
    csv += "cells,,," + std::to_string(stats.size()) + ",,,\n";
    csv += "impure_cells,,," + std::to_string(impure) + ",,,\n";
    csv += "cell_error,,," + to_string(cell_approximation(s.graph(), p).error) + ",,,\n";
    emit(o.out, csv);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperlim: hypergraph limits at desk scale"};
    app.require_subcommand(1);
    Options o;
    int (*action)(const Options&) = nullptr;

    auto* hom = app.add_subcommand("hom", "hom(K,H) and t(K,H)");
    hom->add_option("K", o.k_path, "K (HG file)")->required();
    hom->add_option("H", o.h_path, "H (HG file)")->required();
    hom->callback([&] { action = cmd_hom; });

    auto* density = app.add_subcommand("density", "homomorphism density t(K,W)");
    density->add_option("K", o.k_path, "K (HG file)")->required();
    density->add_option("W", o.w_path, "W (HGON file)")->required();
    density->add_option("--mode", o.mode, "exact or mc")->capture_default_str();
    density->add_option("--samples", o.samples, "Monte-Carlo sample count")->capture_default_str();
    density->add_option("--seed", o.seed, "seed")->capture_default_str();
    density->add_option("--max-terms", o.max_terms, "exact summation budget")->capture_default_str();
    density->callback([&] { action = cmd_density; });

    auto* sample = app.add_subcommand("sample", "W-random hypergraph");
    sample->add_option("W", o.w_path, "W (HGON file, indicator)")->required();
    sample->add_option("--n", o.n, "vertex count")->required();
    sample->add_option("--seed", o.seed, "seed")->capture_default_str();
    sample->add_option("--out", o.out, "HG output (default stdout)");
    sample->add_option("--latents", o.latents, "LAT output");
    sample->callback([&] { action = cmd_sample; });

    auto* cells = app.add_subcommand("cells", "H-cells of a hyperpartition");
    cells->add_option("H", o.h_path, "H (HG file)")->required();
    cells->add_option("P", o.p_path, "partition (HP file)")->required();
    cells->add_flag("--approx", o.approx, "print the majority cell approximation instead");
    cells->add_option("--extract", o.extract, "write the cell-density step hypergraphon (HGON)");
    cells->add_option("--out", o.out, "output (default stdout)");
    cells->callback([&] { action = cmd_cells; });

    auto* regularity = app.add_subcommand("regularity", "sampled eps-regularity check");
    regularity->add_option("G", o.h_path, "G (HG file, r >= 2)")->required();
    regularity->add_option("--eps", o.eps, "eps")->capture_default_str();
    regularity->add_option("--samples", o.m, "cylinder intersections to test")->capture_default_str();
    regularity->add_option("--seed", o.seed, "seed")->capture_default_str();
    regularity->add_option("--grid", o.grid, "densities for random bases")->capture_default_str();
    regularity->add_flag("--strict", o.strict, "exit 4 when a witness is found");
    regularity->add_option("--out", o.out, "output (default stdout)");
    regularity->callback([&] { action = cmd_regularity; });

    auto* removal = app.add_subcommand("removal", "remove edges until t(K,H) = 0");
    removal->add_option("K", o.k_path, "K (HG file)")->required();
    removal->add_option("H", o.h_path, "H (HG file)")->required();
    removal->add_option("--mode", o.removal_mode, "exact or greedy")->capture_default_str();
    removal->add_option("--cap", o.cap, "image cap")->capture_default_str();
    removal->add_option("--id", o.instance, "instance id for the CSV row")->capture_default_str();
    removal->add_flag("!--no-header", o.header, "omit the CSV header");
    removal->add_option("--residual", o.residual_out, "write H minus L (HG)");
    removal->add_option("--out", o.out, "output (default stdout)");
    removal->callback([&] { action = cmd_removal; });

    auto* experiment = app.add_subcommand("experiment", "CSV experiments");
    experiment->require_subcommand(1);
    auto* conv = experiment->add_subcommand("convergence", "t(K, W-random H) against t(K, W)");
    conv->add_option("W", o.w_path, "W (HGON file, indicator)")->required();
    conv->add_option("K", o.k_paths, "K files (HG)")->required();
    conv->add_option("--ns", o.ns, "comma-separated vertex counts")->capture_default_str();
    conv->add_option("--reps", o.reps, "repetitions per n")->capture_default_str();
    conv->add_option("--seed", o.seed, "seed")->capture_default_str();
    conv->add_option("--out", o.out, "CSV output (default stdout)");
    conv->callback([&] { action = cmd_convergence; });

    auto* ereg = experiment->add_subcommand("regularity", "latent hyperpartition diagnostics");
    ereg->add_option("W", o.w_path, "W (HGON file, indicator)")->required();
    ereg->add_option("--n", o.n, "vertex count")->required();
    ereg->add_option("--l", o.l, "partition resolution")->capture_default_str();
    ereg->add_option("--eps", o.eps, "eps")->capture_default_str();
    ereg->add_option("--M", o.m, "cylinder intersections per class")->capture_default_str();
    ereg->add_option("--seed", o.seed, "seed")->capture_default_str();
    ereg->add_option("--grid", o.grid, "densities for random bases")->capture_default_str();
    ereg->add_option("--out", o.out, "CSV output (default stdout)");
    ereg->callback([&] { action = cmd_experiment_regularity; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success) ? code : exit_input;
    }
    try {
        return action(o);
    } catch (const InvalidInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_input;
    } catch (const BudgetExceeded& e) {
        std::fprintf(stderr, "budget exceeded: %s\n", e.what());
        return exit_budget;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
