#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperlim/hyperlim.hpp"

namespace py = pybind11;
using namespace hyperlim;

namespace {

py::object to_py_int(const BigInt& x) { return py::int_(py::str(x.str())); }

py::object to_fraction(const Rational& q) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_py_int(boost::multiprecision::numerator(q)), to_py_int(boost::multiprecision::denominator(q)));
}

py::tuple profile_tuple(const CellProfile& c) {
    py::tuple t(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) t[i] = c[i];
    return t;
}

}  // namespace

PYBIND11_MODULE(_hyperlim, m) {
    m.doc() = "Hypergraph homomorphism densities, step hypergraphons and regularity diagnostics";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    m.def("set_thread_count", &set_thread_count, py::arg("threads"));
    m.def("thread_count", &thread_count);

    py::class_<UniformHypergraph>(m, "UniformHypergraph")
        .def(py::init<int, std::size_t, const std::vector<std::vector<Vertex>>&>(), py::arg("arity"),
             py::arg("n_vertices"), py::arg("edges") = std::vector<std::vector<Vertex>>{})
        .def_property_readonly("arity", &UniformHypergraph::arity)
        .def_property_readonly("n_vertices", &UniformHypergraph::n_vertices)
        .def_property_readonly("edge_count", &UniformHypergraph::edge_count)
        .def("edges", &UniformHypergraph::edge_list)
        .def("contains", [](const UniformHypergraph& h, std::vector<Vertex> e) {
            std::sort(e.begin(), e.end());
            return h.contains(e);
        })
        .def("__eq__", [](const UniformHypergraph& a, const UniformHypergraph& b) { return a == b; })
        .def("__repr__", [](const UniformHypergraph& h) {
            return "UniformHypergraph(arity=" + std::to_string(h.arity()) + ", n_vertices=" +
                   std::to_string(h.n_vertices()) + ", edges=" + std::to_string(h.edge_count()) + ")";
        });

    m.def("complete_hypergraph", &complete_hypergraph, py::arg("arity"), py::arg("n_vertices"));
    m.def("edge_density", [](const UniformHypergraph& h) { return to_fraction(edge_density(h)); });
    m.def("disjoint_union", &disjoint_union);
    m.def("parse_hypergraph", &parse_hypergraph, py::arg("text"));
    m.def("serialize_hypergraph", &serialize_hypergraph);

    m.def("hom_count", [](const UniformHypergraph& k, const UniformHypergraph& h) {
        return to_py_int(hom_count(k, h).count);
    });
    m.def("hom_density", [](const UniformHypergraph& k, const UniformHypergraph& h) {
        return to_fraction(hom_density(k, h));
    });
    m.def(
        "hom_images",
        [](const UniformHypergraph& k, const UniformHypergraph& h, std::size_t cap) {
            const auto r = enumerate_hom_images(k, h, cap);
            return py::make_tuple(r.images, r.truncated);
        },
        py::arg("k"), py::arg("h"), py::arg("cap") = default_image_cap);

    py::enum_<ValueKind>(m, "ValueKind")
        .value("indicator", ValueKind::indicator)
        .value("projected", ValueKind::projected);

    py::class_<StepHypergraphon>(m, "StepHypergraphon")
        .def_static(
            "from_function",
            [](int k, int l, ValueKind kind, const py::function& value) {
                return StepHypergraphon::from_function(k, l, kind, [&](std::span<const BoxIndex> box) {
                    return value(py::tuple(py::cast(std::vector<BoxIndex>(box.begin(), box.end())))).cast<double>();
                });
            },
            py::arg("arity"), py::arg("resolution"), py::arg("kind"), py::arg("value"))
        .def_property_readonly("arity", &StepHypergraphon::arity)
        .def_property_readonly("resolution", &StepHypergraphon::resolution)
        .def_property_readonly("kind", &StepHypergraphon::kind)
        .def("eval", [](const StepHypergraphon& w, const std::vector<double>& x) { return w.eval(x); })
        .def("entries", [](const StepHypergraphon& w) {
            py::dict d;
            for (const auto& [key, v] : w.entries()) d[profile_tuple(key)] = v;
            return d;
        });

    m.def("constant_hypergraphon", &constant_hypergraphon, py::arg("arity"), py::arg("p"));
    m.def("project", &project);
    m.def("parse_hypergraphon", &parse_hypergraphon, py::arg("text"));
    m.def("serialize_hypergraphon", &serialize_hypergraphon);
    m.def(
        "exact_density",
        [](const UniformHypergraph& k, const StepHypergraphon& w, std::uint64_t max_terms) {
            return exact_density(k, w, ExactBudget{max_terms});
        },
        py::arg("k"), py::arg("w"), py::arg("max_terms") = ExactBudget{}.max_terms);
    m.def(
        "mc_density",
        [](const UniformHypergraph& k, const StepHypergraphon& w, std::uint64_t samples, std::uint64_t seed) {
            const auto e = mc_density(k, w, samples, seed);
            return py::make_tuple(e.estimate, e.standard_error);
        },
        py::arg("k"), py::arg("w"), py::arg("samples"), py::arg("seed"));

    py::class_<LatentSample>(m, "LatentSample")
        .def_property_readonly("graph", &LatentSample::graph)
        .def_property_readonly("seed", &LatentSample::seed)
        .def("latent", [](const LatentSample& s, std::vector<Vertex> b) {
            std::sort(b.begin(), b.end());
            return s.latent(b);
        })
        .def("to_text", [](const LatentSample& s) { return serialize_latent_sample(s); });
    m.def("sample_w_random", &sample_w_random, py::arg("w"), py::arg("n"), py::arg("seed"));
    m.def("parse_latent_sample", &parse_latent_sample, py::arg("text"));

    py::class_<Hyperpartition>(m, "Hyperpartition")
        .def_property_readonly("arity", &Hyperpartition::arity)
        .def_property_readonly("n_vertices", &Hyperpartition::n_vertices)
        .def_property_readonly("resolution", &Hyperpartition::resolution)
        .def("level", [](const Hyperpartition& p, std::size_t r) {
            const auto lv = p.level(r);
            return std::vector<std::uint32_t>(lv.begin(), lv.end());
        })
        .def("class_hypergraph", &Hyperpartition::class_hypergraph)
        .def("to_text", [](const Hyperpartition& p) { return serialize_hyperpartition(p); });
    m.def("random_hyperpartition", &random_hyperpartition, py::arg("arity"), py::arg("n_vertices"),
          py::arg("resolution"), py::arg("seed"));
    m.def("latent_hyperpartition", &latent_hyperpartition, py::arg("sample"), py::arg("resolution"));
    m.def("cell_density", [](const UniformHypergraph& h, const Hyperpartition& p) {
        py::dict d;
        for (const auto& [cell, q] : cell_density(h, p)) d[profile_tuple(cell)] = to_fraction(q);
        return d;
    });
    m.def("cell_error", [](const UniformHypergraph& h, const Hyperpartition& p) {
        return to_fraction(cell_approximation(h, p).error);
    });
    m.def("equitability", [](const Hyperpartition& p) {
        py::list out;
        for (const auto& q : equitability(p).per_level) out.append(to_fraction(q));
        return out;
    });

    m.def(
        "removal",
        [](const UniformHypergraph& k, const UniformHypergraph& h, const std::string& mode) {
            const auto r = removal_experiment(k, h, parse_removal_method(mode));
            py::dict d;
            d["removed"] = r.removed;
            d["images"] = r.images;
            d["fraction"] = to_fraction(r.removed_fraction);
            d["residual"] = to_fraction(r.residual_density);
            d["optimal"] = r.optimal;
            d["verified"] = r.verified;
            return d;
        },
        py::arg("k"), py::arg("h"), py::arg("mode") = "exact");
}
