// Python bindings for the workbench core: platform groups, collection
// arithmetic, search oracles, protocols, and attacks. Big integers cross the
// boundary as decimal strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcw/attacks.hpp"
#include "pcw/bench.hpp"
#include "pcw/platform.hpp"
#include "pcw/protocols.hpp"
#include "pcw/secret_sharing.hpp"
#include "pcw/smallcanc.hpp"

namespace py = pybind11;
using namespace pcw;

namespace {

std::vector<std::string> exps_out(const GroupElement& e) {
    std::vector<std::string> v;
    v.reserve(e.exps().size());
    for (const auto& x : e.exps()) v.push_back(x.get_str());
    return v;
}

GroupElement elem_from_exps(const PlatformGroup& g, const std::vector<std::string>& exps) {
    std::vector<Int> v;
    v.reserve(exps.size());
    for (const auto& s : exps) v.emplace_back(s);
    if (static_cast<int>(v.size()) != g.presentation->ngens())
        throw std::invalid_argument("wrong exponent count");
    return GroupElement(g.presentation, std::move(v));
}

MatQ matrix_from_rows(const std::vector<std::vector<long>>& rows) {
    int n = static_cast<int>(rows.size());
    MatQ m(n, n);
    for (int r = 0; r < n; ++r) {
        if (static_cast<int>(rows[r].size()) != n)
            throw std::invalid_argument("action matrix must be square");
        for (int c = 0; c < n; ++c) m.at(r, c) = Rat(rows[r][c]);
    }
    return m;
}

}  // namespace

PYBIND11_MODULE(_pcw, m) {
    m.doc() = "polycyclic-group cryptography workbench";

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
    py::register_exception<PresentationError>(m, "PresentationError");
    py::register_exception<protocols::DegenerateKey>(m, "DegenerateKey");

    py::class_<GroupElement>(m, "GroupElement")
        .def("exps", &exps_out)
        .def("is_identity", &GroupElement::is_identity)
        .def("length", [](const GroupElement& e) { return e.length().get_str(); })
        .def("__eq__", [](const GroupElement& a, const GroupElement& b) { return a == b; })
        .def("__repr__", [](const GroupElement& e) { return "<pcw element " + e.str() + ">"; });

    py::class_<PlatformGroup>(m, "PlatformGroup")
        .def_readonly("name", &PlatformGroup::name)
        .def("ngens", [](const PlatformGroup& g) { return g.presentation->ngens(); })
        .def("hirsch_length", &PlatformGroup::hirsch_length)
        .def("identity", &PlatformGroup::identity)
        .def("element",
             [](const PlatformGroup& g, const std::string& word) {
                 return GroupElement::from_word(g.presentation, Word::parse(word));
             },
             py::arg("word"), "element from a 'g1^2 g3^-1' style word")
        .def("element_from_exps", &elem_from_exps)
        .def("presentation_text",
             [](const PlatformGroup& g) { return format_presentation(*g.presentation); })
        .def("has_matrix_image", [](const PlatformGroup& g) { return g.matrix_image.has_value(); })
        .def("check_consistency", [](const PlatformGroup& g, int trials, std::uint64_t seed) {
            Rng rng(seed);
            auto v = check_consistency(g.presentation, trials, rng);
            return py::make_tuple(v.consistent, v.witness);
        });

    m.def("heisenberg", &platform::heisenberg);
    m.def("unitriangular", &platform::unitriangular, py::arg("n"));
    m.def("zsqrt2", &platform::zsqrt2);
    m.def("golden", &platform::golden);
    m.def("hirsch7", &platform::hirsch7);
    m.def("direct_product", &platform::direct_product);
    m.def(
        "semidirect_from_action",
        [](int degree, const std::vector<std::vector<std::vector<long>>>& matrices,
           const std::string& name) {
            std::vector<MatQ> mats;
            mats.reserve(matrices.size());
            for (const auto& rows : matrices) mats.push_back(matrix_from_rows(rows));
            return platform::semidirect_from_action(degree, mats, name);
        },
        py::arg("degree"), py::arg("matrices"), py::arg("name") = "semidirect");
    m.def("load_group", [](const std::string& path) {
        PlatformGroup g;
        g.name = path;
        g.presentation = std::make_shared<PcPresentation>(parse_presentation_file(path));
        return g;
    });

    m.def("collect", [](const PlatformGroup& g, const std::string& word) {
        return GroupElement::from_word(g.presentation, Word::parse(word));
    });
    m.def("mul", [](const GroupElement& a, const GroupElement& b) { return mul(a, b); });
    m.def("inv", [](const GroupElement& a) { return inv(a); });
    m.def("conjugate",
          [](const GroupElement& a, const GroupElement& x) { return conjugate(a, x); });
    m.def("commutator",
          [](const GroupElement& a, const GroupElement& b) { return commutator(a, b); });
    m.def("power", [](const GroupElement& a, long n) { return power(a, Int(n)); });
    m.def(
        "random_element",
        [](const PlatformGroup& g, long len_min, long len_max, std::uint64_t seed) {
            Rng rng(seed);
            auto [w, e] = random_element(g.presentation, len_min, len_max, rng);
            return py::make_tuple(w.str(), e);
        },
        py::arg("group"), py::arg("len_min"), py::arg("len_max"), py::arg("seed"));

    m.def(
        "csp_enumerate",
        [](const PlatformGroup& g,
           const std::vector<std::pair<GroupElement, GroupElement>>& pairs, long max_nodes,
           int max_radius) {
            auto res = oracles::csp_enumerate(g.presentation, pairs, {max_nodes, max_radius});
            py::dict d;
            d["found"] = res.found;
            d["witness"] = res.witness.str();
            d["nodes_explored"] = res.nodes_explored;
            d["radius_reached"] = res.radius_reached;
            return d;
        },
        py::arg("group"), py::arg("pairs"), py::arg("max_nodes") = 100000,
        py::arg("max_radius") = 8);

    m.def(
        "aag_run",
        [](const PlatformGroup& g, int N1, int N2, int L1, int L2, int L, std::uint64_t seed) {
            Rng rng(seed);
            auto t = protocols::aag_run(g, {N1, N2, L1, L2, L}, rng);
            t.pub.seed = seed;
            py::dict d;
            d["public_json"] = protocols::aag_public_json(t.pub);
            d["private_json"] = protocols::aag_private_json(t);
            d["kappa"] = t.priv.kappa;
            return d;
        },
        py::arg("group"), py::arg("N1") = 5, py::arg("N2") = 5, py::arg("L1") = 2,
        py::arg("L2") = 4, py::arg("L") = 5, py::arg("seed") = 1);

    m.def(
        "kolee_run",
        [](const PlatformGroup& g, std::uint64_t seed) {
            Rng rng(seed);
            auto t = protocols::kolee_run(g, rng);
            py::dict d;
            d["key"] = t.key;
            d["agreed"] = (conjugate(t.gb, t.a) == conjugate(t.ga, t.b));
            return d;
        },
        py::arg("group"), py::arg("seed") = 1);

    m.def(
        "lba",
        [](const std::string& public_json, const std::string& side, int memory,
           long max_iterations) {
            auto pub = protocols::aag_public_from_json(public_json);
            attacks::LbaConfig cfg{memory, max_iterations, 0};
            auto res = attacks::lba(
                pub, side == "bob" ? attacks::Side::Bob : attacks::Side::Alice, cfg);
            py::dict d;
            d["success"] = res.success;
            d["iterations"] = res.iterations;
            d["peak_set_size"] = res.peak_set_size;
            if (res.conjugator_elem) d["conjugator"] = *res.conjugator_elem;
            return d;
        },
        py::arg("public_json"), py::arg("side") = "alice", py::arg("memory") = 2,
        py::arg("max_iterations") = 10000);

    m.def(
        "field_attack",
        [](const std::string& public_json, const PlatformGroup& g, const std::string& side) {
            if (!g.matrix_image) throw std::invalid_argument("group has no matrix image");
            auto pub = protocols::aag_public_from_json(public_json);
            auto res = attacks::field_based_attack(
                pub, *g.matrix_image,
                side == "bob" ? attacks::Side::Bob : attacks::Side::Alice);
            py::dict d;
            d["success"] = res.success;
            d["failure"] = res.failure;
            if (res.key) d["key"] = *res.key;
            return d;
        },
        py::arg("public_json"), py::arg("group"), py::arg("side") = "alice");

    m.def(
        "generate_relator_set",
        [](int alphabet_size, int count, int min_len, std::uint64_t seed) {
            Rng rng(seed);
            auto p = smallcanc::generate_relator_set(alphabet_size, count, min_len, rng);
            std::vector<std::string> rels;
            for (const auto& r : p.relators) rels.push_back(smallcanc::fw_str(r));
            return py::make_tuple(rels, p.lambda.get_str());
        },
        py::arg("alphabet_size") = 3, py::arg("count") = 2, py::arg("min_len") = 16,
        py::arg("seed") = 1);

    m.def(
        "dehn_reduce",
        [](int alphabet_size, const std::vector<std::string>& relators, const std::string& word) {
            std::vector<smallcanc::FreeWord> rels;
            for (const auto& r : relators) rels.push_back(smallcanc::fw_parse(r));
            auto p = smallcanc::make_presentation(alphabet_size, rels);
            return smallcanc::fw_str(smallcanc::dehn_reduce(p, smallcanc::fw_parse(word)));
        },
        py::arg("alphabet_size"), py::arg("relators"), py::arg("word"));

    m.def(
        "ss_roundtrip_nn",
        [](const std::string& bits, int n, std::uint64_t seed) {
            Rng rng(seed);
            auto shares = protocols::ss_deal_nn(bits, n, rng);
            return protocols::ss_reconstruct_nn(shares);
        },
        py::arg("bits"), py::arg("n") = 3, py::arg("seed") = 1);

    m.attr("__version__") = "1.0.0";
}
