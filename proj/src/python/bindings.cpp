#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fusionkit/classifier.hpp"
#include "fusionkit/cli.hpp"
#include "fusionkit/doubles.hpp"
#include "fusionkit/errors.hpp"
#include "fusionkit/grading.hpp"
#include "fusionkit/io.hpp"
#include "fusionkit/modular_data.hpp"
#include "fusionkit/ring_search.hpp"

namespace py = pybind11;
using namespace fusionkit;

// JSON crosses the boundary as text; the Python wrapper handles dicts.
namespace {

json checks_json(const ValidationReport& rep)
{
    json out = json::array();
    for (const auto& c : rep.checks)
        out.push_back({{"name", c.name},
                       {"passed", c.passed},
                       {"residual", c.residual},
                       {"witness", c.witness},
                       {"detail", c.detail}});
    return out;
}

json cplx(Complex z) { return {z.real(), z.imag()}; }

std::string validate_ring(const std::string& ring)
{
    const auto rep = validate_fusion_ring(ring_from_json(json::parse(ring)));
    return json{{"valid", rep.valid()}, {"checks", checks_json(rep)}}.dump();
}

std::string ring_invariants(const std::string& text)
{
    const FusionRing ring = ring_from_json(json::parse(text));
    const auto dims = fp_dimensions(ring);
    json out{{"rank", ring.rank()},
             {"fp_dimensions", dims.dims},
             {"global_dimension", dims.global},
             {"canonical_key", canonical_form(ring).key}};
    const auto g = universal_grading(ring);
    out["grading"] = {{"structure", g.structure}, {"assignment", g.assignment}};
    return out.dump();
}

std::string twist(const std::string& ring, const std::string& cochain)
{
    return ring_to_json(graded_twist(ring_from_json(json::parse(ring)),
                                     cochain_from_json(json::parse(cochain))))
        .dump();
}

std::string modular(const std::string& text)
{
    const ModularData md = modular_from_json(json::parse(text));
    const auto rep = verify_modular(md);
    json out{{"valid", rep.valid()},
             {"checks", checks_json(rep)},
             {"global_dimension", rep.global},
             {"t_order", rep.t_order},
             {"p_plus", cplx(rep.gauss.p_plus)},
             {"p_minus", cplx(rep.gauss.p_minus)}};
    if (rep.valid())
        out["verlinde"] = ring_to_json(verlinde_fusion(md));
    return out.dump();
}

std::string classify_profile(long long p, long long q, const std::string& shape)
{
    return classification_to_json(classify(make_profile(p, q, parse_shape(shape)))).dump();
}

std::vector<std::vector<std::pair<long long, long long>>> types(long long n)
{
    std::vector<std::vector<std::pair<long long, long long>>> out;
    for (const auto& t : enumerate_types(n))
        out.push_back(t.entries);
    return out;
}

std::string search(const std::string& spec, unsigned workers, std::uint64_t node_cap)
{
    SearchOptions opt;
    opt.workers = workers;
    opt.node_cap = node_cap;
    const auto res = complete_fusion_rings(search_spec_from_json(json::parse(spec)), opt);
    json rings = json::array();
    for (const auto& r : res.rings)
        rings.push_back(ring_to_json(r));
    return json{{"rings", rings},
                {"keys", res.keys},
                {"raw_completions", res.raw.size()},
                {"nodes", res.stats.nodes}}
        .dump();
}

std::string drinfeld_double(const std::string& group)
{
    const auto dd = double_modular_data(group_from_json(json::parse(group)));
    json dims = json::array();
    for (const auto& l : dd.labels)
        dims.push_back(l.dimension);
    return json{{"dimensions", dims},
                {"modular_data", modular_to_json(dd.md)},
                {"ring", ring_to_json(dd.ring)}}
        .dump();
}

py::tuple cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

} // namespace

PYBIND11_MODULE(_fusionkit, m)
{
    m.doc() = "fusion ring, modular data and classification tools";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<InconsistencyError>(m, "InconsistencyError", base.ptr());
    py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const json::exception& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("validate_ring", &validate_ring);
    m.def("ring_invariants", &ring_invariants);
    m.def("graded_twist", &twist);
    m.def("verify_modular", &modular);
    m.def("classify", &classify_profile);
    m.def("enumerate_types", &types);
    m.def("search", &search, py::arg("spec"), py::arg("workers") = 1, py::arg("node_cap") = std::uint64_t(10'000'000));
    m.def("drinfeld_double", &drinfeld_double);
    m.def("run_cli", &cli);
}
