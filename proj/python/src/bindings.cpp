#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coa/assistance.hpp"
#include "coa/coherence.hpp"
#include "coa/entanglement.hpp"
#include "coa/io.hpp"
#include "coa/protocol.hpp"

namespace py = pybind11;
using namespace coa;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
    if (a.ndim() != 2) throw Error(ErrorKind::BadShape, "expected a 2-d array");
    const auto r = a.unchecked<2>();
    ComplexMatrix m(r.shape(0), r.shape(1));
    for (py::ssize_t i = 0; i < r.shape(0); ++i)
        for (py::ssize_t j = 0; j < r.shape(1); ++j) m(i, j) = r(i, j);
    return m;
}

CArray to_array(const ComplexMatrix& m) {
    CArray out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
    return out;
}

CArray to_array(std::span<const Complex> v) {
    CArray out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
    auto w = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < v.size(); ++i) w(i) = v[i];
    return out;
}

DensityMatrix state(const CArray& a) { return DensityMatrix(to_matrix(a), Tolerances::from_env()); }

Measure parse_measure(const std::string& s) {
    if (s == "l1") return Measure::L1;
    if (s == "relent") return Measure::RelativeEntropy;
    throw Error(ErrorKind::ParseError, "measure must be 'l1' or 'relent'");
}

py::list ensemble_list(const Ensemble& e) {
    py::list out;
    for (const auto& m : e.members()) out.append(py::make_tuple(m.weight, to_array(m.state.amps())));
    return out;
}

Ensemble ensemble_from(const std::vector<std::pair<double, CArray>>& members) {
    std::vector<EnsembleMember> out;
    for (const auto& [w, a] : members) {
        if (a.ndim() != 1) throw Error(ErrorKind::BadShape, "member amplitudes must be 1-d");
        const auto r = a.unchecked<1>();
        std::vector<Complex> amps(r.shape(0));
        for (py::ssize_t i = 0; i < r.shape(0); ++i) amps[i] = r(i);
        out.push_back({w, PureState(std::move(amps))});
    }
    return Ensemble(std::move(out));
}

py::dict result_dict(const AssistanceResult& r) {
    py::dict d;
    d["measure"] = std::string(to_string(r.measure));
    d["lower_bound"] = r.lower_bound;
    d["upper_bound"] = r.upper_bound;
    d["exact"] = r.exact;
    d["converged"] = r.converged;
    d["restarts_used"] = r.restarts_used;
    d["residual"] = r.residual ? py::cast(*r.residual) : py::none();
    d["witness"] = ensemble_list(r.witness);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Coherence of assistance: numerical core";
    py::register_exception<Error>(m, "CoaError", PyExc_ValueError);

    py::class_<OptimizerConfig>(m, "OptimizerConfig")
        .def(py::init<>())
        .def_readwrite("restarts", &OptimizerConfig::restarts)
        .def_readwrite("ensemble_size", &OptimizerConfig::ensemble_size)
        .def_readwrite("max_iters", &OptimizerConfig::max_iters)
        .def_readwrite("stall_tol", &OptimizerConfig::stall_tol)
        .def_readwrite("stall_iters", &OptimizerConfig::stall_iters)
        .def_readwrite("seed", &OptimizerConfig::seed)
        .def_readwrite("jobs", &OptimizerConfig::jobs)
        .def_readwrite("seed_budget", &OptimizerConfig::seed_budget);

    m.def("validate", [](const CArray& a) { return to_array(state(a).mat()); }, py::arg("rho"),
          "Validate a density matrix and return it as an array.");
    m.def("eigh", [](const CArray& a) {
        const auto r = eigh(to_matrix(a));
        return py::make_tuple(r.values, to_array(r.vectors));
    });
    m.def("c_l1", [](const CArray& a) { return c_l1(state(a)); });
    m.def("c_rel_ent", [](const CArray& a) { return c_rel_ent(state(a), Tolerances::from_env()); });
    m.def("upper_bound", [](const CArray& a, const std::string& measure) {
        return upper_bound(state(a), parse_measure(measure), Tolerances::from_env());
    }, py::arg("rho"), py::arg("measure") = "l1");

    m.def("optimize_ca", [](const CArray& a, const std::string& measure, const OptimizerConfig& cfg) {
        const auto rho = state(a);
        const auto which = parse_measure(measure);
        AssistanceResult r;
        {
            py::gil_scoped_release release;
            r = optimize_ca(rho, which, cfg, Tolerances::from_env());
        }
        return result_dict(r);
    }, py::arg("rho"), py::arg("measure") = "l1", py::arg("config") = OptimizerConfig{});
    m.def("analytic_ca_l1", [](const CArray& a, std::size_t budget, std::uint64_t seed) {
        return result_dict(analytic_ca_l1(state(a), budget, seed, Tolerances::from_env()));
    }, py::arg("rho"), py::arg("budget") = kDefaultSaturationBudget, py::arg("seed") = kDefaultSeed);
    m.def("saturation_check", [](const CArray& a, std::size_t budget, std::uint64_t seed, double sat_tol) {
        const auto r = saturation_check(state(a), budget, seed, sat_tol, Tolerances::from_env());
        py::dict d;
        d["saturated"] = r.saturated;
        d["residual"] = r.residual;
        d["average_l1"] = r.average_l1;
        d["ensemble"] = ensemble_list(r.ensemble);
        return d;
    }, py::arg("rho"), py::arg("budget") = kDefaultSaturationBudget, py::arg("seed") = kDefaultSeed,
          py::arg("sat_tol") = kSatTol);
    m.def("strict_increase_ensemble", [](const CArray& a) {
        return ensemble_list(strict_increase_ensemble(state(a), Tolerances::from_env()));
    });
    m.def("classify", [](const CArray& a, const OptimizerConfig& cfg) {
        const auto c = classify(state(a), cfg, Tolerances::from_env());
        return py::make_tuple(std::string(to_string(c.kind)), c.accessible_l1, c.accessible_rel_ent);
    }, py::arg("rho"), py::arg("config") = OptimizerConfig{});

    m.def("maximally_correlated", [](const CArray& a) { return to_array(to_maximally_correlated(state(a)).mat.mat()); });
    m.def("negativity", [](const CArray& a, std::size_t dim_a, std::size_t dim_b) {
        const auto rho = state(a);
        if (dim_a * dim_b != rho.dim() || dim_a != dim_b)
            throw Error(ErrorKind::BadDimension, "negativity expects equal local dimensions");
        return negativity(BipartiteState{dim_a, rho}, Tolerances::from_env());
    }, py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
    m.def("negativity_of_assistance_mc", [](const CArray& a, const OptimizerConfig& cfg) {
        return negativity_of_assistance_mc(state(a), cfg, Tolerances::from_env()).value;
    }, py::arg("rho"), py::arg("config") = OptimizerConfig{});

    m.def("average_coherence", [](const std::vector<std::pair<double, CArray>>& members, const std::string& measure) {
        return ensemble_from(members).average_coherence(parse_measure(measure));
    }, py::arg("ensemble"), py::arg("measure") = "l1");
    m.def("assemble", [](const std::vector<std::pair<double, CArray>>& members) {
        return to_array(assemble_matrix(ensemble_from(members)));
    });

    m.def("demo_protocol", [](const std::string& basis, const OptimizerConfig& cfg) {
        const auto strategy = basis == "haar" ? BasisStrategy::HaarSearch : BasisStrategy::Computational;
        const auto r = run_protocol(DensityMatrix::maximally_mixed(4), demo_dim4_purification(), strategy, cfg);
        return py::make_tuple(r.initial_l1, r.final_average_l1, r.gain);
    }, py::arg("basis") = "computational", py::arg("config") = OptimizerConfig{});
    m.def("run_protocol", [](const CArray& a, const std::string& basis, const OptimizerConfig& cfg) {
        const auto strategy = basis == "haar" ? BasisStrategy::HaarSearch : BasisStrategy::Computational;
        const auto r = run_protocol(state(a), strategy, cfg, Tolerances::from_env());
        py::dict d;
        d["initial_l1"] = r.initial_l1;
        d["final_average_l1"] = r.final_average_l1;
        d["gain"] = r.gain;
        d["ensemble"] = ensemble_list(r.ensemble);
        return d;
    }, py::arg("rho"), py::arg("basis") = "computational", py::arg("config") = OptimizerConfig{});

    m.def("read_state", [](const std::string& path) {
        return to_array(io::read_state_file(path, Tolerances::from_env()).mat());
    });
    m.def("write_state", [](const CArray& a, const std::string& label) {
        return io::write_matrix_document(to_matrix(a), label);
    }, py::arg("rho"), py::arg("label") = "");
    m.def("report_csv", [](const std::vector<CArray>& states, const std::vector<std::string>& labels,
                           const OptimizerConfig& cfg) {
        if (labels.size() != states.size()) throw Error(ErrorKind::BadShape, "one label per state");
        std::vector<io::ReportRecord> recs;
        for (std::size_t k = 0; k < states.size(); ++k)
            recs.push_back(io::build_report_record(state(states[k]), labels[k], cfg, Tolerances::from_env()));
        return io::write_report(recs, io::ReportFormat::Csv);
    }, py::arg("states"), py::arg("labels"), py::arg("config") = OptimizerConfig{});
}
