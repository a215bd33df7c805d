#include "qrel/frames.hpp"
#include "qrel/measurement.hpp"
#include "qrel/nested.hpp"
#include "qrel/scenarios.hpp"
#include "qrel/state.hpp"
#include "qrel/transforms.hpp"
#include "qrel/wavepacket.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace qrel;

namespace {

nlohmann::json json_from_py(const py::object& obj) {
    const std::string dumped =
        py::module_::import("json").attr("dumps")(obj).cast<std::string>();
    return nlohmann::json::parse(dumped);
}

py::object json_to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

} // namespace

PYBIND11_MODULE(_qrel, m) {
    m.doc() = "Quantum reference-frame simulation kernels";

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<Eigen::VectorXcd, std::vector<Eigen::Index>,
                      std::vector<std::string>>(),
             py::arg("amplitudes"), py::arg("dims"),
             py::arg("labels") = std::vector<std::string>{})
        .def_static("superposition2", &StateVector::superposition2, py::arg("c1"),
                    py::arg("c2"), py::arg("label") = "S")
        .def_static("basis", &StateVector::basis, py::arg("dim"), py::arg("index"),
                    py::arg("label") = "S")
        .def_readonly("amplitudes", &StateVector::amplitudes)
        .def_readonly("dims", &StateVector::dims)
        .def_readonly("labels", &StateVector::labels)
        .def("norm_sq", &StateVector::norm_sq);

    py::class_<Operator>(m, "Operator")
        .def(py::init<Eigen::MatrixXcd>(), py::arg("entries"))
        .def_static("identity", &Operator::identity)
        .def_static("hadamard", &Operator::hadamard)
        .def_static("spin_z", &Operator::spin_z)
        .def_static("random_unitary", &Operator::random_unitary)
        .def_readonly("entries", &Operator::entries)
        .def("is_unitary", &Operator::is_unitary, py::arg("tol") = kNormTol)
        .def("is_hermitian", &Operator::is_hermitian, py::arg("tol") = kNormTol);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_readonly("entries", &DensityMatrix::entries)
        .def("trace_real", &DensityMatrix::trace_real)
        .def("purity", &DensityMatrix::purity);

    py::class_<MeasureResult>(m, "MeasureResult")
        .def_readonly("outcome", &MeasureResult::outcome)
        .def_readonly("collapsed", &MeasureResult::collapsed)
        .def_readonly("probability", &MeasureResult::probability)
        .def_readonly("eigenspace_index", &MeasureResult::eigenspace_index);

    m.def("tensor_product", &tensor_product);
    m.def("apply_unitary", &apply_unitary);
    m.def("change_basis", &change_basis, py::arg("psi"), py::arg("subsystem"),
          py::arg("basis"));
    m.def("measure", &measure, py::arg("psi"), py::arg("subsystem"), py::arg("observable"),
          py::arg("seed"));
    m.def("reduced_state", &reduced_state, py::arg("psi"), py::arg("keep"));
    m.def("born_distribution", &born_distribution);
    m.def("overlap_mod", &overlap_mod);

    m.def("premeasure", &chain::premeasure, py::arg("s0"), py::arg("pointer_dim") = 3);
    m.def("project_chain_branch", [](const StateVector& psi, std::uint64_t seed) {
        const auto r = chain::project_chain(psi, seed);
        return py::make_tuple(r.branch, r.probability, r.final);
    });
    m.def("wigner_descriptions_coincide", [](const StateVector& s0, std::uint64_t seed) {
        return chain::wigner_chain(s0, seed).descriptions_coincide;
    });
    m.def(
        "decoherence_time",
        [](double relaxation_time, double thermal_length, double separation) {
            return chain::decoherence_time({relaxation_time, thermal_length, separation});
        },
        py::arg("relaxation_time"), py::arg("thermal_length"), py::arg("separation"));

    m.def("dilate_length", &transforms::dilate_length, py::arg("dx"), py::arg("m_S"),
          py::arg("m_A"));
    m.def("debroglie_product", &transforms::debroglie_product, py::arg("m"), py::arg("v"),
          py::arg("wavelength"));
    m.def(
        "frame_swap_debroglie",
        [](double m_S, double m_A, double v, double hbar) {
            const auto swap = transforms::frame_swap_debroglie(m_S, m_A, v, hbar);
            return py::make_tuple(swap.lambda_forward, swap.lambda_backward,
                                  swap.magnified_length);
        },
        py::arg("m_S"), py::arg("m_A"), py::arg("v"), py::arg("hbar") = constants::hbar);
    m.def(
        "quantum_interval",
        [](double dt, double j1, double j2) {
            return transforms::quantum_interval({dt, j1, j2});
        },
        py::arg("dt"), py::arg("J1"), py::arg("J2"));
    m.def("gamma_factor", &transforms::gamma_factor, py::arg("v"),
          py::arg("c") = constants::speed_of_light);
    m.def(
        "delta_factor",
        [](double e_q, double t, double h) {
            return transforms::delta_factor({1.0, 1.0, e_q, t, h});
        },
        py::arg("E_q"), py::arg("t"), py::arg("h") = constants::hbar);

    py::class_<wave::Grid1D>(m, "Grid1D")
        .def(py::init<double, double, Eigen::Index>(), py::arg("x_min"), py::arg("x_max"),
             py::arg("n_points"))
        .def_readonly("x_min", &wave::Grid1D::x_min)
        .def_readonly("x_max", &wave::Grid1D::x_max)
        .def_readonly("n_points", &wave::Grid1D::n_points)
        .def("dx", &wave::Grid1D::dx);

    py::class_<wave::WavePacket>(m, "WavePacket")
        .def_readonly("grid", &wave::WavePacket::grid)
        .def_readonly("amplitudes", &wave::WavePacket::amplitudes)
        .def_readonly("mass", &wave::WavePacket::mass)
        .def_readonly("hbar", &wave::WavePacket::hbar)
        .def("norm_sq", &wave::WavePacket::norm_sq)
        .def("mean_position", &wave::WavePacket::mean_position)
        .def("position_spread", &wave::WavePacket::position_spread)
        .def("mean_momentum", &wave::WavePacket::mean_momentum);

    m.def("init_gaussian", &wave::init_gaussian, py::arg("grid"), py::arg("x0"),
          py::arg("sigma0"), py::arg("k0"), py::arg("mass"),
          py::arg("hbar") = constants::hbar);
    m.def("evolve_free", &wave::evolve_free, py::arg("packet"), py::arg("dt"),
          py::arg("steps"));

    py::class_<wave::DoubleSlitResult>(m, "DoubleSlitResult")
        .def_readonly("positions", &wave::DoubleSlitResult::positions)
        .def_readonly("intensity", &wave::DoubleSlitResult::intensity)
        .def_readonly("fringe_spacing", &wave::DoubleSlitResult::fringe_spacing)
        .def_readonly("wavelength", &wave::DoubleSlitResult::wavelength)
        .def_readonly("time_of_flight", &wave::DoubleSlitResult::time_of_flight);

    m.def(
        "double_slit",
        [](double separation, double width, double screen_distance, double speed, double mass,
           const wave::Grid1D& grid, double hbar) {
            return wave::double_slit({separation, width, screen_distance, speed}, mass, grid,
                                     hbar);
        },
        py::arg("separation"), py::arg("width"), py::arg("screen_distance"), py::arg("speed"),
        py::arg("mass"), py::arg("grid"), py::arg("hbar") = constants::hbar);

    py::class_<wave::FrameSwapReport>(m, "FrameSwapReport")
        .def_readonly("lab", &wave::FrameSwapReport::lab)
        .def_readonly("swapped", &wave::FrameSwapReport::swapped)
        .def_readonly("dilation_factor", &wave::FrameSwapReport::dilation_factor)
        .def_readonly("expected_swapped_spacing",
                      &wave::FrameSwapReport::expected_swapped_spacing)
        .def_readonly("debroglie_forward", &wave::FrameSwapReport::debroglie_forward)
        .def_readonly("debroglie_backward", &wave::FrameSwapReport::debroglie_backward);

    m.def(
        "frame_swapped_run",
        [](double separation, double width, double screen_distance, double speed, double m_S,
           double m_A, const wave::Grid1D& grid, double hbar) {
            return wave::frame_swapped_run({separation, width, screen_distance, speed}, m_S,
                                           m_A, grid, hbar);
        },
        py::arg("separation"), py::arg("width"), py::arg("screen_distance"), py::arg("speed"),
        py::arg("m_S"), py::arg("m_A"), py::arg("grid"), py::arg("hbar") = constants::hbar);

    m.def("check_relations", [](const py::object& graph_json) {
        const auto graph = json_from_py(graph_json).get<frames::FrameGraph>();
        py::list violations;
        for (const auto& v : frames::check_equivalence(graph)) {
            const char* kind = v.kind == frames::ViolationKind::Reflexivity ? "reflexivity"
                               : v.kind == frames::ViolationKind::Symmetry  ? "symmetry"
                                                                            : "transitivity";
            violations.append(py::make_tuple(kind, v.witnesses));
        }
        py::list witnesses;
        for (const auto& [a, b] : frames::detect_intransitivity(graph))
            witnesses.append(py::make_tuple(a, b));
        return py::make_tuple(violations, witnesses);
    });

    m.def(
        "run_scenario",
        [](const py::object& config, std::optional<std::uint64_t> seed,
           std::optional<std::string> out_dir) {
            const auto result = cli::run_scenario(json_from_py(config), seed, out_dir);
            return py::make_tuple(result.exit_code, result.summary, result.output_files);
        },
        py::arg("config"), py::arg("seed") = py::none(), py::arg("out_dir") = py::none());

    m.def("transform_table", [](const py::object& config) {
        return json_to_py(cli::transform_table(json_from_py(config)));
    });

    m.def("verify_all", [](double tolerance_scale) {
        py::list out;
        for (const auto& r : cli::verify_all({tolerance_scale}))
            out.append(py::make_tuple(r.name, r.pass, r.detail));
        return out;
    }, py::arg("tolerance_scale") = 1.0);
}
