// SPDX-License-Identifier: Apache-2.0
//
// pybind11 surface over the solver, channel, metric, and multicast cores.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "risopt/channel.hpp"
#include "risopt/experiment.hpp"
#include "risopt/metrics.hpp"
#include "risopt/multicast.hpp"
#include "risopt/solvers.hpp"

namespace py = pybind11;
using namespace risopt;

namespace {

PhaseConfig make_config(const std::vector<int>& indices, int k_levels) {
  return PhaseConfig(PhaseResolution(k_levels), indices);
}

MulticastInstance make_multicast(const std::vector<ChannelInstance>& users,
                                 const std::vector<double>& noise_dbm) {
  MulticastInstance inst;
  inst.users = users;
  inst.noise_power_dbm = noise_dbm;
  inst.validate();
  return inst;
}

}  // namespace

PYBIND11_MODULE(_risopt, m) {
  m.doc() = "Globally optimal K-ary discrete phase selection for RIS-aided links";

  py::register_exception<DuplicatePhaseError>(m, "DuplicatePhaseError");
  py::register_exception<OracleBudgetError>(m, "OracleBudgetError");

  py::class_<ChannelInstance>(m, "ChannelInstance",
                              "Direct link h0 plus cascaded per-element coefficients")
      .def(py::init<cplx, std::vector<cplx>>(), py::arg("h0"), py::arg("h"))
      .def_property_readonly("n", &ChannelInstance::size)
      .def_property_readonly("h0", &ChannelInstance::h0)
      .def_property_readonly("h", [](const ChannelInstance& c) { return c.h(); })
      .def_property_readonly("beta0", &ChannelInstance::beta0)
      .def_property_readonly("alpha0", &ChannelInstance::alpha0)
      .def_property_readonly("beta", [](const ChannelInstance& c) { return c.betas(); })
      .def_property_readonly("alpha", [](const ChannelInstance& c) { return c.alphas(); })
      .def("__repr__", [](const ChannelInstance& c) {
        return "<ChannelInstance n=" + std::to_string(c.size()) + ">";
      });

  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly("config",
                             [](const SolveResult& r) { return r.config.indices; })
      .def_property_readonly("k_levels",
                             [](const SolveResult& r) { return r.config.resolution.k_levels(); })
      .def_readonly("objective", &SolveResult::objective)
      .def_readonly("snr_boost", &SolveResult::snr_boost)
      .def_readonly("steps_executed", &SolveResult::steps_executed)
      .def_readonly("best_step", &SolveResult::best_step)
      .def_readonly("phase_updates", &SolveResult::phase_updates)
      .def_readonly("elapsed_seconds", &SolveResult::elapsed_seconds)
      .def("__repr__", [](const SolveResult& r) {
        return "<SolveResult objective=" + std::to_string(r.objective) +
               " steps=" + std::to_string(r.steps_executed) + ">";
      });

  py::class_<RisGeometry>(m, "RisGeometry")
      .def(py::init<>())
      .def(py::init([](int n_y, int n_z, double d_y, double d_z) {
             RisGeometry g{n_y, n_z, d_y, d_z};
             g.validate();
             return g;
           }),
           py::arg("n_y"), py::arg("n_z"), py::arg("d_y") = 0.5, py::arg("d_z") = 0.5)
      .def_readwrite("n_y", &RisGeometry::n_y)
      .def_readwrite("n_z", &RisGeometry::n_z)
      .def_readwrite("d_y", &RisGeometry::d_y)
      .def_readwrite("d_z", &RisGeometry::d_z)
      .def_property_readonly("n", &RisGeometry::size)
      .def_static("for_elements", &RisGeometry::for_elements, py::arg("n"));

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("ris_position", &ScenarioConfig::ris_position)
      .def_readwrite("bs_position", &ScenarioConfig::bs_position)
      .def_readwrite("ue_position", &ScenarioConfig::ue_position)
      .def_readwrite("kappa", &ScenarioConfig::kappa)
      .def_readwrite("tx_power_dbm", &ScenarioConfig::tx_power_dbm)
      .def_readwrite("noise_power_dbm", &ScenarioConfig::noise_power_dbm)
      .def_readwrite("direct_link_blocked", &ScenarioConfig::direct_link_blocked)
      .def_readwrite("seed", &ScenarioConfig::seed);

  py::class_<MulticastResult>(m, "MulticastResult")
      .def_property_readonly("config",
                             [](const MulticastResult& r) { return r.config.indices; })
      .def_readonly("min_snr", &MulticastResult::min_snr)
      .def_readonly("anchor", &MulticastResult::anchor)
      .def_readonly("steps_executed", &MulticastResult::steps_executed)
      .def_readonly("phase_updates", &MulticastResult::phase_updates);

  // solvers
  m.def("algorithm1", &algorithm1, py::arg("channel"), py::arg("k"),
        "Full breakpoint sweep; globally optimal");
  m.def("algorithm2", &algorithm2, py::arg("channel"), py::arg("k"),
        "N-step elementwise sweep; globally optimal (duplicate-free keys)");
  m.def("algorithm3", &algorithm3, py::arg("channel"), py::arg("k"),
        "Grouped sweep, N - N' steps; globally optimal");
  m.def(
      "upq",
      [](const ChannelInstance& ch, int k, std::optional<double> ref) {
        return upq(ch, k, ref).indices;
      },
      py::arg("channel"), py::arg("k"), py::arg("reference_phase") = std::nullopt,
      "Uniform polar quantization");
  m.def(
      "upq_at_mu",
      [](const ChannelInstance& ch, double mu, int k) { return upq_at_mu(ch, mu, k).indices; },
      py::arg("channel"), py::arg("mu_phase"), py::arg("k"));
  m.def("upq_result", &upq_result, py::arg("channel"), py::arg("k"));
  m.def("exhaustive_oracle", &exhaustive_oracle, py::arg("channel"), py::arg("k"),
        py::arg("budget") = kDefaultOracleBudget);
  m.def("candidate_enum_oracle", &candidate_enum_oracle, py::arg("channel"), py::arg("k"));
  m.def("lemma_select", &lemma_select, py::arg("alpha_n"), py::arg("mu_phase"), py::arg("k"));
  m.def(
      "evaluate_gain",
      [](const ChannelInstance& ch, const std::vector<int>& indices, int k) {
        const GainAccumulator acc = evaluate_gain(ch, make_config(indices, k));
        return py::make_tuple(acc.g, acc.power());
      },
      py::arg("channel"), py::arg("config"), py::arg("k"),
      "Returns (g, |g|^2) for a configuration");
  m.def(
      "verify_certificate",
      [](const ChannelInstance& ch, const std::vector<int>& indices, int k) {
        return verify_certificate(ch, make_config(indices, k));
      },
      py::arg("channel"), py::arg("config"), py::arg("k"));

  // channel model
  m.def("sample_channel", &sample_channel, py::arg("geometry"), py::arg("scenario"),
        py::arg("trial"), py::arg("user") = 0,
        "Draw one cascaded Rician instance for (seed, trial, user)");
  m.def("array_response", &array_response, py::arg("geometry"), py::arg("elevation"),
        py::arg("azimuth"));
  m.def(
      "cascade",
      [](const std::vector<cplx>& u, const std::vector<cplx>& b) { return cascade(u, b); },
      py::arg("h_u"), py::arg("h_b"));
  m.def("p2_augment", &p2_augment, py::arg("channel"));
  m.def(
      "p2_extract",
      [](const std::vector<int>& indices, int k) { return p2_extract(make_config(indices, k)).indices; },
      py::arg("augmented_config"), py::arg("k"));

  // metrics
  m.def("rate_bps_hz", &rate_bps_hz, py::arg("objective"), py::arg("tx_power_dbm"),
        py::arg("noise_power_dbm"));
  m.def(
      "normalized_power",
      [](const ChannelInstance& ch, const std::vector<int>& indices, int k) {
        return normalized_power(ch, make_config(indices, k));
      },
      py::arg("channel"), py::arg("config"), py::arg("k"));
  m.def("upq_efficiency", &upq_efficiency, py::arg("k"));
  m.def("efficiency_gain_db", &efficiency_gain_db, py::arg("k"));
  m.def(
      "percentile",
      [](std::vector<double> samples, double p) { return Aggregate(std::move(samples)).percentile(p); },
      py::arg("samples"), py::arg("p"));

  // multicast
  m.def(
      "multicast_solve",
      [](const std::vector<ChannelInstance>& users, int k, double tx_power_dbm,
         const std::vector<double>& noise_dbm) {
        return multicast_solve(make_multicast(users, noise_dbm), k, tx_power_dbm);
      },
      py::arg("users"), py::arg("k"), py::arg("tx_power_dbm") = 30.0,
      py::arg("noise_power_dbm") = std::vector<double>{});
  m.def(
      "multicast_upq",
      [](const std::vector<ChannelInstance>& users, int k, double tx_power_dbm,
         const std::vector<double>& noise_dbm, int reference_user) {
        return multicast_upq(make_multicast(users, noise_dbm), k, tx_power_dbm, reference_user);
      },
      py::arg("users"), py::arg("k"), py::arg("tx_power_dbm") = 30.0,
      py::arg("noise_power_dbm") = std::vector<double>{}, py::arg("reference_user") = 0);

#ifdef VERSION_INFO
#define RISOPT_STR_INNER(x) #x
#define RISOPT_STR(x) RISOPT_STR_INNER(x)
  m.attr("__version__") = RISOPT_STR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
