// Copyright 2026 The pi-test Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pitest/bounds.hpp"
#include "pitest/csv.hpp"
#include "pitest/dcov.hpp"
#include "pitest/dp_covariance.hpp"
#include "pitest/error.hpp"
#include "pitest/harness.hpp"
#include "pitest/protocol.hpp"

namespace py = pybind11;

namespace {

using pitest::DataMatrix;

DataMatrix Data(const Eigen::MatrixXd& m) { return DataMatrix(m); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "One-way locally differentially private independence test";

  // Messages start with the error code name, e.g. "parse-error: ...".
  py::register_exception<pitest::Error>(m, "PiTestError", PyExc_ValueError);

  py::class_<pitest::PrivacyParams>(m, "PrivacyParams")
      .def(py::init([](double epsilon, double delta, double eta, double nu) {
             pitest::PrivacyParams p{epsilon, delta, eta, nu};
             p.Validate();
             return p;
           }),
           py::arg("epsilon") = 1.0, py::arg("delta") = 1e-4, py::arg("eta") = 0.1,
           py::arg("nu") = 0.01)
      .def_readonly("epsilon", &pitest::PrivacyParams::epsilon)
      .def_readonly("delta", &pitest::PrivacyParams::delta)
      .def_readonly("eta", &pitest::PrivacyParams::eta)
      .def_readonly("nu", &pitest::PrivacyParams::nu)
      .def("__eq__", [](const pitest::PrivacyParams& a, const pitest::PrivacyParams& b) {
        return a == b;
      })
      .def("__repr__", [](const pitest::PrivacyParams& p) {
        return "PrivacyParams(epsilon=" + std::to_string(p.epsilon) +
               ", delta=" + std::to_string(p.delta) + ", eta=" + std::to_string(p.eta) +
               ", nu=" + std::to_string(p.nu) + ")";
      });

  py::class_<pitest::JlParams>(m, "JlParams")
      .def_readonly("r", &pitest::JlParams::r)
      .def_readonly("w", &pitest::JlParams::w);

  m.def("jl_params", &pitest::ComputeJlParams, py::arg("params"));
  m.def("tau", &pitest::Tau, py::arg("params"), py::arg("m"), py::arg("n"));
  m.def("mechanism_tau", &pitest::MechanismTau, py::arg("params"));
  m.def("per_release_params", &pitest::PerReleaseParams, py::arg("params"));

  m.def("dcov_sq_direct",
        [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
          return pitest::DcovSqDirect(Data(x), Data(y));
        },
        py::arg("x"), py::arg("y"));
  m.def("dcov_sq_laplacian",
        [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
          return pitest::DcovSqLaplacian(Data(x), Data(y));
        },
        py::arg("x"), py::arg("y"));
  m.def("dcov_sq_directional",
        [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
          return pitest::DcovSqDirectional(pitest::FactorW(Data(x)), Data(y));
        },
        py::arg("x"), py::arg("y"));
  m.def("dcov_sq_unbiased",
        [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
          return pitest::DcovSqUnbiased(Data(x), Data(y));
        },
        py::arg("x"), py::arg("y"));
  m.def("s_hat",
        [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
          return pitest::SHat(Data(x), Data(y));
        },
        py::arg("x"), py::arg("y"));
  m.def("distance_correlation_sq",
        [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
          return pitest::DistanceCorrelationSq(Data(x), Data(y));
        },
        py::arg("x"), py::arg("y"));
  m.def("laplacian_w",
        [](const Eigen::MatrixXd& x) { return pitest::LaplacianW(Data(x)).values(); },
        py::arg("x"));
  m.def("laplacian_s", [](Eigen::Index n) { return pitest::LaplacianS(n).values(); },
        py::arg("n"));
  m.def("test_statistic", &pitest::TestStatistic, py::arg("omega_sq"), py::arg("s"),
        py::arg("n"));
  m.def("rejection_threshold", &pitest::RejectionThreshold, py::arg("alpha"));
  m.def("normal_quantile", &pitest::NormalQuantile, py::arg("p"));

  py::class_<pitest::TestDecision>(m, "TestDecision")
      .def_readonly("statistic", &pitest::TestDecision::statistic)
      .def_readonly("threshold", &pitest::TestDecision::threshold)
      .def_readonly("alpha", &pitest::TestDecision::alpha)
      .def_readonly("reject", &pitest::TestDecision::reject);
  m.def("decide", &pitest::Decide, py::arg("statistic"), py::arg("alpha"));

  m.def("lower_bound_ratio", &pitest::LowerBoundRatio, py::arg("ratio"), py::arg("eta"));
  m.def("upper_bound_ratio", &pitest::UpperBoundRatio, py::arg("ratio"), py::arg("eta"),
        py::arg("tau"), py::arg("s_param"));

  py::class_<pitest::AlicePackage>(m, "AlicePackage")
      .def_readonly("format_version", &pitest::AlicePackage::format_version)
      .def_readonly("n", &pitest::AlicePackage::n)
      .def_readonly("privacy", &pitest::AlicePackage::privacy)
      .def_property_readonly(
          "proj_b", [](const pitest::AlicePackage& p) { return p.proj_b.values(); })
      .def_property_readonly(
          "proj_x", [](const pitest::AlicePackage& p) { return p.proj_x.values(); });

  m.def(
      "alice_prepare",
      [](const Eigen::MatrixXd& x, const pitest::PrivacyParams& privacy,
         std::uint64_t seed) {
        py::gil_scoped_release release;
        return pitest::AlicePrepare(Data(x), privacy, seed);
      },
      py::arg("x"), py::arg("privacy"), py::arg("seed"));
  m.def(
      "serialize_package",
      [](const pitest::AlicePackage& p) { return py::bytes(pitest::SerializePackage(p)); },
      py::arg("package"));
  m.def(
      "deserialize_package",
      [](const py::bytes& data) {
        return pitest::DeserializePackage(static_cast<std::string>(data));
      },
      py::arg("data"));

  py::class_<pitest::TestReport>(m, "TestReport")
      .def_readonly("omega_bar_sq", &pitest::TestReport::omega_bar_sq)
      .def_readonly("s_bar", &pitest::TestReport::s_bar)
      .def_readonly("statistic", &pitest::TestReport::statistic)
      .def_readonly("threshold", &pitest::TestReport::threshold)
      .def_readonly("alpha", &pitest::TestReport::alpha)
      .def_readonly("reject", &pitest::TestReport::reject)
      .def_readonly("degenerate", &pitest::TestReport::degenerate)
      .def_property_readonly("bounds",
                             [](const pitest::TestReport& r) {
                               return py::dict(
                                   py::arg("lower") = r.bounds.lower,
                                   py::arg("upper") = r.bounds.upper,
                                   py::arg("s_param") = r.bounds.s_param,
                                   py::arg("tau_used") = r.bounds.tau_used,
                                   py::arg("s_param_clamped") = r.bounds.s_param_clamped);
                             })
      .def_readonly("tau_mech", &pitest::TestReport::tau_mech)
      .def_readonly("tau_closed_form", &pitest::TestReport::tau_closed_form)
      .def_readonly("n", &pitest::TestReport::n)
      .def_readonly("m", &pitest::TestReport::m)
      .def_readonly("r", &pitest::TestReport::r)
      .def_readonly("w", &pitest::TestReport::w)
      .def("to_json", &pitest::ReportToJson);

  m.def(
      "bob_evaluate",
      [](const pitest::AlicePackage& p, const Eigen::MatrixXd& y, double alpha,
         std::optional<double> s_param) {
        return pitest::BobEvaluate(p, Data(y), alpha, s_param);
      },
      py::arg("package"), py::arg("y"), py::arg("alpha") = 0.05,
      py::arg("s_param") = py::none());

  py::class_<pitest::NonPrivateResult>(m, "NonPrivateResult")
      .def_readonly("omega_sq", &pitest::NonPrivateResult::omega_sq)
      .def_readonly("s", &pitest::NonPrivateResult::s)
      .def_readonly("statistic", &pitest::NonPrivateResult::statistic)
      .def_readonly("decision", &pitest::NonPrivateResult::decision)
      .def_readonly("degenerate", &pitest::NonPrivateResult::degenerate);
  m.def(
      "nonprivate_test",
      [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double alpha) {
        return pitest::NonPrivateTest(Data(x), Data(y), alpha);
      },
      py::arg("x"), py::arg("y"), py::arg("alpha") = 0.05);

  m.def(
      "generate_synthetic",
      [](Eigen::Index n, Eigen::Index d, Eigen::Index dim_y, double dependence,
         std::uint64_t seed, double scale) {
        pitest::DatasetPair pair =
            pitest::GenerateSynthetic(n, d, dim_y, dependence, seed, scale);
        return py::make_tuple(pair.x.values(), pair.y.values());
      },
      py::arg("n"), py::arg("d"), py::arg("m"), py::arg("dependence"), py::arg("seed"),
      py::arg("scale") = 1.0);

  m.def(
      "load_csv",
      [](const std::string& path, bool has_header) {
        return pitest::LoadCsv(path, has_header).values();
      },
      py::arg("path"), py::arg("has_header") = false);

  m.def(
      "run_sweep",
      [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, std::vector<double> epsilons,
         std::vector<double> eta_values, std::int64_t replications, double delta, double nu,
         double alpha, std::uint64_t seed, unsigned threads) {
        pitest::SweepConfig cfg;
        cfg.epsilons = std::move(epsilons);
        cfg.eta_values = std::move(eta_values);
        cfg.replications = replications;
        cfg.delta = delta;
        cfg.nu = nu;
        cfg.alpha = alpha;
        cfg.master_seed = seed;
        cfg.threads = threads;
        const DataMatrix dx = Data(x), dy = Data(y);
        std::vector<pitest::SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = pitest::RunSweep(cfg, dx, dy);
        }
        py::list out;
        for (const pitest::SweepRow& r : rows) {
          out.append(py::dict(py::arg("epsilon") = r.epsilon, py::arg("eta") = r.eta,
                              py::arg("mean_rel_err_gamma") = r.mean_rel_err_gamma,
                              py::arg("sd_gamma") = r.sd_gamma,
                              py::arg("mean_rel_err_s") = r.mean_rel_err_s,
                              py::arg("sd_s") = r.sd_s,
                              py::arg("mean_rel_err_omega") = r.mean_rel_err_omega,
                              py::arg("sd_omega") = r.sd_omega));
        }
        return out;
      },
      py::arg("x"), py::arg("y"), py::arg("epsilons") = std::vector<double>{0.5, 1, 2, 4, 8},
      py::arg("eta_values") = std::vector<double>{0.05, 0.1}, py::arg("replications") = 50,
      py::arg("delta") = 2e-4, py::arg("nu") = 0.05, py::arg("alpha") = 0.05,
      py::arg("seed") = 0, py::arg("threads") = 0);
}
