// Copyright 2026 The dppipa Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dppipa/dpp_oracle.hpp"
#include "dppipa/error.hpp"
#include "dppipa/model_problems.hpp"
#include "dppipa/partition.hpp"
#include "dppipa/sampler.hpp"
#include "dppipa/scdm.hpp"

namespace py = pybind11;
using namespace dppipa;

namespace {

py::array_t<std::uint32_t> to_array(const std::vector<SampleSet>& samples, int k) {
  py::array_t<std::uint32_t> out({static_cast<py::ssize_t>(samples.size()),
                                  static_cast<py::ssize_t>(k)});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t r = 0; r < samples.size(); ++r)
    for (int i = 0; i < k; ++i) view(r, i) = samples[r].points[i];
  return out;
}

}  // namespace

PYBIND11_MODULE(_dppipa, m) {
  m.doc() = "Independent-particle approximation to elementary determinantal point processes";

  py::register_exception<Error>(m, "DppError", PyExc_RuntimeError);

  py::enum_<Boundary>(m, "Boundary")
      .value("periodic", Boundary::periodic)
      .value("dirichlet", Boundary::dirichlet);
  py::enum_<PotentialKind>(m, "PotentialKind")
      .value("none", PotentialKind::none)
      .value("corner_well", PotentialKind::corner_well)
      .value("center_well", PotentialKind::center_well);

  py::class_<Grid>(m, "Grid")
      .def_readonly("n", &Grid::n)
      .def_readonly("bc", &Grid::bc)
      .def_readonly("h", &Grid::h)
      .def_property_readonly("size", &Grid::size)
      .def("point", &Grid::point, py::arg("cell"));
  m.def("build_grid", &build_grid, py::arg("n"), py::arg("bc"));

  py::class_<PotentialSpec>(m, "PotentialSpec")
      .def(py::init([](PotentialKind kind, double amplitude) {
             return PotentialSpec{kind, amplitude};
           }),
           py::arg("kind") = PotentialKind::none, py::arg("amplitude") = 512.0)
      .def("__call__", &PotentialSpec::operator(), py::arg("x1"), py::arg("x2"));
  m.def("assemble_operator", &assemble_operator, py::arg("grid"), py::arg("potential"));

  py::class_<OrbitalSet>(m, "OrbitalSet")
      .def_readonly("grid", &OrbitalSet::grid)
      .def_readonly("phi", &OrbitalSet::phi)
      .def_readonly("eigenvalues", &OrbitalSet::eigenvalues)
      .def_readonly("fermi_gap", &OrbitalSet::fermi_gap)
      .def_readonly("near_degenerate", &OrbitalSet::near_degenerate)
      .def_property_readonly("k", &OrbitalSet::k);
  m.def("make_orbital_set", &make_orbital_set, py::arg("phi"), py::arg("grid") = py::none());
  m.def("random_orthonormal", &random_orthonormal, py::arg("rows"), py::arg("cols"),
        py::arg("seed"));
  m.def("closed_shell_counts", &closed_shell_counts, py::arg("n"));
  m.def("fourier_orbitals", &fourier_orbitals, py::arg("grid"), py::arg("k"));
  m.def("lowest_eigenmodes", &lowest_eigenmodes, py::arg("grid"), py::arg("operator"),
        py::arg("k"));
  m.def("density", &density, py::arg("orbitals"));

  py::class_<ScdmResult>(m, "ScdmResult")
      .def_readonly("pivots", &ScdmResult::pivots)
      .def_readonly("v", &ScdmResult::v)
      .def_readonly("conditioning", &ScdmResult::conditioning);
  m.def("pivoted_qr_pivots", &pivoted_qr_pivots, py::arg("a"));
  m.def("inv_sqrt_spd", &inv_sqrt_spd, py::arg("m"), py::arg("tol") = 1e-10);
  m.def("scdm_localize", &scdm_localize, py::arg("orbitals"));
  m.def("column_spread", &column_spread, py::arg("v"), py::arg("grid"));

  py::class_<BalanceParams>(m, "BalanceParams")
      .def(py::init([](double eta, double eps, int max_iters, std::uint64_t seed) {
             return BalanceParams{eta, eps, max_iters, seed};
           }),
           py::arg("eta") = 0.5, py::arg("eps") = 0.1, py::arg("max_iters") = 200,
           py::arg("seed") = 0)
      .def_readwrite("eta", &BalanceParams::eta)
      .def_readwrite("eps", &BalanceParams::eps)
      .def_readwrite("max_iters", &BalanceParams::max_iters)
      .def_readwrite("seed", &BalanceParams::seed);
  py::class_<Partition>(m, "Partition")
      .def_readonly("labels", &Partition::labels)
      .def_readonly("alpha", &Partition::alpha)
      .def_readonly("masses", &Partition::masses)
      .def_readonly("balance_iters", &Partition::balance_iters)
      .def_readonly("converged", &Partition::converged)
      .def_readonly("baseline_imbalance", &Partition::baseline_imbalance)
      .def_property_readonly("k", &Partition::k);
  m.def(
      "assign_labels",
      [](const Eigen::MatrixXd& v, const Eigen::VectorXd& alpha, std::uint64_t seed,
         std::uint64_t stream) { return assign_labels(v, alpha, CounterRng{seed, stream}); },
      py::arg("v"), py::arg("alpha"), py::arg("seed") = 0, py::arg("stream") = 0);
  m.def("region_masses", &region_masses, py::arg("labels"), py::arg("rho"), py::arg("k"));
  m.def("balance", &balance, py::arg("v"), py::arg("rho"), py::arg("params") = BalanceParams{});

  py::class_<IndependentModel>(m, "IndependentModel")
      .def_readonly("region_of", &IndependentModel::region_of)
      .def_readonly("weight_of", &IndependentModel::weight_of)
      .def_property_readonly("k", &IndependentModel::k)
      .def("region_cells",
           [](const IndependentModel& model, int i) { return model.regions.at(i).cells; })
      .def("region_weights",
           [](const IndependentModel& model, int i) { return model.regions.at(i).weights; });
  m.def("build_model", &build_model, py::arg("partition"), py::arg("rho"),
        py::arg("grid") = py::none());

  m.def(
      "sample_many",
      [](const IndependentModel& model, std::size_t count, std::uint64_t seed) {
        std::vector<SampleSet> samples;
        {
          py::gil_scoped_release release;
          samples = sample_many(model, count, seed);
        }
        return to_array(samples, model.k());
      },
      py::arg("model"), py::arg("count"), py::arg("seed") = 0,
      "count x k array of cell indices, column i drawn from region i");

  py::class_<ComparisonReport>(m, "ComparisonReport")
      .def_readonly("marginal_l1", &ComparisonReport::marginal_l1)
      .def_readonly("pair_error", &ComparisonReport::pair_error)
      .def_readonly("tv_small", &ComparisonReport::tv_small)
      .def_readonly("pairs", &ComparisonReport::pairs);
  m.def(
      "brute_force_pmf",
      [](const OrbitalSet& orbitals) {
        const ExactPmf pmf = brute_force_pmf(orbitals);
        py::array_t<std::uint32_t> subsets(
            {static_cast<py::ssize_t>(pmf.count()), static_cast<py::ssize_t>(pmf.k)});
        std::copy(pmf.cells.begin(), pmf.cells.end(), subsets.mutable_data());
        return py::make_tuple(subsets, py::array_t<double>(pmf.probs.size(), pmf.probs.data()));
      },
      py::arg("orbitals"), "(subsets, probs) over all k-subsets in lexicographic order");
  m.def(
      "exact_sample",
      [](const OrbitalSet& orbitals, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return exact_sample(orbitals, rng);
      },
      py::arg("orbitals"), py::arg("seed") = 0, py::arg("stream") = 0);
  m.def("pair_inclusion_exact", &pair_inclusion_exact, py::arg("orbitals"), py::arg("x"),
        py::arg("y"));
  m.def("pair_inclusion_independent", &pair_inclusion_independent, py::arg("model"),
        py::arg("x"), py::arg("y"));
  m.def(
      "compare",
      [](const OrbitalSet& orbitals, const IndependentModel& model, std::size_t pairs,
         std::uint64_t seed, bool brute_force) {
        return compare(orbitals, model, CompareParams{pairs, seed, brute_force});
      },
      py::arg("orbitals"), py::arg("model"), py::arg("pairs") = 10000, py::arg("seed") = 0,
      py::arg("brute_force") = true);
}
