// Python module: materials are passed as JSON text in the schema of
// material_config.hpp. Lengths in nm, frequencies in eV, results in SI.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "casimir/app/repulsion.hpp"
#include "casimir/error.hpp"
#include "casimir/geometry.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/material_config.hpp"
#include "casimir/optics.hpp"
#include "casimir/reflection.hpp"

namespace py = pybind11;
using namespace casimir;

namespace {

materials::PlateMaterial load(const std::string& text) {
  return materials::parse_material_json(text);
}

lifshitz::MatsubaraGrid grid(double temperature, double tail_tol, double quad_rel_tol,
                             int max_terms, int threads) {
  lifshitz::MatsubaraGrid g;
  g.temperature = temperature;
  g.tail_tol = tail_tol;
  g.quad_rel_tol = quad_rel_tol;
  g.max_terms = max_terms;
  g.threads = threads;
  return g;
}

py::dict to_dict(const lifshitz::SumResult& s) {
  py::dict d;
  d["value"] = s.value;
  d["terms_used"] = s.terms_used;
  d["quadrature_error"] = s.quadrature_error;
  d["tail_estimate"] = s.tail_estimate;
  d["static_probe"] = s.static_probe;
  return d;
}

#define GRID_ARGS                                                                      \
  py::arg("temperature") = 300.0, py::arg("tail_tol") = 1e-8,                          \
  py::arg("quad_rel_tol") = 1e-9, py::arg("max_terms") = 200000, py::arg("threads") = 1

}  // namespace

PYBIND11_MODULE(_casimir, m) {
  m.doc() = "Thermal Casimir and Casimir-Polder forces from Lifshitz theory";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("normalize_material",
        [](const std::string& text) { return materials::material_to_json(load(text)); },
        py::arg("material"));

  m.def("eval_eps",
        [](const std::string& mat, double xi, double temperature) {
          return materials::eval_eps(load(mat).permittivity, xi, temperature);
        },
        py::arg("material"), py::arg("xi"), py::arg("temperature") = 300.0);

  m.def("fresnel",
        [](const std::string& mat, double xi, double k_perp, int l, double temperature) {
          const auto r = reflection::fresnel(load(mat), {xi, k_perp}, l, temperature);
          return py::make_tuple(r.tm, r.te);
        },
        py::arg("material"), py::arg("xi"), py::arg("k_perp"), py::arg("l"),
        py::arg("temperature") = 300.0, "(r_TM, r_TE) at xi (eV), k_perp (nm^-1)");

  auto plates = [](const std::string& m1, const std::string& m2, double a, bool modified) {
    return lifshitz::PlatePairSpec{load(m1), load(m2), a, modified};
  };

  m.def("pressure",
        [plates](const std::string& m1, const std::string& m2, double a_nm, bool modified_tm,
                 double t, double tail, double quad, int max_terms, int threads) {
          return to_dict(lifshitz::pressure(plates(m1, m2, a_nm, modified_tm),
                                            grid(t, tail, quad, max_terms, threads)));
        },
        py::arg("material1"), py::arg("material2"), py::arg("a_nm"),
        py::arg("modified_tm") = false, GRID_ARGS, "Pressure between plates, Pa");

  m.def("free_energy",
        [plates](const std::string& m1, const std::string& m2, double a_nm, bool modified_tm,
                 double t, double tail, double quad, int max_terms, int threads) {
          return to_dict(lifshitz::free_energy(plates(m1, m2, a_nm, modified_tm),
                                               grid(t, tail, quad, max_terms, threads)));
        },
        py::arg("material1"), py::arg("material2"), py::arg("a_nm"),
        py::arg("modified_tm") = false, GRID_ARGS, "Free energy per unit area, J/m^2");

  m.def("entropy",
        [plates](const std::string& m1, const std::string& m2, double a_nm, bool modified_tm,
                 double t, double tail, double quad, int max_terms, int threads) {
          const auto s = lifshitz::entropy(plates(m1, m2, a_nm, modified_tm),
                                           grid(t, tail, quad, max_terms, threads));
          return py::make_tuple(s.value, s.error);
        },
        py::arg("material1"), py::arg("material2"), py::arg("a_nm"),
        py::arg("modified_tm") = false, GRID_ARGS, "(S, error), J/(m^2 K)");

  m.def("ideal_metal_pressure", &lifshitz::ideal_metal_pressure, py::arg("a_nm"));
  m.def("ideal_metal_free_energy", &lifshitz::ideal_metal_free_energy, py::arg("a_nm"));

  m.def("casimir_polder",
        [](const std::string& wall, double alpha0_nm3, double a_nm,
           std::optional<double> alpha_frequency, double beta0_nm3,
           std::optional<double> beta_frequency, double t, double tail, double quad,
           int max_terms, int threads) {
          lifshitz::AtomSpec atom{alpha0_nm3, alpha_frequency, beta0_nm3, beta_frequency};
          const auto r = lifshitz::casimir_polder(atom, load(wall), a_nm,
                                                  grid(t, tail, quad, max_terms, threads));
          py::dict d;
          d["free_energy"] = to_dict(r.free_energy);
          d["force"] = to_dict(r.force);
          return d;
        },
        py::arg("wall"), py::arg("alpha0_nm3"), py::arg("a_nm"),
        py::arg("alpha_frequency") = py::none(), py::arg("beta0_nm3") = 0.0,
        py::arg("beta_frequency") = py::none(), GRID_ARGS,
        "Atom-wall free energy (J) and force (N)");

  m.def("beta",
        [](double a_nm, double a1, double a2, double period, double phase) {
          return geometry::beta(a_nm, {a1, a2, period, phase});
        },
        py::arg("a_nm"), py::arg("amplitude_plate"), py::arg("amplitude_sphere"),
        py::arg("period"), py::arg("phase"));

  m.def("lateral_force",
        [](const std::string& mat, double a_nm, double radius_um, double a1, double a2,
           double period, double phase, bool modified_tm, double t, double tail, double quad,
           int max_terms, int threads) {
          const auto material = load(mat);
          const auto r = geometry::lateral_force({material, material, a_nm, modified_tm},
                                                 {radius_um, a_nm}, {a1, a2, period, phase},
                                                 grid(t, tail, quad, max_terms, threads));
          py::dict d;
          d["value"] = r.value;
          d["beta"] = r.beta;
          d["matsubara_terms"] = r.matsubara_terms;
          d["max_harmonic"] = r.max_harmonic;
          d["pfa_warning"] = r.pfa_warning;
          return d;
        },
        py::arg("material"), py::arg("a_nm"), py::arg("radius_um"), py::arg("amplitude_plate"),
        py::arg("amplitude_sphere"), py::arg("period"), py::arg("phase"),
        py::arg("modified_tm") = false, GRID_ARGS, "Lateral force on a corrugated sphere, N");

  m.def("sphere_force",
        [plates](const std::string& m1, const std::string& m2, double a_nm, double radius_um,
                 bool modified_tm, double t, double tail, double quad, int max_terms,
                 int threads) {
          const auto f = geometry::pfa_sphere_force(plates(m1, m2, a_nm, modified_tm),
                                                    {radius_um, a_nm},
                                                    grid(t, tail, quad, max_terms, threads));
          return py::make_tuple(f.value, f.pfa_error_bound);
        },
        py::arg("material1"), py::arg("material2"), py::arg("a_nm"), py::arg("radius_um"),
        py::arg("modified_tm") = false, GRID_ARGS, "(F in N, a/R)");

  m.def("kramers_kronig",
        [](std::vector<double> omega, std::vector<double> im_eps, std::vector<double> xi,
           std::optional<double> drude_plasma, std::optional<double> drude_relaxation,
           int threads) {
          optics::OpticalDataTable table{std::move(omega), std::move(im_eps)};
          optics::validate(table);
          optics::ExtrapolationSpec ext;
          if (drude_plasma && drude_relaxation) ext.drude = {{*drude_plasma, *drude_relaxation}};
          return optics::kramers_kronig(table, ext, xi, threads);
        },
        py::arg("omega"), py::arg("im_eps"), py::arg("xi"), py::arg("drude_plasma") = py::none(),
        py::arg("drude_relaxation") = py::none(), py::arg("threads") = 1,
        "eps(i xi) from tabulated Im eps(omega)");

  m.def("repulsion_check",
        [](const std::string& eps0, const std::string& eps1, const std::string& eps2,
           std::vector<double> xi, double temperature) {
          const auto v = app::repulsion_check(load(eps0).permittivity, load(eps1).permittivity,
                                              load(eps2).permittivity, xi, temperature);
          return py::make_tuple(v.holds, v.violations);
        },
        py::arg("eps0"), py::arg("eps1"), py::arg("eps2"), py::arg("xi"),
        py::arg("temperature") = 300.0, "(holds, violating xi)");
}
