#include "weylq/json_io.hpp"

namespace weylq {

namespace {

const Json& require_field(const Json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) throw schema_error(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw schema_error(ptr + "/" + key, "missing required field");
  return *it;
}

double require_number(const Json& j, const std::string& ptr) {
  if (!j.is_number()) throw schema_error(ptr, "expected a number");
  return j.get<double>();
}

long long require_integer(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw schema_error(ptr, "expected an integer");
  return j.get<long long>();
}

std::string require_string(const Json& j, const std::string& ptr) {
  if (!j.is_string()) throw schema_error(ptr, "expected a string");
  return j.get<std::string>();
}

const Json& require_array(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw schema_error(ptr, "expected an array");
  return j;
}

Cplx parse_complex(const Json& j, const std::string& ptr) {
  double re = require_number(require_field(j, "re", ptr), ptr + "/re");
  double im = 0;
  if (j.contains("im")) im = require_number(j.at("im"), ptr + "/im");
  return Cplx(re, im);
}

}  // namespace

RootSystem parse_group_json(const Json& j, const std::string& ptr) {
  std::string series = require_string(require_field(j, "series", ptr), ptr + "/series");
  if (series.size() != 1) throw schema_error(ptr + "/series", "expected a single letter");
  long long rank = require_integer(require_field(j, "rank", ptr), ptr + "/rank");
  GroupForm form = GroupForm::simply_connected;
  if (j.contains("form")) {
    std::string f = require_string(j.at("form"), ptr + "/form");
    if (f == "simply_connected")
      form = GroupForm::simply_connected;
    else if (f == "adjoint")
      form = GroupForm::adjoint;
    else
      throw schema_error(ptr + "/form", "expected 'simply_connected' or 'adjoint'");
  }
  try {
    return build_root_system(series_from_char(series[0]), static_cast<int>(rank), form);
  } catch (const configuration_error& e) {
    throw schema_error(ptr, e.what());
  }
}

ParsedMeasure parse_measure_json(const Json& j) {
  ParsedMeasure out{parse_group_json(require_field(j, "group", ""), "/group"), {}};
  const Json& atoms = require_array(require_field(j, "atoms", ""), "/atoms");
  std::vector<std::pair<TorusPoint, Cplx>> raw;
  for (size_t i = 0; i < atoms.size(); ++i) {
    std::string ptr = "/atoms/" + std::to_string(i);
    const Json& atom = atoms[i];
    const Json& point = require_field(atom, "point", ptr);
    std::string kind = require_string(require_field(point, "kind", ptr + "/point"),
                                      ptr + "/point/kind");
    if (kind != "angle")
      throw schema_error(ptr + "/point/kind", "only 'angle' points are supported in measures");
    const Json& coords = require_array(require_field(point, "coords_2pi", ptr + "/point"),
                                       ptr + "/point/coords_2pi");
    if (static_cast<int>(coords.size()) != out.rs.rank)
      throw schema_error(ptr + "/point/coords_2pi",
                         "expected " + std::to_string(out.rs.rank) + " coordinates");
    RVec fracs(out.rs.rank);
    for (int k = 0; k < out.rs.rank; ++k) {
      std::string c = require_string(coords[k], ptr + "/point/coords_2pi/" + std::to_string(k));
      try {
        fracs[k] = parse_rational(c);
      } catch (const error&) {
        throw schema_error(ptr + "/point/coords_2pi/" + std::to_string(k),
                           "expected an exact rational like '1/4'");
      }
    }
    Cplx weight = parse_complex(require_field(atom, "weight", ptr), ptr + "/weight");
    raw.emplace_back(torus_angle_exact(out.rs, std::move(fracs)), weight);
  }
  out.measure = make_measure(out.rs, std::move(raw));
  return out;
}

CentralState parse_central_state_json(const Json& j) {
  CentralState state;
  state.n = static_cast<int>(require_integer(require_field(j, "N", ""), "/N"));
  if (state.n < 2) throw schema_error("/N", "N must be >= 2");
  state.q = require_number(require_field(j, "q", ""), "/q");
  if (!(state.q > 0 && state.q < 1)) throw schema_error("/q", "q must lie in (0,1)");
  const Json& atoms = require_array(require_field(j, "atoms", ""), "/atoms");
  if (atoms.empty()) throw schema_error("/atoms", "at least one atom is required");
  const int rank = state.n - 1;
  for (size_t i = 0; i < atoms.size(); ++i) {
    std::string ptr = "/atoms/" + std::to_string(i);
    const Json& atom = atoms[i];
    const Json& re = require_array(require_field(atom, "nu_re", ptr), ptr + "/nu_re");
    if (static_cast<int>(re.size()) != rank)
      throw schema_error(ptr + "/nu_re", "expected " + std::to_string(rank) + " coordinates");
    CVec nu(rank, Cplx(0, 0));
    for (int k = 0; k < rank; ++k)
      nu[k] = Cplx(require_number(re[k], ptr + "/nu_re/" + std::to_string(k)), 0);
    if (atom.contains("nu_im")) {
      const Json& im = require_array(atom.at("nu_im"), ptr + "/nu_im");
      if (static_cast<int>(im.size()) != rank)
        throw schema_error(ptr + "/nu_im", "expected " + std::to_string(rank) + " coordinates");
      for (int k = 0; k < rank; ++k)
        nu[k] += Cplx(0, require_number(im[k], ptr + "/nu_im/" + std::to_string(k)));
    }
    CentralStateAtom a;
    a.nu_fw = std::move(nu);
    a.mass = require_number(require_field(atom, "mass", ptr), ptr + "/mass");
    if (!(a.mass > 0)) throw schema_error(ptr + "/mass", "mass must be positive");
    if (atom.contains("assert_positive_definite")) {
      if (!atom.at("assert_positive_definite").is_boolean())
        throw schema_error(ptr + "/assert_positive_definite", "expected a boolean");
      a.asserted_positive_definite = atom.at("assert_positive_definite").get<bool>();
    }
    state.atoms.push_back(std::move(a));
  }
  return state;
}

Json complex_to_json(const Cplx& c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

Json hm_to_json(const HMDecomposition& hm) {
  Json center = Json::array();
  for (size_t i = 0; i < hm.center_coefficients.size(); ++i)
    center.push_back(
        Json{{"point_index", i}, {"c", complex_to_json(hm.center_coefficients[i])}});
  Json residual = Json::array();
  for (const auto& row : hm.residual) residual.push_back(Json::array({row[0], row[1], row[2]}));
  return Json{{"center", center}, {"residual", residual}, {"horizon", hm.horizon}};
}

Json gram_to_json(const GramReport& report) {
  return Json{{"min_eigenvalue", report.min_eigenvalue},
              {"norm", report.norm},
              {"pass", report.pass},
              {"hermitian", report.hermitian},
              {"hermiticity_defect", report.hermiticity_defect}};
}

Json fusion_to_json(const RootSystem& rs, const FusionDecomposition& dec) {
  Json terms = Json::array();
  Int total = 0;
  for (const auto& [nu, mult] : dec.terms) {
    Int d = dim_v(rs, Weight{nu});
    total += mult * d;
    terms.push_back(Json{{"weight", nu}, {"mult", mult}, {"dim", d.convert_to<long long>()}});
  }
  bool dim_check = total == dim_v(rs, dec.lhs) * dim_v(rs, dec.rhs);
  return Json{{"terms", terms}, {"dim_check", dim_check}};
}

Json decomposition_to_json(const DecompositionReport& report) {
  Json components = Json::array();
  for (const auto& comp : report.components) {
    components.push_back(Json{{"chi_class", comp.class_id},
                              {"chi_lift", comp.p_fw},
                              {"atoms", comp.atom_indices},
                              {"norm", comp.norm}});
  }
  Json residual = Json::array();
  for (const auto& row : report.residual_by_shell)
    residual.push_back(Json::array({row[0], row[1], row[2]}));
  return Json{{"components", components},
              {"atom_base_values", report.base_values},
              {"norm_phi", report.norm_phi},
              {"sum_component_norms", report.sum_component_norms},
              {"C_empirical", report.c_empirical},
              {"norm_inequality_ok", report.norm_inequality_ok},
              {"reconstruction",
               Json{{"horizon", report.horizon},
                    {"max_relative_residual", report.max_relative_residual},
                    {"ok", report.reconstruction_ok},
                    {"residual_by_shell", residual}}}};
}

}  // namespace weylq
