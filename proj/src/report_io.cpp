#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "parastat/errors.hpp"
#include "parastat/report_io.hpp"

namespace parastat {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(cplx v) {
  std::string im = format_double(v.imag());
  if (im[0] != '-') im = "+" + im;
  return format_double(v.real()) + im + "j";
}

cplx parse_complex(std::string_view s) {
  const std::string text(s);
  auto fail = [&]() -> cplx { throw ArgumentError("cannot parse complex number '" + text + "'"); };
  if (s.empty()) return fail();
  auto parse_real = [&](std::string_view t, double& out) {
    if (!t.empty() && t[0] == '+') t.remove_prefix(1);
    if (t.empty()) return false;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc{} && ptr == t.data() + t.size() && std::isfinite(out);
  };
  if (s.back() != 'j' && s.back() != 'i') {
    double re;
    if (!parse_real(s, re)) return fail();
    return {re, 0.0};
  }
  s.remove_suffix(1);
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  double re = 0, im = 0;
  std::string_view ims = split == std::string_view::npos ? s : s.substr(split);
  if (split != std::string_view::npos && !parse_real(s.substr(0, split), re)) return fail();
  if (ims == "+" || ims == "-" || ims.empty()) ims = std::string_view(ims == "-" ? "-1" : "1");
  if (!parse_real(ims, im)) return fail();
  return {re, im};
}

Json exponent_matrix_json(const Bicharacter& theta) { return Json(theta.generator_exponents()); }

Json degrees_json(const DegreeAssignment& deg) {
  return Json{{"group", deg.group.to_string()}, {"boson", deg.boson.coords}, {"fermion", deg.fermion.coords}};
}

Json cyclotomic_json(const CyclotomicInt& c) { return Json{{"root_order", c.order()}, {"coefficients", c.coefficients()}}; }

Json classification_json(const FiniteAbelianGroup& g, const EnumerationLimits& limits) {
  const auto all = enumerate_bicharacters(g, limits);
  Json list = Json::array();
  std::size_t factors = 0;
  for (const auto& theta : all) {
    const bool cf = is_commutation_factor(theta);
    factors += cf;
    const RMatrix r = bicharacter_to_rmatrix(theta);
    const auto qt = check_quasitriangular(r, g);
    Json coeffs = Json::array();
    for (const auto& [k, c] : r.numerators()) {
      coeffs.push_back(Json{{"g", g.element(k.first).coords},
                            {"h", g.element(k.second).coords},
                            {"numerator", c.to_string()},
                            {"denominator", r.denominator()}});
    }
    bool round_trip = true;
    for (const auto& a : g.elements())
      for (const auto& b : g.elements()) {
        const ExactScalar f = braiding_factor(r, a, b);
        CyclotomicInt want = CyclotomicInt::root(g.exponent(), theta.exponent(a, b)) * r.denominator();
        if (!(f.numerator == want)) round_trip = false;
      }
    list.push_back(Json{{"exponents", exponent_matrix_json(theta)},
                        {"label", theta.label()},
                        {"commutation_factor", cf},
                        {"r_matrix", coeffs},
                        {"qt_axioms_ok", qt.qt_axioms_ok},
                        {"coproduct_left_ok", qt.coproduct_left_ok},
                        {"coproduct_right_ok", qt.coproduct_right_ok},
                        {"invertible", qt.invertible},
                        {"triangular", qt.triangular},
                        {"braiding_round_trip", round_trip}});
  }
  return Json{{"group", g.to_string()},
              {"order", g.order()},
              {"root_order", g.exponent()},
              {"bicharacter_count", all.size()},
              {"commutation_factor_count", factors},
              {"bicharacters", list}};
}

Json relation_report_json(const RelationReport& r, double tol) {
  Json per = Json::array();
  for (const auto& x : r.per_relation) per.push_back(Json{{"relation", x.relation}, {"residual", x.residual}});
  return Json{{"kind", std::string(to_string(r.kind))},
              {"modes_b", r.m_b},
              {"modes_f", r.m_f},
              {"relation_count", r.count},
              {"tol", tol},
              {"max_residual", r.max_residual},
              {"worst_relation", r.worst_relation},
              {"passed", r.passed(tol)},
              {"per_relation", per}};
}

Json grading_report_json(const GradingReport& r) {
  return Json{{"homogeneous", r.homogeneous}, {"violations", r.violations}};
}

Json factor_search_json(const FactorSearchResult& r) {
  Json cands = Json::array();
  for (const auto& c : r.candidates) {
    cands.push_back(Json{{"exponents", exponent_matrix_json(c.theta)},
                         {"label", c.theta.label()},
                         {"PBF", Json{{"max_residual", c.pbf_residual}, {"worst", c.pbf_worst}, {"pass", c.pbf_pass}}},
                         {"PFB", Json{{"max_residual", c.pfb_residual}, {"worst", c.pfb_worst}, {"pass", c.pfb_pass}}}});
  }
  Json passing = Json::array();
  for (const auto& c : r.passing()) passing.push_back(c.theta.label());
  return Json{{"p", r.p},
              {"cutoff", r.cutoff},
              {"tol", r.tol},
              {"degrees", degrees_json(z2z2_degrees())},
              {"candidates", cands},
              {"passing", passing}};
}

Json ladder_json(const PBFFockRep& rep) {
  Json subspaces = Json::array();
  for (const auto& [mn, dim] : subspace_dims(rep)) {
    subspaces.push_back(Json{{"m", mn.first},
                             {"n", mn.second},
                             {"dim", dim},
                             {"expected", expected_subspace_dim(rep.p, mn.first, mn.second)}});
  }
  Json basis = Json::array();
  for (const auto& l : rep.labels) basis.push_back(Json{{"m", l.m}, {"n", l.n}, {"branch", l.branch}});
  return Json{{"kind", std::string(to_string(rep.kind))},
              {"p", rep.p},
              {"cutoff", rep.cutoff},
              {"theta", rep.theta.label()},
              {"degrees", degrees_json(rep.deg)},
              {"dimension", rep.dimension()},
              {"full_dimension", rep.full_dimension},
              {"subspaces", subspaces},
              {"basis", basis}};
}

Json submodule_basis_json(const FockSubmodule& sub, const GreenAnsatzRep& rep) {
  Json basis = Json::array();
  for (std::size_t i = 0; i < sub.level.size(); ++i) basis.push_back(Json{{"index", i}, {"level", sub.level[i]}});
  return Json{{"kind", std::string(to_string(rep.kind))},
              {"p", rep.p},
              {"modes_b", rep.modes_b},
              {"modes_f", rep.modes_f},
              {"cutoff", rep.cutoff},
              {"theta", rep.theta.label()},
              {"degrees", degrees_json(rep.deg)},
              {"full_dimension", sub.full_dimension},
              {"submodule_dimension", sub.level.size()},
              {"complement_dimension", sub.complement_dimension},
              {"basis", basis}};
}

std::string matrix_elements_csv(const GeneratorMap& gens, int reference_p) {
  std::string out = reference_p > 0 ? "generator,bra,ket,re,im,ref,diff\n" : "generator,bra,ket,re,im\n";
  for (const auto& [label, m] : gens) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const cplx v = m(i, j);
        if (std::abs(v) <= 1e-14) continue;
        out += label.to_string() + "," + std::to_string(i) + "," + std::to_string(j) + "," +
               format_double(v.real()) + "," + format_double(v.imag());
        if (reference_p > 0) {
          const bool up = label == boson(1, +1) && i == j + 1;
          const bool down = label == boson(1, -1) && j == i + 1;
          if (up || down) {
            const std::size_t lo = up ? j : i;
            const auto r = single_mode_reference(reference_p, static_cast<int>(lo / 2));
            const double ref = lo % 2 == 0 ? r.me_up_even : r.me_up_odd;
            out += "," + format_double(ref) + "," + format_double(std::abs(v - ref));
          } else {
            out += ",,";
          }
        }
        out += "\n";
      }
  }
  return out;
}

std::string spectrum_csv(const std::vector<double>& values) {
  std::string out = "index,eigenvalue\n";
  for (std::size_t i = 0; i < values.size(); ++i) out += std::to_string(i) + "," + format_double(values[i]) + "\n";
  return out;
}

std::string dynamics_csv(const QuenchResult& q) {
  std::string out = "t";
  for (const auto& [m, n] : q.sectors) out += ",P_" + std::to_string(m) + "_" + std::to_string(n);
  out += "\n";
  for (std::size_t k = 0; k < q.times.size(); ++k) {
    out += format_double(q.times[k]);
    for (double v : q.populations[k]) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << content;
  if (!f) throw Error("failed writing " + path.string());
}

}  // namespace parastat
