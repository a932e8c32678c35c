#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "parastat/cli.hpp"
#include "parastat/config.hpp"
#include "parastat/errors.hpp"
#include "parastat/report_io.hpp"

namespace parastat {

namespace {

struct RunConfig {
  std::string command;
  std::string group = "Z2xZ2";
  std::string kind;
  int p = 2;
  int modes_b = 1;
  int modes_f = 1;
  int cutoff = 6;
  std::string theta = "default";
  double omega_b = 1.0;
  double omega_f = 1.0;
  std::string lambda = "0.1";
  std::string lambda1 = "0.1";
  std::string lambda2 = "0.05";
  std::string hamiltonian = "dyn";
  double t_max = 10.0;
  int t_steps = 1000;
  std::string init = "1,0,0";
  std::string out = ".";
  std::string format = "json";
  double tol = 1e-10;
  std::string config;
};

struct InvariantFailure {};

Json config_json(const RunConfig& c) {
  return Json{{"command", c.command}, {"group", c.group},     {"kind", c.kind},
              {"p", c.p},             {"modes_b", c.modes_b}, {"modes_f", c.modes_f},
              {"cutoff", c.cutoff},   {"theta", c.theta},     {"omega_b", c.omega_b},
              {"omega_f", c.omega_f}, {"lambda", c.lambda},   {"lambda1", c.lambda1},
              {"lambda2", c.lambda2}, {"hamiltonian", c.hamiltonian}, {"t_max", c.t_max},
              {"t_steps", c.t_steps}, {"init", c.init},       {"format", c.format},
              {"tol", c.tol},         {"max_dim", max_dimension()}};
}

std::vector<std::string> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ArgumentError("cannot read config file " + path);
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError("config " + path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    for (char& ch : key)
      if (ch == '_') ch = '-';
    if (key == "config") throw ArgumentError("config files cannot nest");
    args.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
  }
  return args;
}

std::filesystem::path out_dir(const RunConfig& c) {
  std::filesystem::path d(c.out);
  std::error_code ec;
  std::filesystem::create_directories(d, ec);
  if (ec) throw Error("cannot create output directory " + c.out);
  return d;
}

struct ThetaChoice {
  Bicharacter theta;
  DegreeAssignment deg;
  std::optional<FactorSearchResult> search;
};

// PB/PF live on Z2 (the species odd resp. even), the mixed kinds on Z2xZ2.
ThetaChoice choose_theta(const RunConfig& c, AlgebraKind kind, int p, int cutoff) {
  const bool mixed = kind == AlgebraKind::PBF || kind == AlgebraKind::PFB;
  ThetaChoice ch;
  if (mixed) {
    ch.deg = z2z2_degrees();
  } else if (kind == AlgebraKind::PB || kind == AlgebraKind::CCR) {
    ch.deg = z2_degrees(true, false);
  } else {
    ch.deg = z2_degrees(false, true);
  }
  const std::string& t = c.theta;
  if (t == "trivial") {
    ch.theta = Bicharacter::trivial(ch.deg.group);
  } else if (t == "default" || t == "search") {
    if (mixed) {
      ch.search = factor_search(p, std::max(cutoff, 4), c.tol);
      const FactorCandidate* pick = nullptr;
      for (const auto& cand : ch.search->candidates) {
        const bool pass = kind == AlgebraKind::PBF ? cand.pbf_pass : cand.pfb_pass;
        const double res = kind == AlgebraKind::PBF ? cand.pbf_residual : cand.pfb_residual;
        const double best = pick ? (kind == AlgebraKind::PBF ? pick->pbf_residual : pick->pfb_residual) : 0;
        if (pass && (!pick || res < best)) pick = &cand;
      }
      if (!pick) throw InvariantFailure{};
      ch.theta = pick->theta;
    } else if (kind == AlgebraKind::PB) {
      ch.theta = z2_sign_factor();
    } else {
      ch.theta = Bicharacter::trivial(ch.deg.group);
    }
  } else {
    ch.theta = parse_bicharacter(ch.deg.group, t);
  }
  return ch;
}

struct BuiltRep {
  GeneratorMap generators;
  std::optional<ComplexMatrix> projector;
  AlgebraKind verify_kind;
  Json theta_json;
};

BuiltRep build_for_verify(const RunConfig& c, AlgebraKind kind) {
  using K = AlgebraKind;
  BuiltRep b;
  b.verify_kind = kind;
  if (kind == K::SCR || kind == K::SAR) {
    const DegreeAssignment deg = z2_degrees(true, true);
    const auto pb = build_green_rep(K::PB, c.p, c.modes_b, 0, c.cutoff, z2_sign_factor(), deg);
    const auto pf = build_green_rep(K::PF, c.p, 0, c.modes_f, c.cutoff, Bicharacter::trivial(deg.group), deg);
    const Bicharacter cross = c.theta == "default" || c.theta == "search"
                                  ? (kind == K::SAR ? z2_sign_factor() : Bicharacter::trivial(deg.group))
                              : c.theta == "trivial" ? Bicharacter::trivial(deg.group)
                                                     : parse_bicharacter(deg.group, c.theta);
    auto prod = braided_product_rep(pb, pf, cross);
    b.generators = std::move(prod.generators);
    b.projector = prod.interior_projector();
    b.theta_json = Json{{"cross", cross.label()}, {"degrees", degrees_json(deg)}};
    return b;
  }
  // single-copy kinds are the p = 1 Green construction
  K green_kind = kind;
  int p = c.p;
  int m_b = c.modes_b, m_f = c.modes_f;
  switch (kind) {
    case K::CCR: green_kind = K::PB; p = 1; break;
    case K::CAR: green_kind = K::PF; p = 1; break;
    case K::Ws: green_kind = K::PBF; p = 1; break;
    case K::Was: green_kind = K::PFB; p = 1; break;
    default: break;
  }
  if (green_kind == K::PB) m_f = 0;
  if (green_kind == K::PF) m_b = 0;
  ThetaChoice ch;
  if (p == 1 && kind != green_kind) {
    ch.deg = green_kind == K::PB ? z2_degrees(true, false)
             : green_kind == K::PF ? z2_degrees(false, true)
                                   : z2z2_degrees();
    ch.theta = Bicharacter::trivial(ch.deg.group);
  } else {
    ch = choose_theta(c, green_kind, p, c.cutoff);
  }
  auto rep = build_green_rep(green_kind, p, m_b, m_f, c.cutoff, ch.theta, ch.deg);
  b.generators = std::move(rep.generators);
  b.projector = rep.interior_projector();
  b.theta_json = Json{{"theta", ch.theta.label()}, {"degrees", degrees_json(ch.deg)}};
  if (ch.search) b.theta_json["factor_search"] = factor_search_json(*ch.search);
  return b;
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
  const auto g = FiniteAbelianGroup::parse(c.group);
  const Json j = classification_json(g);
  const auto dir = out_dir(c);
  bool ok = true;
  for (const auto& b : j["bicharacters"]) {
    ok = ok && b["qt_axioms_ok"].get<bool>() && b["braiding_round_trip"].get<bool>() &&
         b["triangular"].get<bool>() == b["commutation_factor"].get<bool>();
  }
  if (c.format == "csv") {
    std::string csv = "label,commutation_factor,qt_axioms_ok,triangular,braiding_round_trip\n";
    for (const auto& b : j["bicharacters"]) {
      csv += b["label"].get<std::string>() + "," + (b["commutation_factor"].get<bool>() ? "1" : "0") + "," +
             (b["qt_axioms_ok"].get<bool>() ? "1" : "0") + "," + (b["triangular"].get<bool>() ? "1" : "0") + "," +
             (b["braiding_round_trip"].get<bool>() ? "1" : "0") + "\n";
    }
    write_file(dir / "classification.csv", csv);
  } else {
    write_file(dir / "classification.json", dump(j));
  }
  out << g.to_string() << ": " << j["bicharacter_count"].get<std::size_t>() << " bicharacters, "
      << j["commutation_factor_count"].get<std::size_t>() << " commutation factors\n";
  return ok ? 0 : 1;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const AlgebraKind kind = parse_algebra_kind(c.kind);
  BuiltRep b = build_for_verify(c, kind);
  const RelationReport r = verify_relations(b.generators, b.verify_kind, b.projector);
  Json j = relation_report_json(r, c.tol);
  j["config"] = config_json(c);
  j["grading"] = b.theta_json;
  if (b.theta_json.contains("degrees")) {
    const auto& d = b.theta_json["degrees"];
    const auto g = FiniteAbelianGroup::parse(d["group"].get<std::string>());
    DegreeAssignment deg{g, GroupElement{d["boson"].get<std::vector<int>>()},
                         GroupElement{d["fermion"].get<std::vector<int>>()}};
    j["homogeneity"] = grading_report_json(check_grading(kind, r.m_b, r.m_f, deg));
  }
  const auto dir = out_dir(c);
  if (c.format == "csv") {
    std::string csv = "relation,residual\n";
    for (const auto& x : r.per_relation) csv += "\"" + x.relation + "\"," + format_double(x.residual) + "\n";
    write_file(dir / "residuals.csv", csv);
  } else {
    write_file(dir / "residuals.json", dump(j));
  }
  out << to_string(kind) << ": " << r.count << " relations, max interior residual " << format_double(r.max_residual);
  if (!r.passed(c.tol)) out << ", worst " << r.worst_relation;
  out << "\n";
  return r.passed(c.tol) ? 0 : 1;
}

int cmd_fock(const RunConfig& c, std::ostream& out) {
  using K = AlgebraKind;
  const AlgebraKind kind = parse_algebra_kind(c.kind);
  const auto dir = out_dir(c);
  if (kind == K::PB || kind == K::PF) {
    const ThetaChoice ch = choose_theta(c, kind, c.p, c.cutoff);
    const int m_b = kind == K::PB ? c.modes_b : 0;
    const int m_f = kind == K::PF ? c.modes_f : 0;
    const auto rep = build_green_rep(kind, c.p, m_b, m_f, c.cutoff, ch.theta, ch.deg);
    const auto sub = fock_submodule(rep);
    const bool single = kind == K::PB && m_b == 1;
    write_file(dir / "matrix_elements.csv", matrix_elements_csv(sub.generators, single ? c.p : 0));
    Json basis = submodule_basis_json(sub, rep);
    basis["config"] = config_json(c);
    write_file(dir / "basis.json", dump(basis));
    out << to_string(kind) << " p=" << c.p << ": submodule dimension " << sub.level.size() << " of "
        << sub.full_dimension << "\n";
    return 0;
  }
  PBFFockRep rep;
  Json extra;
  if (kind == K::PBF) {
    const ThetaChoice ch = choose_theta(c, kind, c.p, c.cutoff);
    rep = build_pbf_rep(c.p, c.cutoff, ch.theta, ch.deg);
    if (ch.search) extra = factor_search_json(*ch.search);
  } else if (kind == K::SCR || kind == K::SAR) {
    rep = build_straight_rep(c.p, c.cutoff, kind);
  } else {
    throw ArgumentError("fock: kind must be PB, PF, PBF, SCR or SAR");
  }
  write_file(dir / "matrix_elements.csv", matrix_elements_csv(rep.generators));
  Json j = ladder_json(rep);
  j["config"] = config_json(c);
  if (!extra.is_null()) j["factor_search"] = extra;
  // the straight product of two multiplicity-free modules has 1-dim sectors
  bool ok = true;
  for (const auto& [mn, dim] : subspace_dims(rep)) {
    const int want = kind == K::PBF ? expected_subspace_dim(rep.p, mn.first, mn.second) : 1;
    ok = ok && dim == want;
  }
  j["dimension_rule_ok"] = ok;
  write_file(dir / "ladder.json", dump(j));
  out << to_string(kind) << " p=" << c.p << ": ladder dimension " << rep.dimension()
      << (ok ? ", dimension rule holds\n" : ", dimension rule VIOLATED\n");
  return ok ? 0 : 1;
}

int cmd_jc(const RunConfig& c, std::ostream& out) {
  using K = AlgebraKind;
  const AlgebraKind kind = parse_algebra_kind(c.kind);
  const HamiltonianKind hk = parse_hamiltonian_kind(c.hamiltonian);
  JCParams params;
  params.omega_b = c.omega_b;
  params.omega_f = c.omega_f;
  params.lambda = parse_complex(c.lambda);
  params.lambda1 = parse_complex(c.lambda1);
  params.lambda2 = parse_complex(c.lambda2);
  params.p = c.p;
  params.cutoff = c.cutoff;

  int m = 0, n = 0, branch = 0;
  {
    char s1 = 0, s2 = 0;
    std::istringstream is(c.init);
    if (!(is >> m >> s1 >> n >> s2 >> branch) || s1 != ',' || s2 != ',' || !(is >> std::ws).eof()) {
      throw ArgumentError("--init expects 'm,n,branch', got '" + c.init + "'");
    }
  }
  // cheap parameter checks before the expensive construction
  if (hk == HamiltonianKind::Dyn && params.lambda.imag() != 0.0) {
    throw ParameterError("H_dyn needs a real coupling; got lambda=" + c.lambda, "lambda");
  }

  PBFFockRep rep;
  Json theta_info;
  if (kind == K::PBF) {
    const ThetaChoice ch = choose_theta(c, kind, c.p, c.cutoff);
    rep = build_pbf_rep(c.p, c.cutoff, ch.theta, ch.deg);
    theta_info = Json{{"theta", ch.theta.label()}, {"degrees", degrees_json(ch.deg)}};
    if (ch.search) {
      for (const auto& cand : ch.search->candidates)
        if (cand.theta == ch.theta) theta_info["pbf_max_residual"] = cand.pbf_residual;
    }
  } else if (kind == K::SCR || kind == K::SAR) {
    rep = build_straight_rep(c.p, c.cutoff, kind);
    theta_info = Json{{"theta", rep.theta.label()}, {"degrees", degrees_json(rep.deg)}};
  } else {
    throw ArgumentError("jc: kind must be PBF, SCR or SAR");
  }

  const ComplexMatrix h = build_hamiltonian(hk, params, rep);
  const ComplexMatrix h_int = h - free_hamiltonian(params, rep);
  const auto sel = selection_rule_check(h_int, rep);
  const auto idx = rep.find({m, n, branch});
  if (!idx) throw ArgumentError("--init: no ladder state (" + c.init + ")");
  ComplexVector psi0(rep.dimension());
  psi0[*idx] = 1.0;
  const auto times = time_grid(c.t_max, c.t_steps);
  const auto eig = hermitian_eig(h);
  const auto q = evolve(h, psi0, times, rep);

  double pop_err = 0;
  for (const auto& row : q.populations) {
    double s = 0;
    for (double v : row) s += v;
    pop_err = std::max(pop_err, std::abs(s - 1.0));
  }
  const double scale = std::max(1.0, h.max_abs());
  const bool sel_ok = sel.max_offblock <= 1e-12 * scale;
  const bool norm_ok = q.norm_drift <= 1e-10 && pop_err <= 1e-10;
  const bool herm_ok = hermiticity_violation(h) == 0.0;

  const auto dir = out_dir(c);
  write_file(dir / "spectrum.csv", spectrum_csv(eig.values));
  write_file(dir / "dynamics.csv", dynamics_csv(q));
  Json checks{{"selection_rule_max_offblock", sel.max_offblock},
              {"selection_rule_ok", sel_ok},
              {"norm_drift", q.norm_drift},
              {"population_sum_error", pop_err},
              {"conservation_ok", norm_ok},
              {"hermiticity_violation", hermiticity_violation(h)},
              {"hermitian_ok", herm_ok}};
  if (sel.worst) {
    checks["selection_rule_worst"] = Json{{"from", {sel.worst->first.m, sel.worst->first.n}},
                                          {"to", {sel.worst->second.m, sel.worst->second.n}}};
  }
  Json manifest{{"config", config_json(c)},
                {"params",
                 Json{{"omega_b", params.omega_b},
                      {"omega_f", params.omega_f},
                      {"lambda", format_complex(params.lambda)},
                      {"lambda1", format_complex(params.lambda1)},
                      {"lambda2", format_complex(params.lambda2)},
                      {"p", params.p},
                      {"cutoff", params.cutoff}}},
                {"hamiltonian", std::string(to_string(hk))},
                {"algebra", std::string(to_string(kind))},
                {"grading", theta_info},
                {"ladder_dimension", rep.dimension()},
                {"green_dimension", rep.full_dimension},
                {"checks", checks},
                {"files", {"spectrum.csv", "dynamics.csv"}}};
  write_file(dir / "manifest.json", dump(manifest));
  const bool ok = sel_ok && norm_ok && herm_ok;
  out << "jc " << to_string(hk) << " p=" << c.p << ": dimension " << rep.dimension() << ", ground energy "
      << format_double(eig.values.front()) << (ok ? ", checks passed\n" : ", checks FAILED\n");
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"parastatistics workbench"};
  app.name(argc > 0 ? std::filesystem::path(argv[0]).filename().string() : "parastat");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  app.add_option("--group", c.group, "group spec, e.g. Z2xZ2")->capture_default_str();
  app.add_option("--kind", c.kind, "CCR CAR Ws Was PB PF PBF PFB SCR SAR");
  app.add_option("--p", c.p, "order p")->capture_default_str()->check(CLI::Range(1, 64));
  app.add_option("--modes-b", c.modes_b, "paraboson modes")->capture_default_str()->check(CLI::Range(0, 16));
  app.add_option("--modes-f", c.modes_f, "parafermion modes")->capture_default_str()->check(CLI::Range(0, 16));
  app.add_option("--cutoff", c.cutoff, "total boson quanta cutoff")->capture_default_str()->check(CLI::Range(1, 1000));
  app.add_option("--theta", c.theta, "exponent matrix 'a,b;c,d', 'trivial', 'search' or 'default'")
      ->capture_default_str();
  app.add_option("--omega-b", c.omega_b)->capture_default_str();
  app.add_option("--omega-f", c.omega_f)->capture_default_str();
  app.add_option("--lambda", c.lambda, "real coupling of H_dyn")->capture_default_str();
  app.add_option("--lambda1", c.lambda1, "complex, 're+imj'")->capture_default_str();
  app.add_option("--lambda2", c.lambda2, "complex, 're+imj'")->capture_default_str();
  app.add_option("--hamiltonian", c.hamiltonian, "dyn, dynstar or free")->capture_default_str();
  app.add_option("--t-max", c.t_max)->capture_default_str();
  app.add_option("--t-steps", c.t_steps)->capture_default_str()->check(CLI::Range(1, 10000000));
  app.add_option("--init", c.init, "initial ladder state 'm,n,branch'")->capture_default_str();
  app.add_option("--out", c.out, "output directory")->capture_default_str();
  app.add_option("--format", c.format)->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", c.tol)->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--config", c.config, "flat key=value file; flags override it");

  app.add_subcommand("classify", "bicharacters, commutation factors and R-matrices of a group")->fallthrough();
  app.add_subcommand("verify", "check the defining relations on a Green-ansatz representation")->fallthrough();
  app.add_subcommand("fock", "matrix elements of the Fock-like module")->fallthrough();
  app.add_subcommand("jc", "Jaynes-Cummings spectrum and dynamics")->fallthrough();

  try {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    // config entries go first so later command-line flags win
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
      else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
      if (!path.empty()) {
        auto extra = read_config_file(path);
        args.insert(args.begin(), extra.begin(), extra.end());
        break;
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.kind.empty()) c.kind = c.command == "jc" ? "PBF" : "PB";

  try {
    if (c.command == "classify") return cmd_classify(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "fock") return cmd_fock(c, out);
    return cmd_jc(c, out);
  } catch (const InvariantFailure&) {
    err << "error: no commutation factor passes the relations\n";
    return 1;
  } catch (const SizingError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << " [" << e.coefficient() << "]\n";
    return 2;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructureError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace parastat
