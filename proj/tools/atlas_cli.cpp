#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "atlas/json_io.hpp"
#include "atlas/sphere.hpp"
#include "atlas/surface.hpp"
#include "atlas/twisted_complex.hpp"

using namespace atlas;

namespace {

struct Common {
  int trunc = 4;
  bool json = false;
  long seed = 0;
  std::string input = "-";
};

void add_common(CLI::App* cmd, Common& c, bool with_input) {
  cmd->add_option("--trunc", c.trunc, "weight truncation N (default 4)");
  cmd->add_flag("--json", c.json, "emit the full JSON report instead of text");
  cmd->add_option("--seed", c.seed, "seed echoed in reports (all current subcommands are deterministic)");
  if (with_input)
    cmd->add_option("--input", c.input, "JSON descriptor file, or - for stdin (default)");
}

Json read_input(const Common& c) {
  std::string text;
  if (c.input == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(c.input);
    if (!f) throw MalformedInput("cannot open input file '" + c.input + "'", "$");
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  return parse_json_text(text);
}

Json start_report(const std::string& kind, const Common& c) {
  Json rep = report_header(kind);
  rep["trunc"] = c.trunc;
  rep["seed"] = c.seed;
  return rep;
}

/// Emits the report; returns the process exit code (1 when ok == false).
int finish(const Json& rep, const Common& c, const std::string& text_line) {
  if (c.json)
    std::cout << rep.dump(2) << "\n";
  else
    std::cout << text_line << "\n";
  if (rep.contains("ok") && !rep["ok"].get<bool>()) return 1;
  return 0;
}

GeneratorSetPtr parse_gens_pattern(const std::string& spec) {
  // "2x0,1x1" = two degree-0 generators and one degree-1 generator
  std::vector<Generator> gens;
  std::stringstream ss(spec);
  std::string part;
  int serial = 0;
  while (std::getline(ss, part, ',')) {
    auto x = part.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= part.size())
      throw InvalidInput("generator pattern must look like 2x0 or 2x0,1x1");
    int count = std::stoi(part.substr(0, x));
    int degree = std::stoi(part.substr(x + 1));
    for (int i = 0; i < count; ++i)
      gens.push_back({"g" + std::to_string(serial++), degree});
  }
  return make_generators(std::move(gens));
}

std::optional<std::pair<int, int>> parse_window(const std::string& w) {
  if (w.empty()) return std::nullopt;
  auto colon = w.find(':');
  if (colon == std::string::npos) {
    int v = std::stoi(w);
    return std::make_pair(v, v);
  }
  return std::make_pair(std::stoi(w.substr(0, colon)), std::stoi(w.substr(colon + 1)));
}

Json homology_report_json(const HomologyReport& h) {
  Json blocks = Json::array();
  for (const auto& b : h.blocks) {
    Json jb{{"weight_lo", b.weight_lo}, {"weight_hi", b.weight_hi}, {"dim", b.dim},
            {"kernel_dim", b.kernel_dim}, {"boundary_dim", b.boundary_dim}};
    Json reps = Json::array();
    for (const auto& r : b.representatives) reps.push_back(derivation_to_json(r));
    jb["representatives"] = std::move(reps);
    blocks.push_back(std::move(jb));
  }
  return Json{{"degree", h.degree}, {"pure_weight", h.pure_weight},
              {"window_lo", h.window_lo}, {"window_hi", h.window_hi},
              {"stable_hi", h.stable_hi}, {"total_dim", h.total_dim},
              {"blocks", std::move(blocks)}};
}

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

FilteredAutomorphism monodromy_from_json(const Json& j, const SurfaceModel& model) {
  const Json& log = j.at("log");
  Derivation d = derivation_from_json(log, model.trunc);
  if (!(*d.generators() == *model.gens))
    throw InvalidInput("monodromy log must use the surface model generators");
  return exp_derivation(d);
}

int run_lie_dim(const Common& c, const std::string& gens_pattern, int weight,
                std::optional<int> degree) {
  GeneratorSetPtr gens = parse_gens_pattern(gens_pattern);
  auto res = lie_component_basis(gens, weight, degree, WeightTruncation(c.trunc));
  Json rep = start_report("lie-dim", c);
  rep["weight"] = weight;
  if (degree) rep["degree"] = *degree;
  rep["dimension"] = res.dimension;
  rep["ok"] = true;
  return finish(rep, c, std::to_string(res.dimension));
}

int run_homology(const Common& c, int degree, const std::string& window) {
  Json in = read_input(c);
  WeightTruncation trunc(c.trunc);
  Derivation d = derivation_from_json(in, trunc);
  ChenDifferential delta(std::move(d));
  HomologyReport h = derivation_homology(delta, degree, parse_window(window), trunc);
  Json rep = start_report("homology", c);
  rep["report"] = homology_report_json(h);
  rep["ok"] = true;
  return finish(rep, c, "dim H_" + std::to_string(degree) + " = " + std::to_string(h.total_dim));
}

int run_bch(const Common& c) {
  Json in = read_input(c);
  WeightTruncation trunc(c.trunc);
  Derivation d1 = derivation_from_json(in.at("d1"), trunc);
  Derivation d2 = derivation_from_json(in.at("d2"), trunc);
  Derivation out = bch(d1, d2);
  Json rep = start_report("bch", c);
  rep["result"] = derivation_to_json(out);
  rep["ok"] = true;
  return finish(rep, c, out.to_string());
}

int run_cinfty_check(const Common& c) {
  CInftyStructure m = cinfty_from_json(read_input(c));
  CInftyCheckReport r = check_cinfty(m);
  Json rep = start_report("cinfty-check", c);
  rep["degree_ok"] = r.degree_ok;
  rep["ainfty_ok"] = r.ainfty_ok;
  rep["shuffle_ok"] = r.shuffle_ok;
  rep["detail"] = r.detail;
  rep["ok"] = r.ok;
  return finish(rep, c, r.ok ? "ok" : "FAIL: " + r.detail);
}

int run_delta_from_cinfty(const Common& c) {
  CInftyStructure m = cinfty_from_json(read_input(c));
  ChenDifferential delta = chen_delta_from_cinfty(m, WeightTruncation(c.trunc));
  Json rep = start_report("delta-from-cinfty", c);
  rep["delta"] = derivation_to_json(delta.derivation());
  rep["ok"] = true;
  return finish(rep, c, delta.derivation().to_string());
}

FormalConnection connection_from_input(const Json& in, const WeightTruncation& trunc,
                                       DGAModel& dga_out) {
  CInftyStructure m = cinfty_from_json(in.at("cinfty"));
  dga_out = formal_dga(m);
  FormalConnection conn = canonical_formal_connection(m, trunc);
  if (in.contains("omega")) {
    const Json& om = in.at("omega");
    if (!om.is_object()) throw MalformedInput("expected an object", "$.omega");
    for (const auto& [name, terms] : om.items()) {
      size_t slot = conn.basis.index_of(name);
      conn.omega[slot] =
          tensor_from_json(terms, conn.delta.derivation().generators(), "$.omega." + name);
    }
  }
  return conn;
}

int run_mc_check(const Common& c) {
  Json in = read_input(c);
  DGAModel dga;
  FormalConnection conn = connection_from_input(in, WeightTruncation(c.trunc), dga);
  McCheckReport r = mc_check(dga, conn);
  Json rep = start_report("mc-check", c);
  rep["detail"] = r.detail;
  rep["ok"] = r.ok;
  return finish(rep, c, r.ok ? "flat" : "NOT FLAT: " + r.detail);
}

int run_twisted_homology(const Common& c, int n, const std::string& window) {
  Json in = read_input(c);
  WeightTruncation trunc(c.trunc);
  DGAModel dga;
  FormalConnection conn = connection_from_input(in, trunc, dga);
  TwistedHomologyReport h =
      twisted_complex_homology(dga, conn, n, parse_window(window), trunc);
  Json rep = start_report("twisted-homology", c);
  Json blocks = Json::array();
  for (const auto& b : h.blocks)
    blocks.push_back(Json{{"weight_lo", b.weight_lo}, {"weight_hi", b.weight_hi},
                          {"dim", b.dim}, {"kernel_dim", b.kernel_dim},
                          {"boundary_dim", b.boundary_dim}});
  rep["report"] = Json{{"n", h.n}, {"pure", h.pure}, {"window_lo", h.window_lo},
                       {"window_hi", h.window_hi}, {"stable_hi", h.stable_hi},
                       {"total_dim", h.total_dim}, {"blocks", std::move(blocks)}};
  rep["ok"] = true;
  return finish(rep, c, "dim = " + std::to_string(h.total_dim));
}

int run_cohomology(const Common& c, int degree) {
  Json in = read_input(c);
  FiniteSimplicialSet k = simplicial_from_json(in.at("space"));
  k.validate();
  LocalSystem m = local_system_from_json(in.at("system"), k);
  validate_local_system(k, m);
  CohomologyResult r = local_cohomology(k, m, degree);
  Json rep = start_report("cohomology", c);
  rep["degree"] = degree;
  rep["dim"] = r.dim;
  rep["cocycle_dim"] = r.cocycle_dim;
  rep["coboundary_dim"] = r.coboundary_dim;
  rep["ok"] = true;
  return finish(rep, c, "dim H^" + std::to_string(degree) + " = " + std::to_string(r.dim));
}

int run_obstruction(const Common& c) {
  Json in = read_input(c);
  FiniteSimplicialSet k = simplicial_from_json(in.at("space"));
  k.validate();
  LocalSystem m = local_system_from_json(in.at("system"), k);
  validate_local_system(k, m);
  Cochain cochain = cochain_from_json(in.at("cochain"), k);
  validate_cochain(k, m, cochain);
  ClassReduction r = class_reduce(cochain, m, k);
  Json rep = start_report("obstruction", c);
  rep["is_cocycle"] = r.is_cocycle;
  rep["failing_simplex"] = r.failing_simplex;
  rep["trivial"] = r.trivial;
  rep["class_coords"] = vec_to_json(r.class_coords);
  if (r.certificate) {
    Json vals = Json::array();
    for (const auto& v : r.certificate->values) vals.push_back(vec_to_json(v));
    rep["certificate"] = Json{{"degree", r.certificate->degree}, {"values", std::move(vals)}};
  }
  rep["ok"] = r.is_cocycle;
  std::string text = !r.is_cocycle ? "not a cocycle at " + r.failing_simplex
                     : r.trivial   ? "trivial"
                                   : "nontrivial";
  return finish(rep, c, text);
}

int run_sphere(const Common& c, double tolerance) {
  SphereReport s = sphere_report(WeightTruncation(c.trunc));
  IntegralReport i = sphere_integral_check(tolerance);
  Json rep = start_report("sphere", c);
  rep["der_dim"] = s.der_dim;
  Json basis = Json::array();
  for (const auto& d : s.der_basis) basis.push_back(derivation_to_json(d));
  rep["der_basis"] = std::move(basis);
  rep["h1_dim"] = s.h1_dim;
  Json reps = Json::array();
  for (const auto& d : s.h1_reps) reps.push_back(derivation_to_json(d));
  rep["h1_representatives"] = std::move(reps);
  rep["h2_dim"] = s.h2_dim;
  rep["obstruction_nontrivial"] = s.obstruction.is_cocycle && !s.obstruction.trivial;
  rep["characteristic"] = vec_to_json(s.characteristic);
  rep["integral"] = Json{{"value", i.value}, {"expected", i.expected},
                         {"closed_form", i.closed_form}, {"converged", i.converged},
                         {"ok", i.ok}};
  bool ok = s.der_dim == 2 && s.h1_dim == 1 && s.h2_dim == 0 && !s.obstruction.trivial &&
            s.characteristic == Vec{Scalar(1)} && i.ok;
  rep["ok"] = ok;
  std::ostringstream text;
  text << "dim Der = " << s.der_dim << ", dim H_1 = " << s.h1_dim
       << ", dim H_2 = " << s.h2_dim << ", characteristic = "
       << (s.characteristic.empty() ? std::string("-") : format_scalar(s.characteristic[0]))
       << ", integral ok = " << (i.ok ? "yes" : "no");
  return finish(rep, c, text.str());
}

int run_surface(const Common& c, int genus) {
  SurfaceH01Report r = surface_h01(genus, WeightTruncation(c.trunc));
  Json rep = start_report("surface", c);
  rep["genus"] = genus;
  rep["dim_homology"] = r.dim_homology;
  rep["dim_quotient"] = r.dim_quotient;
  rep["dim_expected"] = r.dim_expected;
  rep["dims_agree"] = r.dims_agree;
  rep["lemma_ok"] = r.lemma_ok;
  rep["sp_equivariant"] = r.sp_equivariant;
  rep["iso_matrix"] = matrix_to_json(r.iso.matrix);
  rep["ok"] = r.dims_agree && r.lemma_ok && r.sp_equivariant;
  std::ostringstream text;
  text << "dim = " << r.dim_homology << " (quotient oracle " << r.dim_quotient
       << ", expected " << r.dim_expected << "), lemma "
       << (r.lemma_ok ? "ok" : "FAIL") << ", equivariance "
       << (r.sp_equivariant ? "ok" : "FAIL");
  return finish(rep, c, text.str());
}

Json wedge_labels(const SurfaceModel& model, const MoritaIso& iso) {
  Json out = Json::array();
  for (const auto& t : iso.wedge_basis)
    out.push_back(model.gens->name(t[0]) + "^" + model.gens->name(t[1]) + "^" +
                  model.gens->name(t[2]));
  return out;
}

int run_tau1(const Common& c, int genus) {
  Json in = read_input(c);
  WeightTruncation trunc(c.trunc);
  SurfaceModel model = make_surface_model(genus, trunc);
  SurfaceH01Report h = surface_h01(genus, trunc);
  FilteredAutomorphism phi = monodromy_from_json(in, model);
  Vec tau = johnson_tau1(phi, model, h.iso);
  Json rep = start_report("tau1", c);
  rep["genus"] = genus;
  rep["wedge_basis"] = wedge_labels(model, h.iso);
  rep["tau1"] = vec_to_json(tau);
  rep["ok"] = true;
  std::ostringstream text;
  for (size_t i = 0; i < tau.size(); ++i)
    text << (i ? " " : "") << format_scalar(tau[i]);
  return finish(rep, c, text.str());
}

int run_mapping_torus(const Common& c, int genus) {
  Json in = read_input(c);
  WeightTruncation trunc(c.trunc);
  SurfaceModel model = make_surface_model(genus, trunc);
  SurfaceH01Report h = surface_h01(genus, trunc);
  FilteredAutomorphism phi = monodromy_from_json(in, model);
  MappingTorusReport r = mapping_torus_obstruction(phi, model, h.iso);
  Json rep = start_report("mapping-torus", c);
  rep["genus"] = genus;
  rep["wedge_basis"] = wedge_labels(model, h.iso);
  rep["trivial"] = r.stepwise.trivial;
  rep["level"] = r.stepwise.level;
  rep["decided_through"] = r.stepwise.decided_through;
  rep["level1_class"] = vec_to_json(r.level1_wedge);
  rep["minus_tau1"] = vec_to_json(r.minus_tau1);
  rep["matches_minus_tau1"] = r.matches_minus_tau1;
  rep["ok"] = r.matches_minus_tau1;
  std::ostringstream text;
  if (r.stepwise.trivial)
    text << "trivial";
  else
    text << "obstructed at level " << r.stepwise.level;
  text << ", level-1 class = -tau1: " << (r.matches_minus_tau1 ? "yes" : "NO");
  return finish(rep, c, text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for graded Lie derivation complexes, "
               "formal connections, and simplicial obstruction classes"};
  app.require_subcommand(1);

  Common c;
  std::string gens_pattern = "2x0", window;
  int weight = 2, degree = 0, n = 1, genus = 2;
  double tolerance = 1e-9;
  bool have_degree = false;

  auto* lie_dim = app.add_subcommand("lie-dim", "dimension of a free Lie algebra component");
  add_common(lie_dim, c, false);
  lie_dim->add_option("--gens", gens_pattern, "generator pattern, e.g. 2x0 or 2x0,1x1");
  lie_dim->add_option("--weight", weight, "word weight")->required();
  lie_dim->add_option("--degree", degree, "restrict to one homological degree")
      ->each([&](const std::string&) { have_degree = true; });

  auto* homology = app.add_subcommand("homology", "derivation-complex homology of a differential");
  add_common(homology, c, true);
  homology->add_option("--degree", degree, "homological degree n")->required();
  homology->add_option("--window", window, "weight window lo:hi (default: full stable window)");

  auto* bch_cmd = app.add_subcommand("bch", "log(exp(d1) exp(d2)) for two derivations");
  add_common(bch_cmd, c, true);

  auto* cinfty_check = app.add_subcommand("cinfty-check", "validate a C-infinity structure");
  add_common(cinfty_check, c, true);

  auto* dfc = app.add_subcommand("delta-from-cinfty", "dual differential of a C-infinity structure");
  add_common(dfc, c, true);

  auto* mc = app.add_subcommand("mc-check", "flatness of a formal connection");
  add_common(mc, c, true);

  auto* th = app.add_subcommand("twisted-homology", "homology of the twisted tensor complex");
  add_common(th, c, true);
  th->add_option("--n", n, "homotopy degree n (homology read in total degree n-1)")->required();
  th->add_option("--window", window, "weight window lo:hi");

  auto* coh = app.add_subcommand("cohomology", "twisted simplicial cohomology dimensions");
  add_common(coh, c, true);
  coh->add_option("--degree", degree, "cochain degree")->required();

  auto* obs = app.add_subcommand("obstruction", "reduce a twisted cocycle to its class");
  add_common(obs, c, true);

  auto* sphere = app.add_subcommand("sphere", "two-sphere model report and radial integral");
  add_common(sphere, c, false);
  sphere->add_option("--tolerance", tolerance, "integral tolerance (default 1e-9)");

  auto* surface = app.add_subcommand("surface", "surface model homology and wedge identification");
  add_common(surface, c, false);
  surface->add_option("--genus", genus, "genus >= 2 (default 2)");

  auto* tau1 = app.add_subcommand("tau1", "first Johnson value of exp of a derivation log");
  add_common(tau1, c, true);
  tau1->add_option("--genus", genus, "genus >= 2 (default 2)");

  auto* torus = app.add_subcommand("mapping-torus", "stepwise obstruction of a mapping torus");
  add_common(torus, c, true);
  torus->add_option("--genus", genus, "genus >= 2 (default 2)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (lie_dim->parsed())
      return run_lie_dim(c, gens_pattern, weight,
                         have_degree ? std::optional<int>(degree) : std::nullopt);
    if (homology->parsed()) return run_homology(c, degree, window);
    if (bch_cmd->parsed()) return run_bch(c);
    if (cinfty_check->parsed()) return run_cinfty_check(c);
    if (dfc->parsed()) return run_delta_from_cinfty(c);
    if (mc->parsed()) return run_mc_check(c);
    if (th->parsed()) return run_twisted_homology(c, n, window);
    if (coh->parsed()) return run_cohomology(c, degree);
    if (obs->parsed()) return run_obstruction(c);
    if (sphere->parsed()) return run_sphere(c, tolerance);
    if (surface->parsed()) return run_surface(c, genus);
    if (tau1->parsed()) return run_tau1(c, genus);
    if (torus->parsed()) return run_mapping_torus(c, genus);
  } catch (const MalformedInput& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "malformed input: " << e.what() << " at $\n";
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
