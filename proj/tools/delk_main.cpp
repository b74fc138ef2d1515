// Command-line surface for the Delaunay Kahler measure toolkit.

#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "delk/forms.hpp"
#include "delk/io.hpp"
#include "delk/kahler.hpp"
#include "delk/mc.hpp"
#include "delk/regions.hpp"
#include "delk/verify.hpp"
#include "delk/voronoi.hpp"

using namespace delk;
using nlohmann::json;

namespace {

constexpr int kReportVersion = 1;

json estimate_json(const McEstimate& e) {
  return json{{"mean", e.mean},     {"stderr", e.stderr_},
              {"n", e.n},           {"rejected", e.rejected},
              {"seed", e.seed},     {"seconds", e.seconds}};
}

json result_json(const CheckResult& r) {
  const char* status = r.status == CheckResult::PASS   ? "PASS"
                       : r.status == CheckResult::FAIL ? "FAIL"
                                                       : "REPORT-ONLY";
  return json{{"name", r.name},         {"identity", r.identity},
              {"status", status},        {"measured", r.measured},
              {"expected", r.expected},  {"tolerance", r.tolerance},
              {"sigma", r.sigma},        {"detail", r.detail}};
}

void emit(const std::string& path, const json& j) {
  if (path.empty()) std::printf("%s\n", j.dump(2).c_str());
  else write_json_file(path, j);
}

int cmd_gen(int n, std::uint64_t seed, const std::string& out) {
  emit(out, config_to_json(random_config(n, seed)));
  return 0;
}

int cmd_delaunay(const std::string& in, const std::string& out) {
  const PointConfiguration cfg = config_from_json(read_json_file(in));
  emit(out, triangulation_to_json(delaunay(cfg)));
  return 0;
}

int cmd_measure(const std::string& in, const std::string& exclude,
                const std::string& out) {
  const PointConfiguration cfg = config_from_json(read_json_file(in));
  const Triangulation t = delaunay(cfg);
  const KahlerMatrix m = kahler_matrix(t);
  std::array<int, 3> triple = cfg.gauge();
  if (!exclude.empty()) {
    if (std::sscanf(exclude.c_str(), "%d,%d,%d", &triple[0], &triple[1],
                    &triple[2]) != 3)
      throw GeomError("--exclude expects i,j,k");
  }
  json j;
  j["det"] = det_excluding(m, {triple[0], triple[1], triple[2]});
  try {
    j["normalized_det"] = normalized_det(t, triple);
  } catch (const GeomError&) {
    j["normalized_det"] = nullptr;  // defined for inf-containing triples
  }
  json ev = json::array();
  for (double x : hermitian_eigenvalues(m.mat)) ev.push_back(x);
  j["eigenvalues"] = ev;
  j["prepotential"] = prepotential(t);
  emit(out, j);
  return 0;
}

int cmd_forms(const std::string& in, const std::string& check,
              const std::string& out) {
  const PointConfiguration cfg = config_from_json(read_json_file(in));
  const Triangulation t = delaunay(cfg);
  const FreeBasis basis = FreeBasis::of(cfg);
  json j;
  j["check"] = check;
  if (check == "omega") {
    double worst = 0.0;
    for (int f : t.bounded_faces()) {
      const auto a = omega_face_z(basis, cfg, t.face_vertices(f));
      const auto b = omega_face_lengths(basis, cfg, t.face_vertices(f));
      double d = 0.0, s = 0.0;
      for (int i = 0; i < a.dim(); ++i)
        for (int k = 0; k < a.dim(); ++k) {
          d = std::max(d, std::abs(a(i, k) - b(i, k)));
          s = std::max(s, std::abs(b(i, k)));
        }
      worst = std::max(worst, s > 0 ? d / s : d);
    }
    j["max_rel_diff"] = worst;
    j["pass"] = worst <= 1e-9;
  } else if (check == "wp") {
    const TwoForm om = omega_total(t);
    const TwoForm wp = wp_form(t, Decoration::constant(cfg, 0.25));
    double d = 0.0, s = 0.0;
    for (int i = 0; i < om.dim(); ++i)
      for (int k = 0; k < om.dim(); ++k) {
        d = std::max(d, std::abs(wp(i, k) - 2.0 * om(i, k)));
        s = std::max(s, std::abs(2.0 * om(i, k)));
      }
    j["max_rel_diff"] = s > 0 ? d / s : d;
    j["pass"] = (s > 0 ? d / s : d) <= 1e-9;
  } else if (check == "topcoeff") {
    const auto& g = cfg.gauge();
    const double det = det_excluding(kahler_matrix(t), {g[0], g[1], g[2]});
    const double pf = top_coefficient(omega_total(t), cfg.free_count());
    j["det"] = det;
    j["pfaffian"] = pf;
    j["rel_diff"] = std::abs(pf - det) / std::max(std::abs(det), 1e-300);
    j["pass"] = j["rel_diff"].get<double>() <= 1e-8;
  } else if (check == "ptolemy") {
    double worst = 0.0;
    for (int f : t.bounded_faces()) {
      const auto v = t.face_vertices(f);
      const auto gc = circumcircle(cfg.at(v[0]), cfg.at(v[1]), cfg.at(v[2]));
      const Circle& c = std::get<Circle>(gc);
      // fourth cocyclic point between the first two corners
      const double a0 = std::arg(cfg.at(v[0]) - c.center);
      const double a1 = std::arg(cfg.at(v[1]) - c.center);
      const Point z4 = c.center + c.radius * std::exp(Cplx(0, (a0 + a1) / 2));
      std::array<Point, 4> z = {cfg.at(v[0]), z4, cfg.at(v[1]), cfg.at(v[2])};
      auto L = [&](int i, int k) { return lambda_length(z[i], z[k], 0.25, 0.25); };
      worst = std::max(worst, std::abs(L(0, 2) * L(1, 3) - L(0, 1) * L(2, 3) -
                                       L(0, 3) * L(1, 2)));
    }
    j["max_residual"] = worst;
    j["pass"] = worst <= 1e-12;
  } else if (check == "flip-discontinuity") {
    int uu = -1, vv = -1;
    double best = 1e9;
    for (int h : t.edges()) {
      if (!t.edge_interior(h)) continue;
      const double th = std::abs(t.edge_theta(h));
      if (th < best) {
        best = th;
        uu = t.origin(h);
        vv = t.dest(h);
      }
    }
    const FlipDiscontinuity fd = flip_discontinuity(cfg, uu, vv);
    j["edge"] = json::array({uu, vv});
    j["rel_error"] = fd.rel_error;
    j["sign_global"] = fd.sign_global;
    j["sign_diag"] = fd.sign_diag;
  } else {
    throw CLI::ValidationError("--check", "unknown check " + check);
  }
  emit(out, j);
  if (j.contains("pass") && !j["pass"].get<bool>()) return 1;
  return 0;
}

int cmd_regions(const std::string& in, int face, const std::string& kind,
                long long samples, std::uint64_t seed,
                const std::string& out) {
  const PointConfiguration cfg = config_from_json(read_json_file(in));
  const Triangulation t = delaunay(cfg);
  json j;
  if (kind == "B") {
    const auto v = t.face_vertices(face);
    const McEstimate est = integral_B(cfg.at(v[0]), cfg.at(v[1]),
                                      cfg.at(v[2]), samples, seed);
    j["estimate"] = estimate_json(est);
    j["closed_form"] = 3.14159265358979323846 * 3.14159265358979323846 / 16;
    j["sigma_distance"] = est.sigma_distance(j["closed_form"].get<double>());
  } else if (kind == "R") {
    const RegionIntegral ri = integral_R(t, face, samples, seed);
    j["estimate"] = estimate_json(ri.estimate);
    j["closed_form"] = ri.closed_form;
    j["sigma_distance"] = ri.estimate.sigma_distance(ri.closed_form);
  } else {
    throw CLI::ValidationError("--kind", "expected R or B");
  }
  emit(out, j);
  return 0;
}

int cmd_voronoi(const std::string& in, const std::string& lengths,
                const std::string& out) {
  const PointConfiguration cfg = config_from_json(read_json_file(in));
  const Triangulation t = delaunay(cfg);
  const DualGraph g = dual_graph(t);
  const bool hyp = lengths != "flat";
  json nodes = json::array();
  for (std::size_t i = 0; i < g.faces.size(); ++i)
    nodes.push_back(json{{"face", g.faces[i]},
                         {"center", {g.centers[i].real(), g.centers[i].imag()}}});
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back(json{{"faces", {e.face_n, e.face_s}},
                         {"theta_n", e.theta_n},
                         {"theta_s", e.theta_s},
                         {"length", hyp ? dual_length_hyperbolic(e)
                                        : dual_length_flat(e)}});
  emit(out, json{{"lengths", hyp ? "hyperbolic" : "flat"},
                 {"nodes", nodes},
                 {"edges", edges}});
  return 0;
}

int cmd_volume(int n, long long samples, std::uint64_t seed,
               const std::string& out, const std::string& dump) {
  const McEstimate est = estimate_volume(n, samples, seed);
  json j = estimate_json(est);
  j["N"] = n;
  emit(out, j);
  if (!dump.empty()) {
    std::FILE* f = std::fopen(dump.c_str(), "w");
    if (f) {
      std::fprintf(f, "N,mean,stderr,n,seed\n%d,%.17g,%.17g,%lld,%llu\n", n,
                   est.mean, est.stderr_, est.n,
                   static_cast<unsigned long long>(est.seed));
      std::fclose(f);
    }
  }
  return 0;
}

int cmd_growth(const std::string& base, long long samples, std::uint64_t seed,
               bool refined, bool explore_local, const std::string& out) {
  const PointConfiguration cfg = config_from_json(read_json_file(base));
  const GrowthCheck gc = conditional_growth_check(cfg, samples, seed);
  json j;
  j["lhs"] = estimate_json(gc.lhs);
  j["rhs_plain"] = gc.rhs_plain;
  j["base_det"] = gc.base_det;
  j["pass_plain"] = gc.pass_plain;
  if (refined) {
    j["rhs_refined_interior"] = gc.rhs_refined_interior;
    j["rhs_refined_full"] = gc.rhs_refined_full;
    j["pass_refined_interior"] = gc.pass_refined_interior;
  }
  if (explore_local) {
    const LocalBoundReport rep = local_bound_search(cfg, samples / 10, seed);
    j["local_bound"] = json{{"min_ratio", rep.min_ratio},
                            {"argmin", {rep.argmin.real(), rep.argmin.imag()}},
                            {"n", rep.n}};
  }
  emit(out, j);
  return gc.pass_plain ? 0 : 1;
}

int cmd_verify_all(std::uint64_t seed, bool quick, long long samples,
                   const std::string& out) {
  VerifyOptions o;
  o.seed = seed;
  o.quick = quick;
  o.mc_samples = samples;
  const auto results = run_acceptance(o);
  json arr = json::array();
  bool all_ok = true;
  for (const auto& r : results) {
    arr.push_back(result_json(r));
    const char* status = r.status == CheckResult::PASS   ? "PASS"
                         : r.status == CheckResult::FAIL ? "FAIL"
                                                         : "REPORT-ONLY";
    std::printf("%-22s %-11s %s\n", r.name.c_str(), status, r.detail.c_str());
    if (r.asserted() && !r.ok()) all_ok = false;
  }
  json j;
  j["version"] = kReportVersion;
  j["seed"] = seed;
  j["quick"] = quick;
  j["checks"] = arr;
  if (!out.empty()) write_json_file(out, j);
  std::printf("%s\n", all_ok ? "ALL PASS" : "FAILURES PRESENT");
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kahler measure on planar Delaunay triangulations"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a seeded configuration");
  int gen_n = 5;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "number of free points");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--output", gen_out, "output path (stdout if omitted)");

  // delaunay
  auto* del = app.add_subcommand("delaunay", "triangulate a configuration");
  std::string del_in, del_out;
  del->add_option("--input", del_in)->required();
  del->add_option("--output", del_out);

  // measure
  auto* mea = app.add_subcommand("measure", "Kahler matrix quantities");
  std::string mea_in, mea_ex, mea_out;
  mea->add_option("--input", mea_in)->required();
  mea->add_option("--exclude", mea_ex, "vertex triple i,j,k");
  mea->add_option("--output", mea_out);

  // forms
  auto* frm = app.add_subcommand("forms", "two-form identities");
  std::string frm_in, frm_check = "omega", frm_out;
  frm->add_option("--input", frm_in)->required();
  frm->add_option("--check", frm_check,
                  "omega|wp|ptolemy|topcoeff|flip-discontinuity");
  frm->add_option("--output", frm_out);

  // regions
  auto* reg = app.add_subcommand("regions", "region integrals");
  std::string reg_in, reg_kind = "B", reg_out;
  int reg_face = 0;
  long long reg_samples = 1000000;
  std::uint64_t reg_seed = 7;
  reg->add_option("--input", reg_in)->required();
  reg->add_option("--face", reg_face);
  reg->add_option("--kind", reg_kind, "R or B");
  reg->add_option("--samples", reg_samples);
  reg->add_option("--seed", reg_seed);
  reg->add_option("--output", reg_out);

  // voronoi
  auto* vor = app.add_subcommand("voronoi", "dual graph and lengths");
  std::string vor_in, vor_len = "hyperbolic", vor_out;
  vor->add_option("--input", vor_in)->required();
  vor->add_option("--lengths", vor_len, "hyperbolic or flat");
  vor->add_option("--output", vor_out);

  // volume
  auto* vol = app.add_subcommand("volume", "total volume estimate");
  int vol_n = 1;
  long long vol_samples = 1000000;
  std::uint64_t vol_seed = 42;
  std::string vol_out, vol_dump;
  vol->add_option("--N", vol_n);
  vol->add_option("--samples", vol_samples);
  vol->add_option("--seed", vol_seed);
  vol->add_option("--output", vol_out);
  vol->add_option("--dump-samples", vol_dump, "CSV dump path");

  // growth
  auto* gro = app.add_subcommand("growth", "one-point growth bound");
  std::string gro_base, gro_out;
  long long gro_samples = 1000000;
  std::uint64_t gro_seed = 42;
  bool gro_refined = false, gro_local = false;
  gro->add_option("--base", gro_base)->required();
  gro->add_option("--samples", gro_samples);
  gro->add_option("--seed", gro_seed);
  gro->add_flag("--refined", gro_refined);
  gro->add_flag("--explore-local", gro_local);
  gro->add_option("--output", gro_out);

  // verify-all
  auto* ver = app.add_subcommand("verify-all", "full acceptance suite");
  std::uint64_t ver_seed = 7;
  bool ver_quick = false;
  long long ver_samples = 0;
  std::string ver_out;
  ver->add_option("--seed", ver_seed);
  ver->add_flag("--quick", ver_quick, "reduced sample counts");
  ver->add_option("--samples", ver_samples, "override MC sample count");
  ver->add_option("--output", ver_out, "report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_n, gen_seed, gen_out);
    if (del->parsed()) return cmd_delaunay(del_in, del_out);
    if (mea->parsed()) return cmd_measure(mea_in, mea_ex, mea_out);
    if (frm->parsed()) return cmd_forms(frm_in, frm_check, frm_out);
    if (reg->parsed())
      return cmd_regions(reg_in, reg_face, reg_kind, reg_samples, reg_seed,
                         reg_out);
    if (vor->parsed()) return cmd_voronoi(vor_in, vor_len, vor_out);
    if (vol->parsed())
      return cmd_volume(vol_n, vol_samples, vol_seed, vol_out, vol_dump);
    if (gro->parsed())
      return cmd_growth(gro_base, gro_samples, gro_seed, gro_refined,
                        gro_local, gro_out);
    if (ver->parsed())
      return cmd_verify_all(ver_seed, ver_quick, ver_samples, ver_out);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
