// Command line front end: verify triples, build new ones, transplant,
// unfold and compare drum spectra.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "isodrum/catalog.hpp"
#include "isodrum/constructions.hpp"
#include "isodrum/drums.hpp"
#include "isodrum/errors.hpp"
#include "isodrum/io.hpp"
#include "isodrum/pipeline.hpp"
#include "isodrum/spectral.hpp"
#include "isodrum/transplant.hpp"
#include "isodrum/triples.hpp"

using namespace isodrum;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFails = 1, kParse = 2, kBound = 3 };

struct Globals {
  bool json = false;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  Bounds bounds;
};

Bounds bounds_from_env() {
  Bounds b;
  if (const char* s = std::getenv("GF_BOUND")) {
    std::string_view v(s);
    std::uint64_t n = 0;
    auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec != std::errc() || end != v.data() + v.size() || n == 0)
      throw ParseError("GF_BOUND must be a positive integer, got '" + std::string(v) + "'");
    b.enumeration = n;
  }
  return b;
}

std::string matrix_text(const RationalMatrix& m) {
  std::ostringstream os;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << std::setw(3) << row[j].get_str();
    os << "\n";
  }
  return os.str();
}

json matrix_json(const RationalMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    out.push_back(r);
  }
  return out;
}

// Default comparison tolerance for a grid spacing.
double default_tolerance(const Rational& h) { return h <= Rational(1, 64) ? 0.01 : 0.02; }

std::string fmt(double x, int precision = 8) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

int cmd_verify(const Globals& g, const std::string& path, bool no_inv, std::size_t inv_r) {
  std::string text = read_file(path);
  Triple t = parse_triple_spec(text);
  VerifyOptions opt;
  opt.bounds = g.bounds;
  opt.pair_candidate = parse_pair_candidate(text);
  opt.run_inv = !no_inv;
  opt.inv_r = inv_r;
  PropertyReport rep = verify(t, opt);
  std::cout << (g.json ? rep.to_json() + "\n" : rep.to_text());
  bool max_bound = !rep.max && rep.notes.count("max") && rep.notes.at("max").starts_with("bound exceeded");
  if (rep.inv_status == "bound exceeded" || max_bound) return kBound;
  bool ok = rep.ac && rep.ec && rep.ff && rep.max && rep.pair != PairStatus::Failed &&
            rep.inv_status != "none";
  return ok ? kOk : kFails;
}

int cmd_construct(const Globals& g, const std::string& path, int type, const std::string& out) {
  ConstructionData d = parse_construct_spec(read_file(path));
  if (type != 0) d.variant = static_cast<Variant>(type - 1);
  Triple t = construct(d, g.bounds);
  std::string spec = write_triple_spec(t);
  if (!out.empty()) {
    write_file(out, spec);
    if (g.json) {
      json j{{"schema", 1}, {"label", t.label}, {"degree", t.G.degree()},
             {"order_g", t.G.order()}, {"order_h", t.H.order()}, {"order_k", t.K.order()},
             {"out", out}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "degree " << t.G.degree() << ", |G| = " << t.G.order() << ", |H| = " << t.H.order()
                << ", |K| = " << t.K.order() << "\nwrote " << out << "\n";
    }
  } else {
    std::cout << spec;
  }
  return kOk;
}

int cmd_transplant(const Globals& g, const std::string& a_path, const std::string& b_path) {
  auto A = InvolutionSystem::from_text(read_file(a_path));
  auto B = InvolutionSystem::from_text(read_file(b_path));
  auto sol = find_transplantation(A, B);
  auto iso = detect_isometry(A, B);
  bool invertible = sol && sol->invertible;
  if (g.json) {
    json j{{"schema", 1}, {"invertible", invertible}};
    j["status"] = sol ? to_string(sol->status) : "zero";
    if (sol) {
      j["determinant"] = sol->determinant.get_str();
      j["dimension"] = sol->dim_ab;
      j["T"] = matrix_json(sol->T);
      j["permutation_solution"] = sol->permutation_solution.has_value();
      j["verified"] = verify_transplantation(sol->T, A, B);
    }
    j["isometric"] = iso.has_value();
    std::cout << j.dump(2) << "\n";
  } else if (!sol) {
    std::cout << "no nonzero intertwiner\n";
  } else {
    std::cout << "intertwiner dimension: " << sol->dim_ab << "\n";
    std::cout << "status: " << to_string(sol->status) << "\n";
    std::cout << "T invertible: " << (invertible ? "✓" : "✗") << " (det " << sol->determinant.get_str()
              << ")\n";
    std::cout << "T M = N T: " << (verify_transplantation(sol->T, A, B) ? "✓" : "✗") << "\n";
    std::cout << "permutation solution: " << (sol->permutation_solution ? "✓" : "✗") << "\n";
    std::cout << "isometric: " << (iso ? "✓" : "✗") << "\n";
    std::cout << "T =\n" << matrix_text(sol->T);
  }
  return invertible ? kOk : kFails;
}

int cmd_unfold(const Globals& g, const std::string& sys_path, const std::string& tile,
               const std::string& svg, const std::string& json_out) {
  auto sys = InvolutionSystem::from_text(read_file(sys_path));
  auto d = unfold(sys, BaseTile::named(tile));
  std::optional<std::vector<Vec2>> boundary;
  std::string problem;
  if (!d.overlap) {
    try {
      boundary = boundary_polygon(d);
    } catch (const InvalidInput& e) {
      problem = e.what();
    }
  }
  if (!svg.empty()) export_svg(d, svg);
  if (!json_out.empty()) export_json(d, json_out);
  if (g.json) {
    json j{{"schema", 1}, {"tiles", d.tiles.size()}, {"tile", tile}, {"overlap", d.overlap},
           {"area", d.area().to_string()}};
    if (boundary) {
      j["corners"] = boundary->size();
      j["perimeter"] = perimeter(*boundary);
    }
    if (!problem.empty()) j["problem"] = problem;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "tiles: " << d.tiles.size() << " (" << tile << ")\n";
    std::cout << "overlap: " << (d.overlap ? "yes" : "no") << "\n";
    std::cout << "area: " << d.area().to_string() << "\n";
    if (boundary)
      std::cout << "boundary: " << boundary->size() << " corners, perimeter " << fmt(perimeter(*boundary))
                << "\n";
    if (!problem.empty()) std::cout << "boundary: " << problem << "\n";
    if (!svg.empty()) std::cout << "wrote " << svg << "\n";
    if (!json_out.empty()) std::cout << "wrote " << json_out << "\n";
  }
  return d.overlap || !problem.empty() ? kFails : kOk;
}

SpectrumResult domain_spectrum(const Globals& g, const std::string& path, std::size_t k,
                               const Rational& h) {
  auto poly = boundary_from_json(read_file(path));
  EigenOptions eo;
  eo.seed = g.seed;
  return dirichlet_eigenvalues(rasterize(poly, h), k, eo);
}

int cmd_spectrum(const Globals& g, const std::string& path, std::size_t k, const std::string& h_text) {
  Rational h = parse_rational(h_text);
  auto s = domain_spectrum(g, path, k, h);
  if (g.json) {
    json j{{"schema", 1}, {"h", h.get_str()}, {"k", k}, {"eigenvalues", s.eigenvalues}};
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
      std::cout << std::setw(3) << i + 1 << "  " << fmt(s.eigenvalues[i], 12) << "\n";
  }
  return kOk;
}

int cmd_spectrum_compare(const Globals& g, const std::string& a, const std::string& b, std::size_t k,
                         const std::string& h_text, double tol) {
  Rational h = parse_rational(h_text);
  if (tol <= 0) tol = default_tolerance(h);
  auto sa = domain_spectrum(g, a, k, h);
  auto sb = domain_spectrum(g, b, k, h);
  auto cmp = compare_spectra(sa, sb);
  bool pass = cmp.within(tol);
  if (g.json) {
    json j{{"schema", 1},           {"h", h.get_str()},       {"spectrum_a", sa.eigenvalues},
           {"spectrum_b", sb.eigenvalues}, {"relative_gaps", cmp.relative_gaps},
           {"max_gap", cmp.max_gap}, {"tolerance", tol},       {"pass", pass}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "  k        A              B              gap\n";
    for (std::size_t i = 0; i < sa.eigenvalues.size(); ++i)
      std::cout << "  " << std::setw(2) << i + 1 << "  " << std::setw(13) << std::fixed
                << std::setprecision(6) << sa.eigenvalues[i] << "  " << std::setw(13) << sb.eigenvalues[i]
                << "  " << std::scientific << std::setprecision(2) << cmp.relative_gaps[i]
                << std::defaultfloat << "\n";
    std::cout << (pass ? "PASS" : "FAIL") << " max relative gap " << fmt(cmp.max_gap, 3) << " (tolerance "
              << fmt(tol, 3) << ")\n";
  }
  return pass ? kOk : kFails;
}

int cmd_catalog_list(const Globals& g) {
  auto entries = catalog_entries();
  if (g.json) {
    json arr = json::array();
    for (const auto& e : entries)
      arr.push_back({{"n", e.n}, {"q", e.q}, {"label", e.label}, {"order", e.order}, {"index", e.index}});
    std::cout << json{{"schema", 1}, {"entries", arr}}.dump(2) << "\n";
  } else {
    std::cout << "label       |G|        index  degree\n";
    for (const auto& e : entries)
      std::cout << std::left << std::setw(10) << e.label << "  " << std::setw(9) << e.order << "  "
                << std::setw(5) << e.index << "  " << 2 * e.index << std::right << "\n";
  }
  return kOk;
}

int cmd_catalog_emit(const Globals& g, const std::string& nq, const std::string& out) {
  std::size_t n = 0;
  unsigned q = 0;
  char comma = 0;
  std::istringstream in(nq);
  if (!(in >> n >> comma >> q) || comma != ',' || !in.eof())
    throw ParseError("--nq expects n,q such as 3,2");
  bool listed = false;
  for (const auto& e : catalog_entries()) listed = listed || (e.n == n && e.q == q);
  if (!listed) throw InvalidInput("(" + nq + ") is not in the catalog; see 'catalog list'");
  Triple t = psl_triple(n, q);
  std::string spec = write_triple_spec(t, duality_automorphism(n, q));
  if (out.empty()) {
    std::cout << spec;
  } else {
    write_file(out, spec);
    if (g.json)
      std::cout << json{{"schema", 1}, {"label", t.label}, {"out", out}}.dump(2) << "\n";
    else
      std::cout << "wrote " << out << "\n";
  }
  return kOk;
}

int cmd_scan(const Globals& g, const std::string& path, std::size_t nmax, std::size_t r,
             const std::string& out_dir) {
  Triple t = parse_triple_spec(read_file(path));
  auto pairs = okada_shudo_scan(t, nmax, r, g.bounds);
  std::vector<std::string> files;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      for (auto [side, sys] : {std::pair{"a", &pairs[i].a}, std::pair{"b", &pairs[i].b}}) {
        auto p = (std::filesystem::path(out_dir) / ("pair" + std::to_string(i + 1) + "_" + side + ".sys")).string();
        write_file(p, sys->to_text());
        files.push_back(p);
      }
  }
  if (g.json) {
    json arr = json::array();
    for (const auto& p : pairs) {
      std::vector<std::string> elems;
      for (const auto& e : p.elements) elems.push_back(e.to_cycle_string());
      arr.push_back({{"elements", elems}, {"a", p.a.to_text()}, {"b", p.b.to_text()}});
    }
    std::cout << json{{"schema", 1}, {"count", pairs.size()}, {"pairs", arr}, {"files", files}}.dump(2) << "\n";
  } else {
    std::cout << pairs.size() << " pairs\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::cout << "pair " << i + 1 << ":";
      for (const auto& e : pairs[i].elements) std::cout << " " << e.to_cycle_string();
      std::cout << "\n";
      if (out_dir.empty()) std::cout << pairs[i].a.to_text() << pairs[i].b.to_text();
    }
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
  }
  return kOk;
}

int cmd_gww(const Globals& g, const std::string& h_text, const std::string& tile, const std::string& out_dir,
            double tol, std::size_t k) {
  GwwOptions opt;
  opt.h = parse_rational(h_text);
  opt.tile = tile;
  opt.out_dir = out_dir;
  opt.tolerance = tol;
  opt.k = k;
  opt.seed = g.seed;
  opt.bounds = g.bounds;
  auto rep = run_gww_pipeline(opt);
  std::cout << (g.json ? rep.to_json() + "\n" : rep.to_text());
  return rep.pass ? kOk : kFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isodrum: isospectral drums from group triples"};
  // --h is the grid spacing, so help is long-only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--seed", g.seed, "Seed for the eigensolver start block")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (computation is single-threaded)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::function<int()> action;

  auto* verify_cmd = app.add_subcommand("verify", "Check AC, EC, FF, MAX, PAIR and INV of a triple spec");
  std::string spec_path;
  bool no_inv = false;
  std::size_t inv_r = 3;
  verify_cmd->add_option("spec", spec_path, "Triple spec file")->required();
  verify_cmd->add_flag("--no-inv", no_inv, "Skip the involution search");
  verify_cmd->add_option("--inv-r", inv_r, "Number of involutions")->check(CLI::Range(2, 8));
  verify_cmd->callback([&] { action = [&] { return cmd_verify(g, spec_path, no_inv, inv_r); }; });

  auto* construct_cmd = app.add_subcommand("construct", "Build a triple from a construct stanza");
  int type = 0;
  std::string out;
  construct_cmd->add_option("spec", spec_path, "Spec with a construct stanza")->required();
  construct_cmd->add_option("--type", type, "Override the variant")->check(CLI::IsMember({1, 2, 3}));
  construct_cmd->add_option("--out", out, "Write the triple spec here instead of stdout");
  construct_cmd->callback([&] { action = [&] { return cmd_construct(g, spec_path, type, out); }; });

  auto* transplant_cmd = app.add_subcommand("transplant", "Find a transplantation between two systems");
  std::string a_path, b_path;
  transplant_cmd->add_option("--a", a_path, "First system file")->required();
  transplant_cmd->add_option("--b", b_path, "Second system file")->required();
  transplant_cmd->callback([&] { action = [&] { return cmd_transplant(g, a_path, b_path); }; });

  auto* unfold_cmd = app.add_subcommand("unfold", "Unfold a system into a planar domain");
  std::string sys_path, tile = "half-square", svg, json_out;
  unfold_cmd->add_option("--system", sys_path, "System file")->required();
  unfold_cmd->add_option("--tile", tile, "Base tile")->check(CLI::IsMember({"half-square", "equilateral"}));
  unfold_cmd->add_option("--svg", svg, "SVG output");
  unfold_cmd->add_option("--out-json", json_out, "Domain JSON output");
  unfold_cmd->callback([&] { action = [&] { return cmd_unfold(g, sys_path, tile, svg, json_out); }; });

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Dirichlet eigenvalues of a domain JSON");
  std::string domain, h_text = "1/64";
  std::size_t k = 10;
  spectrum_cmd->add_option("--domain", domain, "Domain JSON file")->required();
  spectrum_cmd->add_option("--k", k, "Number of eigenvalues")->check(CLI::PositiveNumber);
  spectrum_cmd->add_option("--h", h_text, "Grid spacing, e.g. 1/64 or 0.015625");
  spectrum_cmd->callback([&] { action = [&] { return cmd_spectrum(g, domain, k, h_text); }; });

  auto* compare_cmd = app.add_subcommand("spectrum-compare", "Compare the spectra of two domains");
  double tol = 0;
  compare_cmd->add_option("--a", a_path, "First domain JSON")->required();
  compare_cmd->add_option("--b", b_path, "Second domain JSON")->required();
  compare_cmd->add_option("--k", k, "Number of eigenvalues")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--h", h_text, "Grid spacing");
  compare_cmd->add_option("--tol", tol, "Relative tolerance (default 1% for h <= 1/64, else 2%)");
  compare_cmd->callback([&] { action = [&] { return cmd_spectrum_compare(g, a_path, b_path, k, h_text, tol); }; });

  auto* catalog_cmd = app.add_subcommand("catalog", "Projective triples PSL(n,q)");
  catalog_cmd->require_subcommand(1);
  auto* list_cmd = catalog_cmd->add_subcommand("list", "List the catalog");
  list_cmd->callback([&] { action = [&] { return cmd_catalog_list(g); }; });
  auto* emit_cmd = catalog_cmd->add_subcommand("emit", "Write the triple spec of one entry");
  std::string nq;
  emit_cmd->add_option("--nq", nq, "n,q")->required();
  emit_cmd->add_option("--out", out, "Output file (default stdout)");
  emit_cmd->callback([&] { action = [&] { return cmd_catalog_emit(g, nq, out); }; });

  auto* scan_cmd = app.add_subcommand("scan", "Tree pairs generated by involution tuples");
  std::size_t nmax = 7, r = 3;
  std::string out_dir;
  scan_cmd->add_option("spec", spec_path, "Triple spec file")->required();
  scan_cmd->add_option("--nmax", nmax, "Largest index scanned");
  scan_cmd->add_option("--r", r, "Number of involutions");
  scan_cmd->add_option("--out-dir", out_dir, "Write pair system files here");
  scan_cmd->callback([&] { action = [&] { return cmd_scan(g, spec_path, nmax, r, out_dir); }; });

  auto* gww_cmd = app.add_subcommand("gww", "The seven-tile drum pair end to end");
  gww_cmd->add_option("--h", h_text, "Grid spacing");
  gww_cmd->add_option("--tile", tile, "Base tile")->check(CLI::IsMember({"half-square", "equilateral"}));
  gww_cmd->add_option("--out-dir", out_dir, "Write SVG, JSON and system files here");
  gww_cmd->add_option("--tol", tol, "Relative tolerance");
  gww_cmd->add_option("--k", k, "Number of eigenvalues")->check(CLI::PositiveNumber);
  gww_cmd->callback([&] { action = [&] { return cmd_gww(g, h_text, tile, out_dir, tol, k); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    g.bounds = bounds_from_env();
    return action();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return kBound;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const NonConvergence& e) {
    std::cerr << "eigensolver did not converge: " << e.what() << "\n";
    return kFails;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
}
