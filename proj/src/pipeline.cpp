#include "isodrum/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "isodrum/catalog.hpp"
#include "isodrum/errors.hpp"
#include "isodrum/io.hpp"

namespace isodrum {

namespace {

std::string yes_no(bool v) { return v ? "yes" : "no"; }

std::string format_gap(double g) {
  std::ostringstream os;
  os << std::setprecision(3) << g;
  return os.str();
}

}  // namespace

namespace {

std::optional<DrumPair> first_drum_pair(const std::vector<SystemPair>& scan) {
  BaseTile tile = BaseTile::half_square();
  for (std::size_t i = 0; i < scan.size(); ++i) {
    std::vector<std::size_t> order{0, 1, 2};
    do {
      auto a = recolored(scan[i].a, order);
      auto b = recolored(scan[i].b, order);
      auto da = unfold(a, tile);
      auto db = unfold(b, tile);
      if (da.overlap || db.overlap) continue;
      try {
        if (congruent(boundary_polygon(da), boundary_polygon(db))) continue;
      } catch (const InvalidInput&) {
        continue;
      }
      return DrumPair{a, b, i, order};
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return std::nullopt;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x + 1);
  return s;
}

}  // namespace

DrumPair gww_systems(const Bounds& bounds) {
  auto pair = first_drum_pair(okada_shudo_scan(psl_triple(3, 2), 7, 3, bounds));
  if (!pair) throw std::logic_error("psl(3,2) scan has no noncongruent half-square pair");
  return *pair;
}

std::string GwwReport::failed_stage() const {
  for (const auto& s : stages)
    if (!s.ok) return s.name;
  return "";
}

GwwReport run_gww_pipeline(const GwwOptions& opt) {
  GwwReport rep;
  rep.tolerance = opt.tolerance > 0 ? opt.tolerance : (opt.h <= Rational(1, 64) ? 0.01 : 0.02);
  auto stage = [&](const std::string& name, bool ok, std::string detail) {
    rep.stages.push_back({name, ok, std::move(detail)});
    return ok;
  };

  Triple t = psl_triple(3, 2);
  std::size_t index = t.G.order() / t.H.order();
  if (!stage("catalog", t.G.order() == 168 && index == 7,
             "|G| = " + std::to_string(t.G.order()) + ", index " + std::to_string(index)))
    return rep;
  if (!stage("AC", is_ac(t, opt.bounds), "point and hyperplane stabilizers")) return rep;

  auto w = check_inv(t, 3, true, opt.bounds);
  if (!stage("INV", w && w->k_system, w ? "three involutions" : "no witness")) return rep;
  rep.witness_a = w->h_system;
  rep.witness_b = *w->k_system;
  for (auto f : w->fixed_points) rep.witness_fixed_sum += f;
  if (!stage("tree", is_tree(*rep.witness_a) && is_tree(*rep.witness_b), "both Schreier graphs"))
    return rep;
  std::size_t target = (3 - 2) * index + 2;
  if (!stage("Fixeq",
             fixeq_check(*rep.witness_a) && fixeq_check(*rep.witness_b) &&
                 rep.witness_fixed_sum == target,
             "sum " + std::to_string(rep.witness_fixed_sum) + " = (3-2)*7 + 2"))
    return rep;

  auto scan = okada_shudo_scan(t, 7, 3, opt.bounds);
  auto drums = first_drum_pair(scan);
  if (!stage("scan", drums.has_value(),
             drums ? "pair " + std::to_string(drums->scan_index + 1) + " of " +
                         std::to_string(scan.size()) + ", side order " + join(drums->side_order)
                   : std::to_string(scan.size()) + " pairs, none unfolds to noncongruent drums"))
    return rep;
  rep.a = drums->a;
  rep.b = drums->b;
  for (std::size_t mu = 0; mu < rep.a->sides(); ++mu) rep.fixed_sum += rep.a->trace(mu);

  rep.solution = find_transplantation(*rep.a, *rep.b);
  bool invertible = rep.solution && rep.solution->invertible;
  if (!stage("T invertible", invertible,
             invertible ? "det " + rep.solution->determinant.get_str() : "no invertible intertwiner"))
    return rep;
  bool isometric = rep.solution->permutation_solution.has_value() ||
                   detect_isometry(*rep.a, *rep.b).has_value();
  if (!stage("nonisometric", !isometric,
             isometric ? "a tile relabeling maps A to B" : "no permutation intertwiner"))
    return rep;

  BaseTile base = BaseTile::named(opt.tile);
  rep.domain_a = unfold(*rep.a, base);
  rep.domain_b = unfold(*rep.b, base);
  bool overlap = rep.domain_a->overlap || rep.domain_b->overlap;
  std::vector<Vec2> pa, pb;
  std::string problem;
  if (!overlap) {
    try {
      pa = boundary_polygon(*rep.domain_a);
      pb = boundary_polygon(*rep.domain_b);
    } catch (const InvalidInput& e) {
      problem = e.what();
    }
  }
  std::string detail = "overlap A " + yes_no(rep.domain_a->overlap) + ", B " +
                       yes_no(rep.domain_b->overlap) + "; area " + rep.domain_a->area().to_string();
  if (!problem.empty()) detail += "; " + problem;

  if (!opt.out_dir.empty()) {
    std::filesystem::create_directories(opt.out_dir);
    auto path = [&](const std::string& f) { return (std::filesystem::path(opt.out_dir) / f).string(); };
    export_svg(*rep.domain_a, path("gww_a.svg"));
    export_svg(*rep.domain_b, path("gww_b.svg"));
    export_json(*rep.domain_a, path("gww_a.json"));
    export_json(*rep.domain_b, path("gww_b.json"));
    write_file(path("gww_a.sys"), rep.a->to_text());
    write_file(path("gww_b.sys"), rep.b->to_text());
    for (const char* f : {"gww_a.svg", "gww_b.svg", "gww_a.json", "gww_b.json", "gww_a.sys", "gww_b.sys"})
      rep.files.push_back(path(f));
  }
  if (!stage("unfold", !overlap && problem.empty(), detail)) return rep;
  if (!stage("noncongruent", !congruent(pa, pb),
             std::to_string(pa.size()) + " and " + std::to_string(pb.size()) + " corners"))
    return rep;

  auto ma = rasterize(pa, opt.h);
  auto mb = rasterize(pb, opt.h);
  EigenOptions eo;
  eo.seed = opt.seed;
  rep.spectrum_a = dirichlet_eigenvalues(ma, opt.k, eo);
  rep.spectrum_b = dirichlet_eigenvalues(mb, opt.k, eo);
  rep.comparison = compare_spectra(*rep.spectrum_a, *rep.spectrum_b);
  stage("spectra", rep.comparison->within(rep.tolerance),
        "max relative gap " + format_gap(rep.comparison->max_gap) + " (tolerance " +
            format_gap(rep.tolerance) + ", h = " + opt.h.get_str() + ")");
  rep.pass = rep.failed_stage().empty();
  return rep;
}

std::string GwwReport::to_text() const {
  std::ostringstream os;
  for (const auto& s : stages) os << s.name << ": " << (s.ok ? "✓" : "✗") << " (" << s.detail << ")\n";
  if (solution)
    os << "permutation solution: " << (solution->permutation_solution ? "✓" : "✗") << "\n";
  if (spectrum_a && spectrum_b && comparison) {
    os << "  k        A              B              gap\n";
    for (std::size_t i = 0; i < spectrum_a->eigenvalues.size(); ++i)
      os << "  " << std::setw(2) << i + 1 << "  " << std::setw(13) << std::fixed
         << std::setprecision(6) << spectrum_a->eigenvalues[i] << "  " << std::setw(13)
         << spectrum_b->eigenvalues[i] << "  " << std::scientific << std::setprecision(2)
         << comparison->relative_gaps[i] << std::defaultfloat << "\n";
  }
  for (const auto& f : files) os << "wrote " << f << "\n";
  if (pass)
    os << "PASS\n";
  else
    os << "FAIL at stage " << failed_stage() << "\n";
  return os.str();
}

std::string GwwReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["pass"] = pass;
  j["failed_stage"] = failed_stage();
  j["stages"] = nlohmann::ordered_json::array();
  for (const auto& s : stages) j["stages"].push_back({{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
  j["witness_fixed_point_sum"] = witness_fixed_sum;
  if (witness_a) j["witness_a"] = witness_a->to_text();
  if (witness_b) j["witness_b"] = witness_b->to_text();
  j["fixed_point_sum"] = fixed_sum;
  if (a) j["system_a"] = a->to_text();
  if (b) j["system_b"] = b->to_text();
  if (solution) {
    j["invertible"] = solution->invertible;
    j["determinant"] = solution->determinant.get_str();
    j["permutation_solution"] = solution->permutation_solution.has_value();
    nlohmann::ordered_json T = nlohmann::ordered_json::array();
    for (const auto& row : solution->T) {
      nlohmann::ordered_json r = nlohmann::ordered_json::array();
      for (const auto& x : row) r.push_back(x.get_str());
      T.push_back(r);
    }
    j["T"] = T;
  }
  if (spectrum_a) j["spectrum_a"] = spectrum_a->eigenvalues;
  if (spectrum_b) j["spectrum_b"] = spectrum_b->eigenvalues;
  if (comparison) {
    j["relative_gaps"] = comparison->relative_gaps;
    j["max_gap"] = comparison->max_gap;
  }
  j["tolerance"] = tolerance;
  j["files"] = files;
  return j.dump(2);
}

}  // namespace isodrum
