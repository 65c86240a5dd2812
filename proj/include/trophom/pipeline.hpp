#pragma once

#include "trophom/tracker.hpp"

namespace trophom {

enum class Route { automatic, vertical, transverse, relaxed, bkk };
enum class Command { solve, root_count, tropicalize, mixed_volume_cmd, mixed_cells_cmd };

struct PlainTerm {
  GaussianRational coeff;
  ExpVec e;
  std::optional<size_t> param;
};

struct ProblemSpec {
  std::vector<std::string> variables, parameters;
  std::string kind;  // vertical | horizontal | plain
  VerticalSystem vertical;
  HorizontalSystem horizontal;
  std::optional<TransverseBase> base;
  std::vector<std::vector<PlainTerm>> plain;
  std::vector<std::vector<size_t>> groups;  // optional block grouping (plain)
  std::vector<GaussianRational> target;     // one value per parameter
  Route route = Route::automatic;
  uint64_t seed = 1;
  std::optional<std::vector<Rational>> valuation;
  TrackOptions track;
  bool elide = false;
  bool torus_only = false;
  int max_redraws = 5;
};

struct Report {
  Command command = Command::solve;
  Route route = Route::automatic;
  std::vector<Rational> valuation;  // as used (including fresh components)
  std::vector<TropicalPoint> points;
  Int root_count = 0;
  std::vector<Int> start_counts;  // per point, for solve
  SolutionSet solutions;
  std::vector<MixedCell> cells;
  Int mixed_volume_value = 0;
  std::vector<std::string> warnings;
  bool engine_complete = true;
  size_t ambient = 0, nx = 0;
  std::vector<std::string> names;
  int exit_code = 0;
  long redraws = 0;
};

inline Route resolve_route(const ProblemSpec& spec) {
  if (spec.route != Route::automatic) return spec.route;
  if (spec.kind == "vertical") return Route::vertical;
  if (spec.kind == "horizontal") return spec.base ? Route::transverse : Route::relaxed;
  return Route::bkk;
}

namespace detail {

inline size_t valuation_arity(const ProblemSpec& spec, Route route) {
  if (spec.kind == "vertical") return spec.vertical.nparams();
  if (spec.kind == "horizontal") {
    size_t base_arity = spec.horizontal.nvars() * spec.horizontal.nsupport();
    if (route == Route::relaxed) {
      for (const auto& q : spec.horizontal.support) base_arity += q.terms.size();
    }
    return base_arity;
  }
  return spec.parameters.size();
}

inline std::vector<Rational> draw_valuation(size_t arity, uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 7);
  std::uniform_int_distribution<long> d(1, 10000);
  std::vector<Rational> v;
  for (size_t i = 0; i < arity; ++i) v.push_back(Rational(d(rng)));
  return v;
}

// explicit-polynomial systems: specialize each term's parameter and group
// rows into linear-in-monomials blocks
inline ConcreteSystem build_plain(const ProblemSpec& spec, const std::vector<Rational>& v) {
  size_t n = spec.variables.size();
  if (spec.plain.size() != n)
    fail("DimensionError", "plain system must be square: " + std::to_string(spec.plain.size()) +
                               " polynomials, " + std::to_string(n) + " variables");
  ConcreteSystem sys;
  sys.nx = sys.ambient = n;
  sys.names = spec.variables;
  sys.provenance = "plain";
  for (const auto& poly : spec.plain) {
    LaurentPoly f(n), ft(n);
    for (const auto& term : poly) {
      GaussianRational c = term.coeff;
      Rational val(0);
      if (term.param) {
        c = c * spec.target[*term.param];
        val = v[*term.param];
      }
      f.add_term(term.e, PuiseuxScalar::monomial(val, c));
      ft.add_term(term.e, PuiseuxScalar(c));
    }
    if (f.is_zero()) fail("SchemaError", "zero polynomial in plain system");
    sys.polynomials.push_back(f);
    sys.target.push_back(ft);
  }
  std::vector<std::vector<size_t>> groups = spec.groups;
  if (groups.empty())
    for (size_t i = 0; i < n; ++i) groups.push_back({i});
  for (const auto& g : groups) {
    if (g.size() == 1) {
      sys.blocks.push_back(Block::from_poly(sys.polynomials[g[0]]));
      continue;
    }
    std::set<ExpVec> mons;
    for (size_t i : g)
      for (const auto& [e, c] : sys.polynomials[i].terms) mons.insert(e);
    std::vector<ExpVec> monlist(mons.begin(), mons.end());
    std::vector<std::vector<PuiseuxScalar>> m;
    for (size_t i : g) {
      std::vector<PuiseuxScalar> row;
      for (const auto& e : monlist) {
        auto it = sys.polynomials[i].terms.find(e);
        row.push_back(it == sys.polynomials[i].terms.end() ? PuiseuxScalar{} : it->second);
      }
      m.push_back(std::move(row));
    }
    sys.blocks.push_back(Block::make(m, monlist, n));
  }
  return sys;
}

inline FreshAssignment ones_assignment(const HorizontalSystem& H,
                                       const std::vector<Rational>& fresh_v) {
  FreshAssignment fa;
  size_t k = 0;
  for (const auto& q : H.support) {
    fa.values.emplace_back(q.terms.size(), GaussianRational(1));
    std::vector<Rational> vs;
    for (size_t i = 0; i < q.terms.size(); ++i) vs.push_back(fresh_v[k++]);
    fa.valuations.push_back(vs);
  }
  return fa;
}

inline void strip_constant_terms(std::vector<LaurentPoly>& polys) {
  for (auto& f : polys) {
    ExpVec zero(f.nvars, 0);
    f.terms.erase(zero);
    if (f.is_zero()) fail("DimensionError", "polynomial vanished after dropping constants");
  }
}

}  // namespace detail

inline ConcreteSystem build_system(const ProblemSpec& spec, Route route,
                                   const std::vector<Rational>& v) {
  if (spec.kind == "vertical") {
    if (route != Route::vertical && route != Route::bkk)
      fail("RouteUnsupported", "vertical systems support the vertical and bkk routes");
    ConcreteSystem sys = specialize(spec.vertical, spec.target, v);
    if (route == Route::bkk) {  // per-row hypersurfaces instead of one block
      sys.blocks.clear();
      for (const auto& f : sys.polynomials) sys.blocks.push_back(Block::from_poly(f));
      sys.provenance = "vertical-bkk";
    }
    return sys;
  }
  if (spec.kind == "horizontal") {
    size_t nm = spec.horizontal.nvars() * spec.horizontal.nsupport();
    std::vector<Rational> va(v.begin(), v.begin() + nm);
    switch (route) {
      case Route::transverse:
        if (!spec.base) fail("RouteUnsupported", "transverse route requires a base");
        return two_stage_modification(spec.horizontal, *spec.base, spec.target, va, spec.elide);
      case Route::relaxed: {
        std::vector<Rational> fresh(v.begin() + nm, v.end());
        return relaxed_modification(spec.horizontal, spec.target, va,
                                    detail::ones_assignment(spec.horizontal, fresh));
      }
      case Route::bkk:
        return specialize(spec.horizontal, spec.target, va);
      default:
        fail("RouteUnsupported", "horizontal systems support transverse, relaxed, and bkk");
    }
  }
  if (route != Route::bkk) fail("RouteUnsupported", "plain systems support only the bkk route");
  return detail::build_plain(spec, v);
}

// Runs one full pipeline pass.  Genericity failures (NonGenericValuation)
// trigger a redraw of v unless the valuation was pinned.
inline Report run_pipeline(const ProblemSpec& spec, Command cmd) {
  Report rep;
  rep.command = cmd;
  Route route = resolve_route(spec);
  rep.route = route;
  size_t arity = detail::valuation_arity(spec, route);
  if (spec.valuation && spec.valuation->size() != arity &&
      !(spec.kind == "horizontal" && route == Route::relaxed &&
        spec.valuation->size() == spec.horizontal.nvars() * spec.horizontal.nsupport()))
    fail("DimensionError", "valuation vector must have " + std::to_string(arity) +
                               " components for this route");

  int attempts = spec.valuation ? 1 : spec.max_redraws;
  Error last("NonGenericValuation", "unset");
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<Rational> v;
    if (spec.valuation) {
      v = *spec.valuation;
      // pinned a-valuations with drawn fresh components (relaxed route)
      if (v.size() < arity) {
        std::vector<Rational> extra =
            detail::draw_valuation(arity - v.size(), spec.seed + attempt);
        v.insert(v.end(), extra.begin(), extra.end());
      }
    } else {
      v = detail::draw_valuation(arity, spec.seed + attempt);
    }
    try {
      ConcreteSystem sys = build_system(spec, route, v);
      if (spec.torus_only) {
        detail::strip_constant_terms(sys.polynomials);
        sys.blocks.clear();
        for (const auto& f : sys.polynomials) sys.blocks.push_back(Block::from_poly(f));
      }
      rep.valuation = v;
      rep.ambient = sys.ambient;
      rep.nx = sys.nx;
      rep.names = sys.names;
      rep.redraws = attempt;

      if (cmd == Command::mixed_volume_cmd) {
        std::vector<TropicalForm> forms;
        for (const auto& f : sys.polynomials) forms.push_back(trop_form(f));
        rep.mixed_volume_value = mixed_volume(forms, sys.ambient, spec.seed);
        return rep;
      }
      if (cmd == Command::mixed_cells_cmd) {
        std::vector<TropicalForm> forms;
        for (const auto& f : sys.polynomials) forms.push_back(trop_form(f));
        rep.cells = mixed_cells(forms, sys.ambient);
        for (const auto& c : rep.cells) rep.mixed_volume_value += c.volume;
        return rep;
      }

      EngineOptions eng;
      eng.seed = spec.seed + attempt;
      eng.stable = (cmd != Command::solve);  // solve needs clean transverse data
      EngineResult er = stable_intersection_points(sys.blocks, sys.ambient, eng);
      rep.points = er.points;
      rep.engine_complete = er.complete;
      for (const auto& wmsg : er.warnings) rep.warnings.push_back(wmsg);
      rep.root_count = 0;
      for (const auto& p : er.points) rep.root_count += p.multiplicity;
      if (!er.complete)
        rep.warnings.push_back("circuit enumeration incomplete: counts are unavailable");

      if (cmd == Command::tropicalize || cmd == Command::root_count) return rep;

      // solve: start data, homotopies, tracking
      std::vector<StartBundle> bundles;
      std::vector<Homotopy> homotopies;
      for (const auto& p : er.points) {
        StartBundle sb = start_bundle(sys, p);
        rep.start_counts.push_back(sb.count);
        const std::vector<LaurentPoly>& basis =
            sb.groebner_based ? sb.basis : sys.polynomials;
        const std::vector<LaurentPoly>* check =
            (!sb.groebner_based && sys.substitutions.empty()) ? &sys.target : nullptr;
        homotopies.push_back(build_homotopy(basis, p.w, check));
        homotopies.back().groebner_based = sb.groebner_based;
        bundles.push_back(std::move(sb));
      }
      rep.solutions = solve_all(bundles, homotopies, sys, spec.track);
      size_t total_paths = rep.solutions.paths.size();
      rep.exit_code = (rep.solutions.successes == total_paths && total_paths > 0) ? 0 : 2;
      return rep;
    } catch (const Error& e) {
      if (e.kind != "NonGenericValuation" && e.kind != "PerturbationFailure") throw;
      last = e;
    }
  }
  Error out("GenericityFailure",
            std::string(last.what()) + " (after " + std::to_string(attempts) +
                " attempt(s); with a pinned valuation, unpin it or change --seed)");
  throw out;
}

}  // namespace trophom
