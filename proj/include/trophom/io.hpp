#pragma once

#include <json.hpp>

#include <sstream>

#include "trophom/pipeline.hpp"

namespace trophom {

namespace io_detail {

using nlohmann::json;

inline void require(bool cond, const std::string& where, const std::string& msg) {
  if (!cond) fail("SchemaError", msg + " (at " + where + ")");
}

inline GaussianRational parse_complex(const json& j, const std::string& where) {
  if (j.is_string()) return GaussianRational(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return GaussianRational(Rational(j.get<long>()));
  require(j.is_array() && j.size() == 2, where, "complex literal must be [\"re\",\"im\"]");
  auto part = [&](const json& p) {
    if (p.is_string()) return parse_rational(p.get<std::string>());
    require(p.is_number_integer(), where, "complex parts must be exact strings or integers");
    return Rational(p.get<long>());
  };
  return GaussianRational(part(j[0]), part(j[1]));
}

inline ExpVec parse_exponents(const json& j, size_t nvars, const std::string& where) {
  require(j.is_array(), where, "exponent vector must be an array");
  require(j.size() == nvars, where,
          "exponent vector must have " + std::to_string(nvars) + " entries");
  ExpVec e;
  for (const auto& x : j) {
    require(x.is_number_integer(), where, "exponents must be integers");
    e.push_back(x.get<int64_t>());
  }
  return e;
}

inline LaurentPoly parse_poly(const json& j, size_t nvars, const std::string& where) {
  require(j.is_array() && !j.empty(), where, "polynomial must be a nonempty term array");
  LaurentPoly f(nvars);
  size_t k = 0;
  for (const auto& t : j) {
    std::string tw = where + "/" + std::to_string(k++);
    require(t.contains("coeff") && t.contains("exponents"), tw,
            "term needs coeff and exponents");
    f.add_term(parse_exponents(t["exponents"], nvars, tw),
               PuiseuxScalar(parse_complex(t["coeff"], tw)));
  }
  require(!f.is_zero(), where, "polynomial is identically zero");
  return f;
}

}  // namespace io_detail

inline ProblemSpec parse_input(const std::string& bytes) {
  using io_detail::require;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const std::exception& e) {
    fail("SchemaError", std::string("invalid JSON: ") + e.what());
  }
  ProblemSpec spec;
  require(j.contains("ring") && j["ring"].contains("variables"), "/ring",
          "ring.variables is required");
  for (const auto& v : j["ring"]["variables"]) spec.variables.push_back(v.get<std::string>());
  if (j["ring"].contains("parameters"))
    for (const auto& p : j["ring"]["parameters"]) spec.parameters.push_back(p.get<std::string>());
  require(j.contains("kind"), "/kind", "kind is required");
  spec.kind = j["kind"].get<std::string>();
  require(spec.kind == "vertical" || spec.kind == "horizontal" || spec.kind == "plain", "/kind",
          "kind must be vertical, horizontal, or plain");
  size_t n = spec.variables.size();
  require(n > 0, "/ring/variables", "at least one variable");

  require(j.contains("target"), "/target", "target parameter values are required");
  size_t k = 0;
  for (const auto& t : j["target"])
    spec.target.push_back(io_detail::parse_complex(t, "/target/" + std::to_string(k++)));

  if (spec.kind == "vertical") {
    require(j.contains("coefficients") && j.contains("exponents"), "/",
            "vertical systems need coefficients and exponents");
    size_t rows = 0;
    for (const auto& row : j["coefficients"]) {
      std::vector<GaussianRational> r;
      size_t c = 0;
      for (const auto& x : row)
        r.push_back(io_detail::parse_complex(
            x, "/coefficients/" + std::to_string(rows) + "/" + std::to_string(c++)));
      spec.vertical.coeffs.push_back(std::move(r));
      ++rows;
    }
    size_t m = 0;
    for (const auto& e : j["exponents"])
      spec.vertical.exponents.push_back(
          io_detail::parse_exponents(e, n, "/exponents/" + std::to_string(m++)));
    require(rows == n, "/coefficients", "vertical system must be square");
    try {
      spec.vertical.validate();
    } catch (const Error& e) {
      fail("DimensionError", e.what());
    }
    require(spec.target.size() == spec.vertical.nparams(), "/target",
            "one target value per parameter column");
  } else if (spec.kind == "horizontal") {
    require(j.contains("coefficients") && j.contains("support"), "/",
            "horizontal systems need coefficients and support");
    size_t rows = 0;
    for (const auto& row : j["coefficients"]) {
      std::vector<GaussianRational> r;
      size_t c = 0;
      for (const auto& x : row)
        r.push_back(io_detail::parse_complex(
            x, "/coefficients/" + std::to_string(rows) + "/" + std::to_string(c++)));
      spec.horizontal.coeffs.push_back(std::move(r));
      ++rows;
    }
    size_t m = 0;
    for (const auto& q : j["support"])
      spec.horizontal.support.push_back(
          io_detail::parse_poly(q, n, "/support/" + std::to_string(m++)));
    require(rows == n, "/coefficients", "horizontal system must be square");
    try {
      spec.horizontal.validate();
    } catch (const Error& e) {
      fail("DimensionError", e.what());
    }
    require(spec.target.size() == rows * spec.horizontal.nsupport(), "/target",
            "horizontal systems need one target value per (row, support) pair");
    if (j.contains("base")) {
      TransverseBase B;
      size_t bi = 0;
      for (const auto& b : j["base"]["polynomials"])
        B.base.push_back(io_detail::parse_poly(b, n, "/base/polynomials/" + std::to_string(bi++)));
      for (const auto& row : j["base"]["powers"])
        B.powers.push_back(io_detail::parse_exponents(row, B.base.size(), "/base/powers"));
      require(B.powers.size() == spec.horizontal.nsupport(), "/base/powers",
              "one powers row per support polynomial");
      spec.base = std::move(B);
    }
  } else {
    require(j.contains("polynomials"), "/polynomials", "plain systems need polynomials");
    require(!j["polynomials"].empty(), "/polynomials", "empty polynomial list");
    size_t pi = 0;
    for (const auto& poly : j["polynomials"]) {
      std::string pw = "/polynomials/" + std::to_string(pi++);
      require(poly.is_array() && !poly.empty(), pw, "polynomial must be a nonempty term array");
      std::vector<PlainTerm> terms;
      size_t ti = 0;
      for (const auto& t : poly) {
        std::string tw = pw + "/" + std::to_string(ti++);
        require(t.contains("coeff") && t.contains("exponents"), tw,
                "term needs coeff and exponents");
        PlainTerm term;
        term.coeff = io_detail::parse_complex(t["coeff"], tw);
        term.e = io_detail::parse_exponents(t["exponents"], n, tw);
        if (t.contains("param")) {
          size_t p = t["param"].get<size_t>();
          require(p < spec.parameters.size(), tw, "param index out of range");
          term.param = p;
        }
        terms.push_back(std::move(term));
      }
      spec.plain.push_back(std::move(terms));
    }
    if (j.contains("groups"))
      for (const auto& g : j["groups"]) {
        std::vector<size_t> rows;
        for (const auto& i : g) rows.push_back(i.get<size_t>());
        spec.groups.push_back(std::move(rows));
      }
    require(spec.target.size() == spec.parameters.size(), "/target",
            "one target value per parameter");
  }

  for (size_t i = 0; i < spec.target.size(); ++i)
    require(!spec.target[i].is_zero(), "/target/" + std::to_string(i),
            "target parameters must be nonzero");

  if (j.contains("route")) {
    std::string r = j["route"].get<std::string>();
    if (r == "auto") spec.route = Route::automatic;
    else if (r == "vertical") spec.route = Route::vertical;
    else if (r == "transverse") spec.route = Route::transverse;
    else if (r == "relaxed") spec.route = Route::relaxed;
    else if (r == "bkk") spec.route = Route::bkk;
    else fail("SchemaError", "unknown route '" + r + "' (at /route)");
  }
  if (j.contains("seed")) spec.seed = j["seed"].get<uint64_t>();
  if (j.contains("valuation")) {
    std::vector<Rational> v;
    for (const auto& x : j["valuation"])
      v.push_back(x.is_string() ? parse_rational(x.get<std::string>())
                                : Rational(x.get<long>()));
    spec.valuation = std::move(v);
  }
  if (j.contains("options")) {
    const auto& o = j["options"];
    if (o.contains("epsilon")) spec.track.epsilon_offset = o["epsilon"].get<double>();
    if (o.contains("tol")) spec.track.endpoint_residual_tol = o["tol"].get<double>();
    if (o.contains("threads")) spec.track.threads = o["threads"].get<int>();
    if (o.contains("max_steps")) spec.track.max_steps = o["max_steps"].get<long>();
    if (o.contains("initial_step")) spec.track.initial_step = o["initial_step"].get<double>();
    if (o.contains("elide")) spec.elide = o["elide"].get<bool>();
    if (o.contains("torus_only")) spec.torus_only = o["torus_only"].get<bool>();
  }
  return spec;
}

namespace io_detail {

inline json rational_json(const Rational& q) { return json(to_string(q)); }

inline json complex_json(const std::complex<double>& z) {
  char re[40], im[40];
  std::snprintf(re, sizeof re, "%.17g", z.real());
  std::snprintf(im, sizeof im, "%.17g", z.imag());
  return json::array({std::string(re), std::string(im)});
}

}  // namespace io_detail

inline std::string route_name(Route r) {
  switch (r) {
    case Route::automatic: return "auto";
    case Route::vertical: return "vertical";
    case Route::transverse: return "transverse";
    case Route::relaxed: return "relaxed";
    case Route::bkk: return "bkk";
  }
  return "?";
}

inline std::string emit_output(const Report& rep, const std::string& format) {
  using nlohmann::json;
  if (format == "json") {
    json out;
    out["route"] = route_name(rep.route);
    out["valuation"] = json::array();
    for (const auto& v : rep.valuation) out["valuation"].push_back(io_detail::rational_json(v));
    out["tropical_points"] = json::array();
    for (const auto& p : rep.points) {
      json pj;
      pj["w"] = json::array();
      for (const auto& c : p.w) pj["w"].push_back(io_detail::rational_json(c));
      pj["multiplicity"] = p.multiplicity.convert_to<long>();
      out["tropical_points"].push_back(pj);
    }
    out["root_count"] = rep.root_count.convert_to<long>();
    if (rep.command == Command::mixed_volume_cmd || rep.command == Command::mixed_cells_cmd)
      out["mixed_volume"] = rep.mixed_volume_value.convert_to<long>();
    if (rep.command == Command::mixed_cells_cmd) {
      out["mixed_cells"] = json::array();
      for (const auto& c : rep.cells) {
        json cj;
        cj["w"] = json::array();
        for (const auto& v : c.w) cj["w"].push_back(io_detail::rational_json(v));
        cj["volume"] = c.volume.convert_to<long>();
        cj["pairs"] = json::array();
        for (const auto& pr : c.pairs)
          cj["pairs"].push_back(json::array({json(pr[0]), json(pr[1])}));
        out["mixed_cells"].push_back(cj);
      }
    }
    out["solutions"] = json::array();
    if (rep.command == Command::solve) {
      for (const auto& c : rep.solutions.solutions) {
        json sj;
        sj["coords"] = json::array();
        for (const auto& z : c.coords) sj["coords"].push_back(io_detail::complex_json(z));
        sj["residual"] = c.residual;
        sj["cluster"] = c.size;
        out["solutions"].push_back(sj);
      }
      json diag;
      diag["paths"] = rep.solutions.paths.size();
      diag["successes"] = rep.solutions.successes;
      json statuses = json::array();
      for (const auto& p : rep.solutions.paths) statuses.push_back(to_string(p.status));
      diag["statuses"] = statuses;
      json counts = json::array();
      for (const auto& c : rep.start_counts) counts.push_back(c.convert_to<long>());
      diag["start_counts"] = counts;
      diag["redraws"] = rep.redraws;
      out["diagnostics"] = diag;
    } else {
      out["diagnostics"] = json::object({{"redraws", rep.redraws}});
    }
    out["warnings"] = json::array();
    for (const auto& w : rep.warnings) out["warnings"].push_back(w);
    return out.dump(2) + "\n";
  }

  // human-readable text
  std::ostringstream os;
  os << "route: " << route_name(rep.route) << "\n";
  os << "valuation:";
  for (const auto& v : rep.valuation) os << " " << to_string(v);
  os << "\n";
  if (!rep.points.empty()) {
    os << "tropical points:\n";
    for (const auto& p : rep.points) {
      os << "  w = (";
      for (size_t i = 0; i < p.w.size(); ++i) os << (i ? "," : "") << to_string(p.w[i]);
      os << ")  multiplicity " << p.multiplicity.str() << "\n";
    }
  }
  os << "root count: " << rep.root_count.str() << "\n";
  if (rep.command == Command::mixed_volume_cmd || rep.command == Command::mixed_cells_cmd)
    os << "mixed volume: " << rep.mixed_volume_value.str() << "\n";
  if (rep.command == Command::solve) {
    os << "paths: " << rep.solutions.paths.size() << ", successes: " << rep.solutions.successes
       << "\n";
    for (const auto& c : rep.solutions.solutions) {
      os << "  solution (cluster " << c.size << ", residual " << c.residual << "):";
      for (const auto& z : c.coords)
        os << "  " << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
      os << "\n";
    }
  }
  for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace trophom
