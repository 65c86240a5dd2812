#include <catch2/catch_amalgamated.hpp>

#include "fixtures_common.hpp"
#include "trophom/tracker.hpp"

using namespace trophom;
using namespace fixtures;

namespace {

std::vector<Rational> qv(std::vector<long> v) {
  std::vector<Rational> r;
  for (long x : v) r.push_back(Rational(x));
  return r;
}

bool proportional(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms.size() != b.terms.size()) return false;
  std::optional<GaussianRational> ratio;
  for (const auto& [e, c] : a.terms) {
    auto it = b.terms.find(e);
    if (it == b.terms.end()) return false;
    if (c.terms.size() != it->second.terms.size()) return false;
    for (size_t k = 0; k < c.terms.size(); ++k) {
      if (c.terms[k].exp != it->second.terms[k].exp) return false;
      GaussianRational r = c.terms[k].coeff / it->second.terms[k].coeff;
      if (!ratio) ratio = r;
      else if (!(r == *ratio)) return false;
    }
  }
  return true;
}

LaurentPoly poly2(std::vector<std::tuple<long, long, long, long>> terms) {
  LaurentPoly f(2);
  for (auto [e1, e2, c, tv] : terms)
    f.add_term({e1, e2}, PuiseuxScalar::monomial(Rational(tv), GaussianRational(c)));
  return f;
}

// polyhedral example, pinned v = (0,0,0,0,0,2,3,3)
ConcreteSystem polyhedral_system() {
  ConcreteSystem sys;
  sys.nx = sys.ambient = 2;
  sys.names = {"x1", "x2"};
  LaurentPoly f1 = poly2({{0, 0, 5, 0}, {2, 0, -3, 0}, {0, 2, -3, 0}, {2, 2, 1, 0}});
  LaurentPoly f2 = poly2({{0, 0, 1, 0}, {1, 1, 2, 2}, {1, 2, -5, 3}, {2, 1, -3, 3}});
  sys.polynomials = {f1, f2};
  sys.blocks = {Block::from_poly(f1), Block::from_poly(f2)};
  sys.target = {poly2({{0, 0, 5, 0}, {2, 0, -3, 0}, {0, 2, -3, 0}, {2, 2, 1, 0}}),
                poly2({{0, 0, 1, 0}, {1, 1, 2, 0}, {1, 2, -5, 0}, {2, 1, -3, 0}})};
  return sys;
}

}  // namespace

TEST_CASE("tropical groebner basis of the vertical two-ellipse block") {
  ConcreteSystem sys = specialize(two_ellipse_vertical(),
                                  std::vector<GaussianRational>(5, gr(1)), qv({1, 0, 0, 1, 0}));
  GroebnerBasisW gb = tropical_groebner_linear(sys.blocks[0], qv({0, 0}));
  REQUIRE(gb.elements.size() == 2);
  // exact elimination: 3f1 - f2 and the companion reduction 11f1 - f2
  LaurentPoly g1 = poly2({{1, 0, 1, 0}, {0, 1, 2, 1}, {0, 0, 4, 0}});
  LaurentPoly g2 = poly2({{2, 0, 4, 1}, {0, 2, 4, 0}, {1, 0, 3, 0}, {0, 1, 2, 1}});
  bool has_g1 = proportional(gb.elements[0], g1) || proportional(gb.elements[1], g1);
  bool has_g2 = proportional(gb.elements[0], g2) || proportional(gb.elements[1], g2);
  REQUIRE(has_g1);
  REQUIRE(has_g2);

  // transform rows certify membership in the row space
  std::vector<LaurentPoly> rows = sys.blocks[0].polynomials();
  for (size_t i = 0; i < 2; ++i) {
    LaurentPoly combo(2);
    for (size_t j = 0; j < 2; ++j) combo = combo + gb.transform[i][j] * rows[j];
    REQUIRE(combo == gb.elements[i]);
  }
}

TEST_CASE("groebner elimination on the horizontal two-ellipse recast block") {
  // expanded F_hori,Q rows are linear in the five monomials
  ConcreteSystem sys = specialize(two_ellipse_horizontal(), two_ellipse_horizontal_target(),
                                  qv({0, 1, 2, 0, 0, 1, 2, 0}));
  std::vector<ExpVec> mons{{2, 0}, {0, 2}, {1, 0}, {0, 1}, {0, 0}};
  std::vector<std::vector<PuiseuxScalar>> m(2);
  for (size_t i = 0; i < 2; ++i)
    for (const auto& e : mons) m[i].push_back(sys.polynomials[i].terms.at(e));
  Block block = Block::make(m, mons, 2);

  GroebnerBasisW gb = tropical_groebner_linear(block, qv({-1, -1}));
  // contains -2t x1 - 4t^2 x2 - 8 up to scaling
  LaurentPoly g1 = poly2({{1, 0, -2, 1}, {0, 1, -4, 2}, {0, 0, -8, 0}});
  REQUIRE((proportional(gb.elements[0], g1) || proportional(gb.elements[1], g1)));
  // initial forms generate <x1 + 4, x1^2 + x2^2>: binomial start with 2 solutions
  std::vector<LaurentPoly> basis = gb.elements;
  BinomialSystem B = initial_system(basis, qv({-1, -1}));
  BinomialSolutions sols = solve_binomial(B);
  REQUIRE(sols.count == 2);
}

TEST_CASE("already-triangular blocks pass through up to unit scaling") {
  // rows x1 + 3t and x2 + 9t are already in w-echelon form at w = 0
  std::vector<ExpVec> mons{{1, 0}, {0, 1}, {0, 0}};
  std::vector<std::vector<PuiseuxScalar>> m{
      {PuiseuxScalar(2), PuiseuxScalar(0),
       PuiseuxScalar::monomial(Rational(1), GaussianRational(6))},
      {PuiseuxScalar(0), PuiseuxScalar(3),
       PuiseuxScalar::monomial(Rational(1), GaussianRational(9))}};
  Block b = Block::make(m, mons, 2);
  GroebnerBasisW gb = tropical_groebner_linear(b, qv({0, 0}));
  LaurentPoly e1 = poly2({{1, 0, 1, 0}, {0, 0, 3, 1}});
  LaurentPoly e2 = poly2({{0, 1, 1, 0}, {0, 0, 3, 1}});
  REQUIRE((proportional(gb.elements[0], e1) || proportional(gb.elements[0], e2)));
  REQUIRE((proportional(gb.elements[1], e1) || proportional(gb.elements[1], e2)));
}

TEST_CASE("initial systems normalize binomials") {
  // x1 + x2 = 0 and 3x2^2 + 11 = 0
  LaurentPoly p1 = poly2({{1, 0, 1, 0}, {0, 1, 1, 0}});
  LaurentPoly p2 = poly2({{0, 2, 3, 0}, {0, 0, 11, 0}});
  BinomialSystem B = initial_system({p1, p2}, qv({0, 0}));
  BinomialSolutions sols = solve_binomial(B);
  REQUIRE(sols.count == 2);
  for (const auto& x : sols.solutions) {
    REQUIRE(std::abs(x[0] + x[1]) < 1e-12);
    REQUIRE(std::abs(3.0 * x[1] * x[1] + 11.0) < 1e-10);
  }

  LaurentPoly quad(1);
  quad.add_term({2}, PuiseuxScalar(1));
  quad.add_term({0}, PuiseuxScalar(-4));
  BinomialSystem Bq = initial_system({quad}, {Rational(0)});
  BinomialSolutions sq = solve_binomial(Bq);
  REQUIRE(sq.count == 2);
  std::vector<double> roots{sq.solutions[0][0].real(), sq.solutions[1][0].real()};
  std::sort(roots.begin(), roots.end());
  REQUIRE(roots[0] == Catch::Approx(-2.0));
  REQUIRE(roots[1] == Catch::Approx(2.0));

  LaurentPoly tri = poly2({{2, 0, 1, 0}, {1, 0, 1, 0}, {0, 0, 1, 0}});
  REQUIRE_THROWS_WITH(initial_system({tri, p1}, qv({0, 0})),
                      Catch::Matchers::ContainsSubstring("NonBinomialInitial"));

  // x1 x2 = 1 together with x1 x2 = 2: singular exponent matrix
  BinomialSystem Bs;
  Bs.exponents = IntMatrix(2, 2);
  Bs.exponents(0, 0) = 1;
  Bs.exponents(0, 1) = 1;
  Bs.exponents(1, 0) = 1;
  Bs.exponents(1, 1) = 1;
  Bs.rhs = {gr(1), gr(2)};
  REQUIRE_THROWS_WITH(solve_binomial(Bs),
                      Catch::Matchers::ContainsSubstring("SingularExponentMatrix"));
}

TEST_CASE("binomial count equals |det| of the exponent matrix") {
  BinomialSystem B;
  B.exponents = IntMatrix(2, 2);
  B.exponents(0, 0) = 2;
  B.exponents(0, 1) = 0;
  B.exponents(1, 0) = 1;
  B.exponents(1, 1) = 2;
  B.rhs = {gr(3), GaussianRational(Rational(1), Rational(1))};
  BinomialSolutions sols = solve_binomial(B);
  REQUIRE(sols.count == 4);
  REQUIRE(sols.solutions.size() == 4);
  // residual of each binomial stays below 1e-12 (relative)
  for (const auto& x : sols.solutions) {
    std::complex<double> lhs = x[0] * x[0];
    REQUIRE(std::abs(lhs - std::complex<double>(3, 0)) <= 1e-12 * 4);
    std::complex<double> lhs2 = x[0] * x[1] * x[1];
    REQUIRE(std::abs(lhs2 - std::complex<double>(1, 1)) <= 1e-12 * 4);
  }
}

TEST_CASE("polyhedral homotopy at w = (0,-3/2) matches the printed one with D = 2") {
  ConcreteSystem sys = polyhedral_system();
  std::vector<Rational> w{Rational(0), Rational(-3, 2)};
  Homotopy H = build_homotopy(sys.polynomials, w, &sys.target);
  REQUIRE(H.denominator_clearing == 2);
  // 5s^6 - 3s^6 x1^2 - 3x2^2 + x1^2 x2^2
  LaurentPoly h1 = poly2({{0, 0, 5, 6}, {2, 0, -3, 6}, {0, 2, -3, 0}, {2, 2, 1, 0}});
  // 1 + 2s x1 x2 - 5 x1 x2^2 - 3 s^3 x1^2 x2
  LaurentPoly h2 = poly2({{0, 0, 1, 0}, {1, 1, 2, 1}, {1, 2, -5, 0}, {2, 1, -3, 3}});
  REQUIRE(H.polys[0] == h1);
  REQUIRE(H.polys[1] == h2);

  // start solutions: 4 of them, from binomial initials
  StartBundle sb;
  EngineResult er = stable_intersection_points(sys.blocks, 2);
  for (const auto& p : er.points) {
    if (p.w != w) continue;
    sb = start_bundle(sys, p);
  }
  REQUIRE(sb.count == 4);
  // each start satisfies the initial forms of the original generators
  for (const auto& z : sb.start_solutions) {
    std::vector<LaurentPoly> ins;
    for (const auto& f : sys.polynomials) ins.push_back(initial_form(f, w));
    REQUIRE(residual(ins, z, 1.0) <= 1e-10);
  }
}

TEST_CASE("horizontal homotopy of the printed Ex 5.5 form") {
  ConcreteSystem sys = specialize(two_ellipse_horizontal(), two_ellipse_horizontal_target(),
                                  qv({3, 0, 2, 3, 2, 2, 3, 2}));
  std::vector<Rational> w{Rational(2), Rational(0)};
  Homotopy H = build_homotopy(sys.polynomials, w, &sys.target);
  REQUIRE(H.denominator_clearing == 1);
  LaurentPoly h1 =
      poly2({{2, 0, 1, 5}, {0, 2, 1, 1}, {1, 0, 1, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}});
  LaurentPoly h2 =
      poly2({{2, 0, 3, 4}, {0, 2, 3, 0}, {1, 0, 5, 2}, {0, 1, 7, 1}, {0, 0, 11, 0}});
  REQUIRE(H.polys[0] == h1);
  REQUIRE(H.polys[1] == h2);
}

TEST_CASE("trivial homotopy at w = 0, v = 0 is constant in the path parameter") {
  ConcreteSystem sys = specialize(two_ellipse_vertical(),
                                  std::vector<GaussianRational>(5, gr(1)), qv({0, 0, 0, 0, 0}));
  Homotopy H = build_homotopy(sys.polynomials, qv({0, 0}), &sys.target);
  for (const auto& f : H.polys)
    for (const auto& [e, c] : f.terms) REQUIRE(*c.valuation() == 0);
}

TEST_CASE("target mismatch is detected") {
  ConcreteSystem sys = polyhedral_system();
  std::vector<LaurentPoly> wrong = sys.target;
  wrong[0].add_term({1, 0}, PuiseuxScalar(1));
  REQUIRE_THROWS_WITH(
      build_homotopy(sys.polynomials, {Rational(0), Rational(-3, 2)}, &wrong),
      Catch::Matchers::ContainsSubstring("TargetMismatch"));
}

TEST_CASE("start bundle for the vertical route uses the groebner basis") {
  ConcreteSystem sys = specialize(two_ellipse_vertical(),
                                  std::vector<GaussianRational>(5, gr(1)), qv({1, 0, 0, 1, 0}));
  EngineResult er = stable_intersection_points(sys.blocks, 2);
  REQUIRE(er.points.size() == 1);
  StartBundle sb = start_bundle(sys, er.points[0]);
  REQUIRE(sb.groebner_based);
  REQUIRE(sb.count == 2);
  REQUIRE(sb.start_solutions.size() == 2);
  // starts satisfy the initial forms of the original generators (Lemma 4.5 content)
  std::vector<LaurentPoly> ins;
  for (const auto& f : sys.polynomials) ins.push_back(initial_form(f, er.points[0].w));
  for (const auto& z : sb.start_solutions) REQUIRE(residual(ins, z, 1.0) <= 1e-10);
}

TEST_CASE("two-stage route: points, start counts, and the back-substituted homotopy") {
  HorizontalSystem H = hard_horizontal();
  ConcreteSystem sys = two_stage_modification(H, hard_horizontal_base(),
                                              hard_horizontal_target(),
                                              hard_horizontal_pinned_v());
  EngineResult er = stable_intersection_points(sys.blocks, sys.ambient);
  REQUIRE(er.points.size() == 2);
  std::vector<Rational> w1 = {Rational(1), Rational(-1), Rational(-1), Rational(1),
                              Rational(-3), Rational(-2), Rational(1), Rational(0)};
  std::vector<Rational> w2 = {Rational(1), Rational(-2), Rational(-2), Rational(1),
                              Rational(-6), Rational(-4), Rational(1), Rational(0)};
  REQUIRE(((er.points[0].w == w1 && er.points[1].w == w2) ||
           (er.points[0].w == w2 && er.points[1].w == w1)));
  Int total = 0;
  for (const auto& p : er.points) {
    StartBundle sb = start_bundle(sys, p);
    total += sb.count;
    if (p.w == w1) REQUIRE(sb.count == 2);
    if (p.w == w2) REQUIRE(sb.count == 1);
  }
  REQUIRE(total == 3);  // the generic root count of the family

  // back-substituted homotopy at w1:
  // h1 = t(t + t^2 x1 + x2)^3 + (t + t^2 x1 + x2)^2 + t x1 + 1
  for (const auto& p : er.points) {
    if (!(p.w == w1)) continue;
    Homotopy Hh = build_homotopy(sys.polynomials, p.w);
    std::vector<LaurentPoly> hx = substitute_back_homotopy(Hh, sys);
    LaurentPoly u = poly2({{0, 0, 1, 1}, {1, 0, 1, 2}, {0, 1, 1, 0}});  // t + t^2 x1 + x2
    LaurentPoly expect = PuiseuxScalar::t_power(Rational(1)) * u.pow(3) + u.pow(2) +
                         poly2({{1, 0, 1, 1}, {0, 0, 1, 0}});
    REQUIRE(hx[0] == expect);
  }
}
