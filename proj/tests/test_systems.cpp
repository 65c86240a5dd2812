#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures_common.hpp"
#include "trophom/engine.hpp"

using namespace trophom;
using namespace fixtures;

namespace {

std::vector<Rational> qv(std::vector<long> v) {
  std::vector<Rational> r;
  for (long x : v) r.push_back(Rational(x));
  return r;
}

LaurentPoly poly2(std::vector<std::tuple<long, long, long, long>> terms) {
  // (e1, e2, coeff, t-exponent)
  LaurentPoly f(2);
  for (auto [e1, e2, c, tv] : terms)
    f.add_term({e1, e2}, PuiseuxScalar::monomial(Rational(tv), GaussianRational(c)));
  return f;
}

}  // namespace

TEST_CASE("vertical specialization at Q=(t,1,1,t,1)") {
  ConcreteSystem sys = specialize(two_ellipse_vertical(),
                                  std::vector<GaussianRational>(5, gr(1)), qv({1, 0, 0, 1, 0}));
  REQUIRE(sys.polynomials.size() == 2);
  LaurentPoly f1 = poly2({{2, 0, 1, 1}, {0, 2, 1, 0}, {1, 0, 1, 0}, {0, 1, 1, 1}, {0, 0, 1, 0}});
  REQUIRE(sys.polynomials[0] == f1);
  REQUIRE(sys.blocks.size() == 1);
  REQUIRE(sys.blocks[0].rows() == 2);
  REQUIRE(sys.blocks[0].cols() == 5);
  // target is the two-ellipse system itself
  LaurentPoly t1 = poly2({{2, 0, 1, 0}, {0, 2, 1, 0}, {1, 0, 1, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}});
  REQUIRE(sys.target[0] == t1);

  // v = 0: every coefficient t-free
  ConcreteSystem flat = specialize(two_ellipse_vertical(),
                                   std::vector<GaussianRational>(5, gr(1)), qv({0, 0, 0, 0, 0}));
  for (const auto& f : flat.polynomials)
    for (const auto& [e, c] : f.terms) REQUIRE(*c.valuation() == 0);

  REQUIRE_THROWS_WITH(
      specialize(two_ellipse_vertical(),
                 {gr(1), gr(0), gr(1), gr(1), gr(1)}, qv({0, 0, 0, 0, 0})),
      Catch::Matchers::ContainsSubstring("ZeroParameter"));
}

TEST_CASE("horizontal specialization carries the printed valuations") {
  // Q = (t^3, 1, t^2, t^3, 3t^2, 5t^2, 7t^3, 11t^2)
  ConcreteSystem sys = specialize(two_ellipse_horizontal(), two_ellipse_horizontal_target(),
                                  qv({3, 0, 2, 3, 2, 2, 3, 2}));
  const LaurentPoly& f1 = sys.polynomials[0];
  REQUIRE(*f1.terms.at({2, 0}).valuation() == 3);
  REQUIRE(*f1.terms.at({0, 2}).valuation() == 3);
  REQUIRE(*f1.terms.at({1, 0}).valuation() == 0);
  REQUIRE(*f1.terms.at({0, 1}).valuation() == 2);
  REQUIRE(*f1.terms.at({0, 0}).valuation() == 3);
  const LaurentPoly& f2 = sys.polynomials[1];
  REQUIRE(f2.terms.at({2, 0}).leading_coeff() == gr(3));
  REQUIRE(*f2.terms.at({1, 0}).valuation() == 2);
}

TEST_CASE("horizontal modification introduces y_j - q_j") {
  HorizontalSystem H = hard_horizontal();
  size_t m = 4, n = 2;
  ConcreteSystem sys = horizontal_modification(H, hard_horizontal_target(),
                                               std::vector<Rational>(n * m, Rational(0)));
  REQUIRE(sys.ambient == 6);
  REQUIRE(sys.polynomials.size() == 6);
  // ghat_1 = y1 - (1+x1+x2)^3
  LaurentPoly g1 = sys.polynomials[2];
  LaurentPoly expect = LaurentPoly::variable(6, 2) -
                       trophom::detail::widen(one_plus_x1_plus_x2().pow(3), 6);
  REQUIRE(g1 == expect);

  // two-circle family: ghat_1 = y1 - (x1^2 + x2^2)
  ConcreteSystem circ = horizontal_modification(
      two_ellipse_horizontal(), two_ellipse_horizontal_target(),
      std::vector<Rational>(8, Rational(0)));
  LaurentPoly q1(6);
  q1.add_term({2, 0, 0, 0, 0, 0}, PuiseuxScalar(1));
  q1.add_term({0, 2, 0, 0, 0, 0}, PuiseuxScalar(1));
  REQUIRE(circ.polynomials[2] == LaurentPoly::variable(6, 2) - q1);
}

TEST_CASE("round trip: back-substituted modification regenerates the specialization") {
  HorizontalSystem H = hard_horizontal();
  std::vector<Rational> v{Rational(1), Rational(2), Rational(3), Rational(4),
                          Rational(5), Rational(6), Rational(7), Rational(8)};
  ConcreteSystem mod = horizontal_modification(H, hard_horizontal_target(), v);
  ConcreteSystem plain = specialize(H, hard_horizontal_target(), v);
  for (size_t i = 0; i < 2; ++i)
    REQUIRE(substitute_back(mod.polynomials[i], mod) == plain.polynomials[i]);
}

TEST_CASE("two-stage modification of the harder example") {
  HorizontalSystem H = hard_horizontal();
  ConcreteSystem sys =
      two_stage_modification(H, hard_horizontal_base(), hard_horizontal_target(),
                             std::vector<Rational>(8, Rational(0)));
  // 8 polynomials in 8 variables (x1,x2,y1,y2,z1..z4)
  REQUIRE(sys.ambient == 8);
  REQUIRE(sys.polynomials.size() == 8);
  REQUIRE(sys.blocks.size() == 8);

  // elision drops monomial base/support variables: q3 = x1, q4 = 1, b2 = x1
  ConcreteSystem el =
      two_stage_modification(H, hard_horizontal_base(), hard_horizontal_target(),
                             std::vector<Rational>(8, Rational(0)), /*elide=*/true);
  REQUIRE(el.ambient == 5);  // x1, x2, y1, z1, z2
  REQUIRE(el.polynomials.size() == 5);

  TransverseBase bad = hard_horizontal_base();
  bad.powers[0] = {2, 1};
  REQUIRE_THROWS_WITH(two_stage_modification(H, bad, hard_horizontal_target(),
                                             std::vector<Rational>(8, Rational(0))),
                      Catch::Matchers::ContainsSubstring("BaseMismatch"));
}

TEST_CASE("two-stage modification reduces to the one-stage one for the identity base") {
  HorizontalSystem H = two_ellipse_horizontal();
  TransverseBase B;
  B.base = H.support;
  B.powers = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  std::vector<Rational> v(8, Rational(0));
  ConcreteSystem two = two_stage_modification(H, B, two_ellipse_horizontal_target(), v);
  ConcreteSystem one = horizontal_modification(H, two_ellipse_horizontal_target(), v);
  // after undoing both modifications the polynomial rows agree
  REQUIRE(two.polynomials.size() == one.polynomials.size() + 4);  // plus g_j = z_j - y_j
  for (size_t i = 0; i < 2; ++i)
    REQUIRE(substitute_back(two.polynomials[i], two) == substitute_back(one.polynomials[i], one));
}

TEST_CASE("relaxation gives every support monomial a fresh parameter") {
  HorizontalSystem H = hard_horizontal();
  FreshAssignment fresh;
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> vd(1, 9);
  for (const auto& q : H.support) {
    fresh.values.emplace_back(q.terms.size(), gr(1));
    std::vector<Rational> vs;
    for (size_t k = 0; k < q.terms.size(); ++k) vs.push_back(Rational(vd(rng)));
    fresh.valuations.push_back(vs);
  }
  ConcreteSystem sys = relaxed_modification(H, hard_horizontal_target(),
                                            std::vector<Rational>(8, Rational(0)), fresh);
  REQUIRE(sys.ambient == 6);
  // ghat_1^sharp has the 10 monomials of (1+x1+x2)^3 plus y1
  REQUIRE(sys.polynomials[2].terms.size() == 11);
  // with all fresh values 1, the relaxed target is the original system
  ConcreteSystem plain = specialize(H, hard_horizontal_target(),
                                    std::vector<Rational>(8, Rational(0)));
  for (size_t i = 0; i < 2; ++i) REQUIRE(sys.target[i] == plain.target[i]);

  // support of single monomials: relaxation is the identity construction
  HorizontalSystem M = two_ellipse_horizontal();
  M.support[0] = LaurentPoly::monomial(2, {2, 0}, PuiseuxScalar(1));
  FreshAssignment fm;
  for (const auto& q : M.support) {
    fm.values.emplace_back(q.terms.size(), gr(1));
    fm.valuations.emplace_back(q.terms.size(), Rational(0));
  }
  ConcreteSystem rel = relaxed_modification(M, two_ellipse_horizontal_target(),
                                            std::vector<Rational>(8, Rational(0)), fm);
  ConcreteSystem mod = horizontal_modification(M, two_ellipse_horizontal_target(),
                                               std::vector<Rational>(8, Rational(0)));
  REQUIRE(rel.polynomials == mod.polynomials);
}

TEST_CASE("monomial elision does not change the projected tropical points") {
  HorizontalSystem H = hard_horizontal();
  std::vector<Rational> v = hard_horizontal_pinned_v();
  ConcreteSystem full = two_stage_modification(H, hard_horizontal_base(),
                                               hard_horizontal_target(), v);
  ConcreteSystem el = two_stage_modification(H, hard_horizontal_base(),
                                             hard_horizontal_target(), v, true);
  EngineResult rf = stable_intersection_points(full.blocks, full.ambient);
  EngineResult re = stable_intersection_points(el.blocks, el.ambient);
  REQUIRE(rf.points.size() == re.points.size());
  for (size_t i = 0; i < rf.points.size(); ++i) {
    for (size_t k = 0; k < 2; ++k) REQUIRE(rf.points[i].w[k] == re.points[i].w[k]);
    REQUIRE(rf.points[i].multiplicity == re.points[i].multiplicity);
  }
}

TEST_CASE("duffing oscillators: two-stage modification with elision") {
  // variables (u1, v1, u2, v2); support {1, u1, v1, u2, v2} plus the eight
  // products var * (u_i^2 + v_i^2); base {u1, v1, u2, v2, u1^2+v1^2, u2^2+v2^2}
  size_t nv = 4;
  auto var = [&](size_t i) { return LaurentPoly::variable(nv, i); };
  LaurentPoly y1 = var(0) * var(0) + var(1) * var(1);
  LaurentPoly y2 = var(2) * var(2) + var(3) * var(3);
  HorizontalSystem H;
  H.support = {LaurentPoly::constant(nv, PuiseuxScalar(1)),
               var(0), var(1), var(2), var(3),
               var(0) * y1, var(0) * y2, var(1) * y1, var(1) * y2,
               var(2) * y1, var(2) * y2, var(3) * y1, var(3) * y2};
  auto row = [&](std::vector<size_t> used) {
    std::vector<GaussianRational> r(13, gr(0));
    for (size_t j : used) r[j] = gr(1);
    return r;
  };
  H.coeffs = {row({0, 1, 2, 5, 6}), row({0, 1, 2, 7, 8}),
              row({0, 3, 4, 9, 10}), row({0, 3, 4, 11, 12})};
  TransverseBase B;
  B.base = {var(0), var(1), var(2), var(3), y1, y2};
  auto pw = [&](std::vector<int64_t> p) { return ExpVec(p); };
  B.powers = {pw({0, 0, 0, 0, 0, 0}), pw({1, 0, 0, 0, 0, 0}), pw({0, 1, 0, 0, 0, 0}),
              pw({0, 0, 1, 0, 0, 0}), pw({0, 0, 0, 1, 0, 0}), pw({1, 0, 0, 0, 1, 0}),
              pw({1, 0, 0, 0, 0, 1}), pw({0, 1, 0, 0, 1, 0}), pw({0, 1, 0, 0, 0, 1}),
              pw({0, 0, 1, 0, 1, 0}), pw({0, 0, 1, 0, 0, 1}), pw({0, 0, 0, 1, 1, 0}),
              pw({0, 0, 0, 1, 0, 1})};
  std::vector<GaussianRational> P;
  for (long i = 0; i < 52; ++i) P.push_back(gr(2 + (3 * i) % 17));
  ConcreteSystem sys = two_stage_modification(H, B, P, std::vector<Rational>(52, Rational(0)),
                                              /*elide=*/true);
  // the fourteen-polynomial form: 4 rows + 8 product relations + 2 base relations
  REQUIRE(sys.ambient == 14);
  REQUIRE(sys.polynomials.size() == 14);
  std::vector<TropicalForm> forms;
  for (const auto& f : sys.polynomials) forms.push_back(trop_form(f));
  REQUIRE(mixed_volume(forms, sys.ambient) == 25);
}

TEST_CASE("single-row vertical system gives the hypersurface block") {
  VerticalSystem V;
  V.coeffs = {{gr(2), gr(-3)}};
  V.exponents = {{2}, {0}};
  ConcreteSystem sys = specialize(V, {gr(1), gr(1)}, {Rational(1), Rational(0)});
  REQUIRE(sys.blocks.size() == 1);
  REQUIRE(sys.blocks[0].rows() == 1);
  REQUIRE(sys.blocks[0].polynomials()[0] == sys.polynomials[0]);
}

TEST_CASE("solution projection checks the substitution relations") {
  HorizontalSystem H = two_ellipse_horizontal();
  ConcreteSystem mod = horizontal_modification(H, two_ellipse_horizontal_target(),
                                               std::vector<Rational>(8, Rational(0)));
  // a consistent point: x = (1, 2), y = (5, 1, 2, 1)
  std::vector<std::complex<double>> pt{{1, 0}, {2, 0}, {5, 0}, {1, 0}, {2, 0}, {1, 0}};
  std::vector<std::complex<double>> x = substitute_back_point(pt, mod, 1.0);
  REQUIRE(x.size() == 2);
  pt[2] = {4.9, 0};
  REQUIRE_THROWS_WITH(substitute_back_point(pt, mod, 1.0),
                      Catch::Matchers::ContainsSubstring("InconsistentSolution"));
}
