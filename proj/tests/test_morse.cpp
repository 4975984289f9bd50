#include <gtest/gtest.h>

#include "nov/morse.hpp"
#include "support/regions.hpp"

using namespace nov;
using namespace nov::testing;

namespace {

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const NovikovError& e) {
    return e.code();
  }
  return "";
}

Hamiltonian scaled_by(const MorseModel& m, const Rational& s) {
  Hamiltonian h = m.values;
  for (auto& x : h) {
    x *= s;
    x.canonicalize();
  }
  return h;
}

Hamiltonian constant(const MorseModel& m, const Rational& c) { return Hamiltonian(m.size(), c); }

}  // namespace

TEST(Morse, BundledModelsAreValid) {
  for (const auto& name : bundled_model_names()) {
    const auto m = bundled_model(name);
    EXPECT_NO_THROW(validate_model(m)) << name;
    EXPECT_EQ(m.name, name);
  }
  EXPECT_EQ(model_betti(point_model()), (Betti{1, 0}));
  EXPECT_EQ(model_betti(interval_model()), (Betti{1, 0}));
  EXPECT_EQ(model_betti(circle_model(2)), (Betti{1, 1}));
  EXPECT_EQ(model_betti(circle_base_model()), (Betti{1, 1}));
  EXPECT_EQ(model_betti(sphere_model()), (Betti{2, 0}));
  EXPECT_EQ(model_betti(torus_model()), (Betti{2, 2}));
  EXPECT_EQ(model_betti(circle_bundle_model()), (Betti{2, 2}));
  EXPECT_EQ(model_betti(torus_grid_model()), (Betti{2, 2}));
  EXPECT_EQ(code_of([] { bundled_model("klein"); }), "UnknownModel");
}

TEST(Morse, InvalidModels) {
  auto m = interval_model();
  m.boundary[{1, 0}] = 1;
  EXPECT_EQ(code_of([&] { validate_model(m); }), "InvalidModel");
  auto sq = circle_model(2);
  sq.cells.push_back(Generator{"f", 0});
  sq.values.push_back(0);
  sq.boundary[{4, 2}] = 1;
  EXPECT_EQ(code_of([&] { validate_model(sq); }), "InvalidModel");
  EXPECT_EQ(code_of([] { involutive_descent_instance(interval_model(), {{"a0"}}, 1); }),
            "InvalidModel");
}

TEST(Morse, CfExamples) {
  const auto iv = interval_model();
  const auto c0 = cf(iv, constant(iv, 0));
  EXPECT_EQ(c0.d.get(2, 0), Scalar(1));
  EXPECT_EQ(c0.d.get(2, 1), Scalar(-1));
  EXPECT_EQ(c0.d.nnz(), 2u);

  const auto half = cf(iv, scaled_by(iv, Rational(1, 2)));
  EXPECT_EQ(half.d.get(2, 0), Scalar::T(Rational(1, 2)));
  EXPECT_EQ(half.d.get(2, 1), -Scalar::T(Rational(1, 2)));

  const auto s2 = sphere_model();
  EXPECT_TRUE(cf(s2, s2.values).d.empty());
  EXPECT_TRUE(cf(s2, Hamiltonian{Rational(5), Rational(-3)}).d.empty());

  EXPECT_EQ(code_of([&] { cf(iv, Hamiltonian{0, 0, -1}); }), "Inadmissible");
  EXPECT_FALSE(admissible(iv, Hamiltonian{0, 0, -1}));
}

TEST(Morse, CfAndContinuationAreChainLevelCorrect) {
  Rng rng(401);
  for (const auto& name : {"interval", "circle", "circle6", "circle6x4", "torus-grid"}) {
    const auto m = bundled_model(name);
    for (int t = 0; t < 20; ++t) {
      const Hamiltonian h = random_admissible(rng, m);
      Hamiltonian h2 = h;
      for (auto& x : h2) {
        x += Rational(rng.uniform(0, 2), 2);
        x.canonicalize();
      }
      if (!admissible(m, h2)) continue;
      const auto a = cf(m, h), b = cf(m, h2);
      EXPECT_TRUE(verify(a, std::nullopt).ok);
      const SMat f = continuation(m, h, h2);
      EXPECT_EQ(b.d * f, f * a.d) << name;
      EXPECT_TRUE(verify_cube(hamiltonian_cube(m, 1, [&](const FaceCode& v) {
                    return v == "0" ? h : h2;
                  })).ok);
    }
  }
}

TEST(Morse, ContinuationExamples) {
  const auto m = circle_model(2);
  EXPECT_EQ(continuation(m, m.values, m.values), SMat::identity(m.size()));
  EXPECT_EQ(code_of([&] { continuation(m, constant(m, 1), constant(m, 0)); }), "NotMonotone");
  const auto t2 = torus_model();
  for (int n = 1; n <= 6; ++n) {
    const SMat w = continuation(t2, scaled_by(t2, Rational(1, n)), scaled_by(t2, Rational(1, n + 1)));
    for (int p = 0; p < t2.size(); ++p) {
      Rational e = -t2.values[p] / (n * (n + 1));
      e.canonicalize();
      EXPECT_EQ(w.get(p, p), Scalar::T(e));
    }
  }
}

TEST(Morse, GlobalSections) {
  const struct {
    const char* name;
    Betti bars;
  } cases[] = {{"s2", {2, 0}}, {"t2", {2, 2}}, {"interval", {1, 0}}, {"circle", {1, 1}},
               {"point", {1, 0}}, {"circle6x4", {2, 2}}};
  for (const auto& c : cases) {
    const auto gs = global_sections(bundled_model(c.name), 1, 6);
    EXPECT_EQ(gs.bars.free_count(0), c.bars.even) << c.name;
    EXPECT_EQ(gs.bars.free_count(1), c.bars.odd) << c.name;
    EXPECT_EQ(gs.bars.torsion_count(0) + gs.bars.torsion_count(1), 0);
    for (const auto& b : gs.bars.bars) EXPECT_TRUE(b.open_at_zero);
    EXPECT_TRUE(gs.weights_exact) << c.name;
    EXPECT_TRUE(gs.consistent) << c.name;
    EXPECT_EQ(gs.stage_free.size(), 6u);
  }
  auto m = sphere_model();
  m.values[1] = 0;
  EXPECT_EQ(code_of([&] { global_sections(m, 1, 2); }), "NotNegative");
}

TEST(Morse, GlobalSectionsStagesMatchFieldBetti) {
  // finite stages of the scaling ray have the model's Betti numbers over Lambda
  for (const auto& name : {"interval", "circle", "t2", "torus-grid"}) {
    const auto m = bundled_model(name);
    const Ray r = scaling_ray(m);
    for (int i = 1; i <= 4; ++i) {
      const auto c = r.slice(i).vertex_complex("");
      const auto b = barcode(c, 10);
      EXPECT_EQ((Betti{b.free_count(0), b.free_count(1)}), model_betti(m)) << name;
    }
  }
}

TEST(Morse, EmptySet) {
  for (const auto& name : bundled_model_names()) {
    const auto m = bundled_model(name);
    for (const char* r0 : {"1/2", "1", "5"}) {
      const auto es = empty_set(m, m.values, parse_exponent(r0));
      EXPECT_TRUE(es.bars.is_zero()) << name << " " << r0;
      EXPECT_EQ(es.gap, 1);
    }
  }
  // a prefix ending at the base Hamiltonian leaves the verdict unchanged
  const auto m = circle_model(2);
  Hamiltonian lo = m.values;
  for (auto& x : lo) x -= 3;
  const auto pre = hamiltonian_cube(m, 1, [&](const FaceCode& v) { return v == "0" ? lo : m.values; });
  const auto es = empty_set(m, m.values, 5, {pre});
  EXPECT_TRUE(es.bars.is_zero());
  EXPECT_EQ(*es.stage, 6);
  // a constant shift leaves CF unchanged, so move one cell instead
  Hamiltonian wrong = m.values;
  wrong[2] += 1;
  EXPECT_THROW(empty_set(m, wrong, 5, {pre}), NovikovError);
}

TEST(Morse, CofinalFamily) {
  const auto iv = interval_model();
  const auto all = cofinal_family(iv, all_points(iv), 4);
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(all[i - 1], constant(iv, Rational(-1, i)));
  const auto none = cofinal_family(iv, {}, 4);
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(none[i - 1], constant(iv, i));
  const auto sub = cofinal_family(iv, {"a0", "a1"}, 6);
  for (const auto& h : sub) EXPECT_TRUE(admissible(iv, h));
  for (std::size_t i = 1; i < sub.size(); ++i)
    for (int p = 0; p < iv.size(); ++p) EXPECT_LE(sub[i - 1][p], sub[i][p]);
  EXPECT_EQ(code_of([&] { cofinal_family(iv, {"b"}, 2); }), "InadmissibleSubset");
  EXPECT_EQ(code_of([&] { cofinal_family(iv, {"z"}, 2); }), "InvalidRegion");
}

TEST(Morse, RelativeSH) {
  for (const auto& name : {"s2", "t2", "interval", "circle", "circle6"}) {
    const auto m = bundled_model(name);
    const auto everything = relative_sh(m, all_points(m), 1, 5);
    const auto gs = global_sections(m, 1, 5);
    EXPECT_EQ(everything.bars.table(), gs.bars.table()) << name;
    EXPECT_TRUE(relative_sh(m, {}, 1, 5).bars.is_zero());
  }
  const auto iv = interval_model();
  const auto low = relative_sh(iv, {"a0", "a1"}, Rational(1, 2), 6);
  EXPECT_EQ(low.quotient_betti, (Betti{2, 0}));
  EXPECT_EQ(low.bars.free_count(0), 2);
  EXPECT_EQ(low.bars.free_count(1), 0);
  for (const auto& s : low.stage_free) EXPECT_EQ(s, (Betti{2, 0}));
  EXPECT_TRUE(low.outside_vanishes);
  EXPECT_TRUE(low.inside_survives);
  const auto one = relative_sh(iv, {"a0"}, 2, 4);
  EXPECT_EQ(one.quotient_betti, (Betti{1, 0}));
  EXPECT_TRUE(one.outside_vanishes);
}

TEST(Morse, RestrictionMapsComposeStrictly) {
  Rng rng(402);
  for (const auto& name : {"circle6", "circle6x4", "torus-grid"}) {
    const auto m = bundled_model(name);
    for (int t = 0; t < 10; ++t) {
      Region k1 = random_region(rng, m), k2 = random_region(rng, m);
      Region big = k1, mid, small;
      big.insert(k2.begin(), k2.end());
      mid = k1;
      std::set_intersection(k1.begin(), k1.end(), k2.begin(), k2.end(),
                            std::inserter(small, small.begin()));
      for (int i = 1; i <= 3; ++i) {
        const auto a = family_member(m, big, i), b = family_member(m, mid, i),
                   c = family_member(m, small, i);
        const SMat ab = continuation(m, a, b), bc = continuation(m, b, c);
        EXPECT_EQ(bc * ab, continuation(m, a, c));
        EXPECT_EQ(cf(m, b).d * ab, ab * cf(m, a).d);
      }
    }
  }
}

TEST(Morse, MinMaxEqualValues) {
  for (const auto& name : bundled_model_names()) {
    const auto m = bundled_model(name);
    const auto sq = minmax_square(m, m.values, m.values);
    EXPECT_TRUE(verify_cube(sq.square).ok);
    EXPECT_TRUE(sq.square.f("--").empty());
    for (const auto& p : sq.pieces) {
      EXPECT_TRUE(p.equal_values);
      EXPECT_EQ(p.nonzero, 4);
      EXPECT_TRUE(p.pattern_ok && p.acyclic) << name << " " << p.label;
    }
    EXPECT_TRUE(sq.pieces_ok);
    EXPECT_TRUE(sq.verdict.acyclic);
  }
}

TEST(Morse, MinMaxStrictlyBelow) {
  for (const auto& name : bundled_model_names()) {
    const auto m = bundled_model(name);
    Hamiltonian hy = m.values;
    for (auto& x : hy) x += Rational(1, 3);
    const auto sq = minmax_square(m, m.values, hy);
    for (const auto& p : sq.pieces) {
      EXPECT_FALSE(p.equal_values);
      EXPECT_EQ(p.nonzero, 2);
      EXPECT_TRUE(p.pattern_ok && p.acyclic) << name << " " << p.label;
    }
    EXPECT_TRUE(sq.pieces_ok);
    EXPECT_TRUE(sq.verdict.acyclic);
    EXPECT_TRUE(mayer_vietoris(sq.square).exact);
  }
}

TEST(Morse, MinMaxExhaustiveInterval) {
  // every admissible pair with values in {0, 1/2, 1} on the interval model
  const auto iv = interval_model();
  std::vector<Hamiltonian> hs;
  const Rational vals[] = {0, Rational(1, 2), 1};
  for (const auto& a : vals)
    for (const auto& b : vals)
      for (const auto& c : vals)
        if (admissible(iv, Hamiltonian{a, b, c})) hs.push_back({a, b, c});
  int pairs = 0;
  for (const auto& hx : hs)
    for (const auto& hy : hs) {
      if (!admissible(iv, hmin(hx, hy)) || !admissible(iv, hmax(hx, hy))) continue;
      const auto sq = minmax_square(iv, hx, hy);
      EXPECT_TRUE(sq.verdict.acyclic);
      EXPECT_TRUE(sq.pieces_ok || !sq.strict);
      for (const auto& p : sq.pieces) EXPECT_TRUE(p.acyclic);
      EXPECT_TRUE(mayer_vietoris(sq.square).exact);
      ++pairs;
    }
  EXPECT_GT(pairs, 100);
}

TEST(Morse, MinMaxRandomPairs) {
  Rng rng(403);
  for (const auto& name : {"interval", "circle", "circle6", "circle6x4", "torus-grid"}) {
    const auto m = bundled_model(name);
    for (int t = 0; t < 10; ++t) {
      const auto hx = random_admissible(rng, m), hy = random_admissible(rng, m);
      if (!admissible(m, hmin(hx, hy)) || !admissible(m, hmax(hx, hy))) continue;
      const auto sq = minmax_square(m, hx, hy);
      EXPECT_TRUE(sq.verdict.acyclic) << name;
      EXPECT_TRUE(mayer_vietoris(sq.square).exact) << name;
    }
  }
  const auto iv = interval_model();
  EXPECT_EQ(code_of([&] { minmax_square(iv, Hamiltonian{0, 0, -1}, Hamiltonian{0, 0, 0}); }),
            "Inadmissible");
}

TEST(Morse, MinMaxRaySlicesAcyclic) {
  const auto m = circle_base_model();
  const Region a{"v0", "v1", "e0"}, b{"v1", "v2", "e1"};
  const Ray r = minmax_ray(m, a, b);
  EXPECT_FALSE(r.max_depth().has_value());
  const auto cert = acyclic_slices_implies_acyclic(r, 3);
  EXPECT_EQ(cert.slices_checked, 4);
  EXPECT_TRUE(cert.telescope_acyclic);
  EXPECT_EQ(code_of([&] { completed_homology(r, 1); }), "UnsupportedTail");
}

TEST(Descent, SubsetRegions) {
  const std::vector<Region> rs{{"a", "b"}, {"b", "c"}, {"b", "d"}};
  EXPECT_EQ(subset_region(rs, "000"), (Region{"a", "b", "c", "d"}));
  EXPECT_EQ(subset_region(rs, "100"), (Region{"a", "b"}));
  EXPECT_EQ(subset_region(rs, "011"), (Region{"b"}));
  EXPECT_EQ(subset_region(rs, "111"), (Region{"b"}));
}

TEST(Descent, CircleBaseTwoRegions) {
  const auto m = circle_base_model();
  const Region a{"v0", "v1", "e0"}, b{"v1", "v2", "e1"};
  const auto inst = involutive_descent_instance(m, {a, b}, 2);
  EXPECT_EQ(inst.n, 2);
  EXPECT_TRUE(inst.acyclic);
  EXPECT_TRUE(inst.slices.telescope_acyclic);
  EXPECT_TRUE(inst.appendix_b.empty());
}

TEST(Descent, EmptySecondRegion) {
  // X2 empty: the union is X1 and the restriction onto X1 is the identity
  const auto m = circle_base_model();
  const Region a{"v0", "v1", "e0"};
  const auto inst = involutive_descent_instance(m, {a, {}}, 2);
  EXPECT_TRUE(inst.acyclic);
  const Ray r = descent_ray(m, {a, {}}, 2);
  for (int i = 1; i <= 3; ++i) {
    const auto s = r.slice(i);
    EXPECT_EQ(s.f("-0"), SMat::identity(m.size()));
    EXPECT_EQ(s.f("-1"), SMat::identity(m.size()));
  }
}

TEST(Descent, RandomRegions) {
  Rng rng(404);
  const auto m = circle_base_model();
  for (int t = 0; t < 10; ++t) {
    const std::vector<Region> rs{random_region(rng, m), random_region(rng, m)};
    EXPECT_TRUE(involutive_descent_instance(m, rs, 2).acyclic);
  }
  const std::vector<Region> three{random_region(rng, m), random_region(rng, m),
                                  random_region(rng, m)};
  const auto inst = involutive_descent_instance(m, three, 1);
  EXPECT_TRUE(inst.acyclic);
  EXPECT_EQ(inst.appendix_b.size(), 7u);
  EXPECT_TRUE(inst.appendix_b_ok);
}

TEST(Descent, InadmissibleRegion) {
  const auto m = circle_base_model();
  EXPECT_EQ(code_of([&] { involutive_descent_instance(m, {{"e0"}, {"v0"}}, 1); }),
            "InadmissibleSubset");
}
