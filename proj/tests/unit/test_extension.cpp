#include <gtest/gtest.h>

#include "catfm/error.hpp"
#include "catfm/extension.hpp"
#include "catfm/pretext.hpp"
#include "generators.hpp"

using namespace catfm;
using fixtures::share;

namespace {

// F(A) = {0}, F(B) = {0, 1}, F(f)(0) = 0
SetFunctor arrow_covariant(const CategoryPtr& c) {
  SetFunctorDescription d;
  d.variance = Variance::Covariant;
  d.on_objects = {{"A", {"0"}}, {"B", {"0", "1"}}};
  d.on_morphisms = {{"f", {{"0", "0"}}}};
  return build_set_functor(c, d);
}

}  // namespace

TEST(Elements, RepresentableOfSource) {
  const auto c = fixtures::arrow_category();
  const CategoryOfElements el = category_of_elements(yoneda_embed(c, "A"));
  EXPECT_EQ(el.category->object_names(), std::vector<std::string>{"A:id_A"});
  EXPECT_EQ(el.category->morphism_count(), 1u);
}

TEST(Elements, RepresentableOfTarget) {
  const auto c = fixtures::arrow_category();
  const CategoryOfElements el = category_of_elements(yoneda_embed(c, "B"));
  EXPECT_EQ(el.category->object_names(), (std::vector<std::string>{"A:f", "B:id_B"}));
  ASSERT_EQ(el.category->morphism_count(), 3u);
  const auto& m = el.category->morphism(2);
  EXPECT_EQ(m.name, "f[id_B]");
  EXPECT_EQ(el.over[2], c->morphism_named("f"));
  validate_functor(el.projection());
}

TEST(Elements, EmptyPresheafGivesEmptyCategory) {
  const auto c = fixtures::arrow_category();
  const CategoryOfElements el = category_of_elements(fixtures::constant_functor(c, Variance::Contravariant, 0));
  EXPECT_EQ(el.category->object_count(), 0u);
  EXPECT_EQ(el.category->morphism_count(), 0u);
}

TEST(Colimit, SingleObjectDiagram) {
  const auto c = fixtures::arrow_category();
  const auto f = arrow_covariant(c);
  const ColimitResult r = colimit_finset(category_of_elements(yoneda_embed(c, "A")), f);
  EXPECT_EQ(r.classes.size(), f.value(0).size());
}

TEST(Colimit, BijectiveConnection) {
  const auto rot = share(build_rotation_category(1));
  const auto f = fixtures::constant_functor(rot, Variance::Covariant, 3);
  // h(R0) has one element everywhere; all four are connected by rotations
  const ColimitResult r = colimit_finset(category_of_elements(yoneda_embed(rot, 0)), f);
  EXPECT_EQ(r.classes.size(), 3u);
}

TEST(Colimit, DiscreteDiagramIsDisjointUnion) {
  const auto c = share(validate_category(CategoryDescription{}.object("X").object("Y")));
  SetFunctorDescription d;
  d.variance = Variance::Covariant;
  d.on_objects = {{"X", {"a", "b"}}, {"Y", {"c"}}};
  const auto f = build_set_functor(c, d);
  const auto at = fixtures::constant_functor(c, Variance::Contravariant, 1);
  EXPECT_EQ(kan_extend(f, at).size(), 3u);
}

TEST(Colimit, SchedulesAgree) {
  fixtures::Rng rng(5);
  for (const auto& c : fixtures::suite_categories()) {
    for (int i = 0; i < 3; ++i) {
      const auto at = fixtures::random_set_functor(c, Variance::Contravariant, rng);
      const auto f = fixtures::random_set_functor(c, Variance::Covariant, rng);
      const auto el = category_of_elements(at);
      EXPECT_EQ(colimit_finset(el, f, MergeSchedule::Forward), colimit_finset(el, f, MergeSchedule::Reverse));
    }
  }
}

TEST(KanExtend, ArrowExample) {
  const auto c = fixtures::arrow_category();
  const FinSet classes = kan_extend(arrow_covariant(c), yoneda_embed(c, "B"));
  EXPECT_EQ(classes.size(), 2u);
}

TEST(KanExtend, ConstantSingletonOnConnectedPresheaf) {
  const auto c = fixtures::arrow_category();
  const auto one = fixtures::constant_functor(c, Variance::Covariant, 1);
  EXPECT_EQ(kan_extend(one, yoneda_embed(c, "B")).size(), 1u);
}

TEST(KanExtend, MapRespectsIdentityAndComposition) {
  fixtures::Rng rng(8);
  for (const auto& c : fixtures::suite_categories()) {
    const auto f = fixtures::random_set_functor(c, Variance::Covariant, rng);
    for (ObjectIndex x = 0; x < c->object_count(); ++x) {
      const auto hx = yoneda_embed(c, x);
      const Function id = kan_extend_map(f, identity_transformation(hx));
      for (std::size_t i = 0; i < id.size(); ++i) EXPECT_EQ(id[i], i);
      for (ObjectIndex y = 0; y < c->object_count(); ++y) {
        for (MorphismIndex g : c->hom(x, y)) {
          for (ObjectIndex z = 0; z < c->object_count(); ++z) {
            for (MorphismIndex h : c->hom(y, z)) {
              const auto tg = yoneda_on_morphism(c, g), th = yoneda_on_morphism(c, h);
              const Function a = kan_extend_map(f, tg), b = kan_extend_map(f, th);
              const Function both = kan_extend_map(f, vertical_compose(th, tg));
              for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(both[i], b[a[i]]);
            }
          }
        }
      }
    }
  }
}

TEST(FineTuning, RotationClassificationHead) {
  const auto rot = share(build_rotation_category(1));
  const FineTuningVerdict v = check_fine_tuning_theorem(fixtures::constant_functor(rot, Variance::Covariant, 2));
  EXPECT_TRUE(v.solved);
  for (const auto& s : v.extension_values) EXPECT_EQ(s.size(), 2u);
  EXPECT_GT(v.naturality_squares, 0u);
}

TEST(FineTuning, ArrowTask) {
  const auto c = fixtures::arrow_category();
  const FineTuningVerdict v = check_fine_tuning_theorem(arrow_covariant(c));
  EXPECT_TRUE(v.solved);
  EXPECT_EQ(v.extension_values[1].size(), 2u);
}

TEST(FineTuning, CorepresentableTask) {
  for (const auto& c : fixtures::suite_categories()) {
    EXPECT_TRUE(check_fine_tuning_theorem(corepresentable(c, 0)).solved);
  }
}

TEST(FineTuning, RequiresCovariantTask) {
  const auto c = fixtures::arrow_category();
  EXPECT_THROW(check_fine_tuning_theorem(yoneda_embed(c, 0)), Error);
}
