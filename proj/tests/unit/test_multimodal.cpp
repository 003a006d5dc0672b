#include <gtest/gtest.h>

#include "catfm/error.hpp"
#include "catfm/multimodal.hpp"
#include "catfm/pretext.hpp"
#include "generators.hpp"

using namespace catfm;
using fixtures::share;

namespace {

CatFunctor by_names(const CategoryPtr& s, const CategoryPtr& t, const std::function<std::string(std::string)>& rename) {
  std::map<std::string, std::string> objs, mors;
  for (const auto& x : s->object_names()) objs[x] = rename(x);
  for (MorphismIndex m = 0; m < s->morphism_count(); ++m) {
    if (!s->is_identity(m)) mors[s->morphism(m).name] = rename(s->morphism(m).name);
  }
  return validate_functor(CatFunctor::from_names(s, t, objs, mors));
}

std::string keep(std::string s) { return s; }

std::function<std::string(std::string)> orbit_to(int i) {
  return [i](std::string s) {
    s[1] = static_cast<char>('0' + i);
    return s;
  };
}

CategoryPtr three_chain() {
  CategoryDescription d;
  d.object("A").object("B").object("C").morphism("f", "A", "B").morphism("g", "B", "C").morphism("gf", "A", "C");
  d.composite("f", "g", "gf");
  return share(validate_category(d));
}

}  // namespace

TEST(FeatureAligned, IdentityTableIsYoneda) {
  const auto c = share(build_rotation_category(1));
  const FeatureAlignedMap m = build_feature_aligned(CatFunctor::identity(c));
  for (ObjectIndex x = 0; x < c->object_count(); ++x) EXPECT_EQ(m.table[x], yoneda_embed(c, x));
  EXPECT_TRUE(is_feature_aligned(m).aligned);
}

TEST(FeatureAligned, OrbitInclusionUsesAmbientImages) {
  const auto small = share(build_rotation_category(1)), big = share(build_rotation_category(2));
  const FeatureAlignedMap m = build_feature_aligned(by_names(small, big, orbit_to(1)));
  for (ObjectIndex x = 0; x < small->object_count(); ++x) {
    EXPECT_EQ(m.table[x].base_ptr(), big);
    EXPECT_EQ(m.table[x], yoneda_embed(big, m.functor.object(x)));
  }
}

TEST(FeatureAligned, RelabelingIsomorphism) {
  const auto a = fixtures::arrow_category();
  const auto b = share(validate_category(CategoryDescription{}.object("S").object("T").morphism("t", "S", "T")));
  const FeatureAlignedMap m = build_feature_aligned(
      validate_functor(CatFunctor::from_names(a, b, {{"A", "S"}, {"B", "T"}}, {{"f", "t"}})));
  EXPECT_EQ(m.table[1], yoneda_embed(b, "T"));
}

TEST(FeatureAligned, NotFullEmbeddingRejected) {
  const auto c = fixtures::arrow_category();
  const auto point = share(validate_category(CategoryDescription{}.object("*")));
  const auto collapse = validate_functor(CatFunctor::from_names(c, point, {{"A", "*"}, {"B", "*"}}, {{"f", "id_*"}}));
  EXPECT_THROW(build_feature_aligned(collapse), Error);
}

TEST(FeatureAligned, CorruptedEntryIsReported) {
  const auto c = share(build_rotation_category(1));
  FeatureAlignedMap m = build_feature_aligned(CatFunctor::identity(c));
  m.table[2] = fixtures::constant_functor(c, Variance::Contravariant, 2);
  const AlignmentVerdict v = is_feature_aligned(m);
  EXPECT_FALSE(v.aligned);
  EXPECT_EQ(v.failing_object, std::optional<ObjectIndex>(2));
  EXPECT_FALSE(v.detail.empty());
}

TEST(FeatureAligned, ClosedUnderNaturalIsomorphism) {
  fixtures::Rng rng(2);
  const auto small = share(build_rotation_category(1)), big = share(build_rotation_category(2));
  FeatureAlignedMap m = build_feature_aligned(by_names(small, big, orbit_to(1)));
  for (auto& t : m.table) t = fixtures::relabel(t, rng);
  EXPECT_TRUE(is_feature_aligned(m).aligned);
  EXPECT_TRUE(check_generalization(m).preserved);
}

TEST(Generalization, OrbitInclusionSingletons) {
  const auto small = share(build_rotation_category(1)), big = share(build_rotation_category(2));
  const GeneralizationVerdict v = check_generalization(build_feature_aligned(by_names(small, big, orbit_to(1))));
  ASSERT_TRUE(v.preserved) << v.detail;
  EXPECT_EQ(v.image->object_count(), 4u);
  EXPECT_EQ(v.pairs.size(), 16u);
  for (const auto& p : v.pairs) {
    EXPECT_EQ(p.source_hom, 1u);
    EXPECT_EQ(p.transformations, 1u);
    EXPECT_EQ(p.bijection.size(), 1u);
  }
}

TEST(Generalization, IdentityIsYonedaFullFaithfulness) {
  for (const auto& c : fixtures::suite_categories()) {
    const GeneralizationVerdict v = check_generalization(build_feature_aligned(CatFunctor::identity(c)));
    EXPECT_TRUE(v.preserved) << v.detail;
  }
}

TEST(Generalization, ArrowIntoThreeObjects) {
  const auto a = fixtures::arrow_category();
  const auto b = three_chain();
  const GeneralizationVerdict v = check_generalization(build_feature_aligned(by_names(a, b, keep)));
  ASSERT_TRUE(v.preserved) << v.detail;
  ASSERT_EQ(v.pairs.size(), 4u);
  const std::vector<std::size_t> expected{1, 1, 0, 1};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(v.pairs[i].transformations, expected[i]);
}

TEST(Generalization, NonFullEmbeddingFails) {
  const auto a = fixtures::arrow_category();
  const auto b = share(validate_category(
      CategoryDescription{}.object("A").object("B").morphism("f", "A", "B").morphism("g", "A", "B")));
  const CatFunctor f = by_names(a, b, keep);
  FeatureAlignedMap m{f, {yoneda_embed(b, "A"), yoneda_embed(b, "B")}};
  const GeneralizationVerdict v = check_generalization(m);
  EXPECT_FALSE(v.preserved);
  ASSERT_TRUE(v.failure.has_value());
  EXPECT_LT(v.failure->source_hom, v.failure->transformations);
}

TEST(Decode, CanonicalMapInvertsFunctor) {
  const auto small = share(build_rotation_category(1)), big = share(build_rotation_category(2));
  const FeatureAlignedMap m = build_feature_aligned(by_names(small, big, orbit_to(1)));
  for (ObjectIndex x = 0; x < small->object_count(); ++x) {
    const DecodeResult d = decode_object(m, x);
    EXPECT_EQ(d.object, m.functor.object(x));
    EXPECT_TRUE(d.exact);
    EXPECT_TRUE(d.matches_functor);
    EXPECT_EQ(d.candidates.size(), 4u);  // the whole orbit is isomorphic
  }
}

TEST(Decode, IdentityDecodesToItself) {
  const auto c = fixtures::arrow_category();
  const FeatureAlignedMap m = build_feature_aligned(CatFunctor::identity(c));
  for (ObjectIndex x = 0; x < 2; ++x) EXPECT_EQ(decode_object(m, x).object, x);
}

TEST(Decode, RelabeledEntryFallsBackToCanonicalOrder) {
  fixtures::Rng rng(4);
  const auto c = share(build_rotation_category(1));
  FeatureAlignedMap m = build_feature_aligned(CatFunctor::identity(c));
  m.table[3] = fixtures::relabel(m.table[3], rng);
  const DecodeResult d = decode_object(m, 3);
  EXPECT_FALSE(d.exact);
  EXPECT_EQ(d.object, 0u);
  EXPECT_TRUE(d.matches_functor);
}

TEST(Decode, UndecodableEntry) {
  const auto c = share(build_rotation_category(1));
  FeatureAlignedMap m = build_feature_aligned(CatFunctor::identity(c));
  m.table[0] = fixtures::constant_functor(c, Variance::Contravariant, 2);
  try {
    decode_object(m, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoDecodableObject);
  }
}

TEST(Decode, CreativityScenario) {
  const auto small = share(build_rotation_category(1)), big = share(build_rotation_category(2));
  ChainSpec spec;
  spec.categories = {small, big};
  spec.functors = {by_names(small, big, orbit_to(1))};
  spec.training_subset = std::vector<std::string>{};
  for (const auto& x : big->object_names()) {
    if (x != "I1.R90") spec.training_subset->push_back(x);
  }
  const ChainVerdict v = check_chain(spec);
  ASSERT_TRUE(v.preserved) << v.detail;
  ASSERT_EQ(v.creativity.size(), 1u);
  EXPECT_EQ(big->object_name(v.creativity[0].decoded), "I1.R90");
  EXPECT_EQ(v.creativity[0].expected, v.creativity[0].decoded);
}

namespace {

ChainSpec groupoid_chain() {
  const auto b1 = share(build_rotation_category(1));
  const auto b2 = share(build_rotation_category(2));
  const auto b3 = share(build_rotation_category(4));
  ChainSpec spec;
  spec.categories = {b1, b2, b3};
  spec.functors = {by_names(b1, b2, orbit_to(1)), by_names(b2, b3, [](std::string s) {
                     if (s[1] == '1') s[1] = '3';
                     return s;
                   })};
  return spec;
}

}  // namespace

TEST(Chain, GroupoidChainPreserved) {
  const ChainVerdict v = check_chain(groupoid_chain());
  ASSERT_TRUE(v.preserved) << v.detail;
  EXPECT_TRUE(v.decode_matches);
  for (ObjectIndex x = 0; x < 4; ++x) {
    EXPECT_EQ(v.composite->target().object_name(v.decoded[x]), "I3." + v.composite->source().object_name(x).substr(3));
  }
}

TEST(Chain, IdentityLinks) {
  const auto c = fixtures::arrow_category();
  ChainSpec spec;
  spec.categories = {c, c, c};
  spec.functors = {CatFunctor::identity(c), CatFunctor::identity(c)};
  const ChainVerdict v = check_chain(spec);
  EXPECT_TRUE(v.preserved) << v.detail;
}

TEST(Chain, CorruptedLinkIsNamed) {
  for (std::size_t bad = 0; bad < 2; ++bad) {
    ChainSpec spec = groupoid_chain();
    const auto& s = spec.categories[bad];
    const auto& t = spec.categories[bad + 1];
    // collapse everything onto one object: a functor, but not an embedding
    std::map<std::string, std::string> objs, mors;
    for (const auto& x : s->object_names()) objs[x] = t->object_name(0);
    for (const auto& m : s->morphisms()) mors[m.name] = identity_name(t->object_name(0));
    spec.functors[bad] = validate_functor(CatFunctor::from_names(s, t, objs, mors));
    const ChainVerdict v = check_chain(spec);
    EXPECT_FALSE(v.preserved);
    EXPECT_EQ(v.failing_link, std::optional<std::size_t>(bad + 1));
    EXPECT_NE(v.detail.find("ChainMismatch(" + std::to_string(bad + 1) + ")"), std::string::npos);
  }
}

TEST(Chain, SplittingAgreesWithComposite) {
  const ChainSpec spec = groupoid_chain();
  const ChainVerdict whole = check_chain(spec);
  ChainSpec direct;
  direct.categories = {spec.categories[0], spec.categories[2]};
  direct.functors = {*whole.composite};
  const ChainVerdict shortcut = check_chain(direct);
  ASSERT_TRUE(shortcut.preserved);
  ASSERT_EQ(whole.end_to_end->pairs.size(), shortcut.end_to_end->pairs.size());
  for (std::size_t i = 0; i < whole.end_to_end->pairs.size(); ++i) {
    EXPECT_EQ(whole.end_to_end->pairs[i].transformations, shortcut.end_to_end->pairs[i].transformations);
    EXPECT_EQ(whole.end_to_end->pairs[i].bijection, shortcut.end_to_end->pairs[i].bijection);
  }
  EXPECT_EQ(whole.decoded, shortcut.decoded);
}

TEST(Chain, MalformedSpec) {
  ChainSpec spec = groupoid_chain();
  spec.functors.pop_back();
  EXPECT_THROW(check_chain(spec), Error);
}
