#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "catfm/io.hpp"
#include "generators.hpp"

using namespace catfm;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CATFM_DATA_DIR;

ErrorKind parse_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalError;
}

}  // namespace

TEST(ParseCategory, MinimalAndFull) {
  const auto d = parse_category(Json::parse(R"({"objects": ["A"]})"));
  EXPECT_EQ(validate_category(d).morphism_count(), 1u);

  const auto j = Json::parse(R"({
    "objects": ["X"],
    "morphisms": [{"name": "s", "dom": "X", "cod": "X"}],
    "composition": [{"first": "s", "then": "s", "equals": "id_X"}]
  })");
  const FinCategory c = validate_category(parse_category(j));
  const auto s = c.morphism_named("s");
  EXPECT_EQ(c.compose(s, s), c.identity(0));
}

TEST(ParseCategory, RejectsMalformed) {
  EXPECT_EQ(parse_kind([] { parse_category(Json::parse(R"({"objects": ["A"], "extra": 1})")); }), ErrorKind::ParseError);
  EXPECT_EQ(parse_kind([] { parse_category(Json::parse(R"({"morphisms": []})")); }), ErrorKind::ParseError);
  EXPECT_EQ(parse_kind([] { parse_category(Json::parse(R"({"objects": [1]})")); }), ErrorKind::ParseError);
  EXPECT_EQ(parse_kind([] { parse_category(Json::parse(R"({"objects": ["A"], "morphisms": [{"name": "f"}]})")); }),
            ErrorKind::ParseError);
  EXPECT_EQ(parse_kind([] { parse_category(Json::parse("[]")); }), ErrorKind::ParseError);
}

TEST(ParseCategory, JsonRoundTrip) {
  for (const auto& c : fixtures::suite_categories()) {
    EXPECT_EQ(validate_category(parse_category(to_json(*c))), *c);
  }
}

TEST(ParseSetFunctor, VarianceAndActions) {
  const auto d = parse_set_functor_description(Json::parse(R"({
    "variance": "covariant",
    "on_objects": {"A": ["0"], "B": ["0", "1"]},
    "on_morphisms": {"f": {"0": "1"}}
  })"));
  EXPECT_EQ(d.variance, Variance::Covariant);
  const SetFunctor f = build_set_functor(fixtures::arrow_category(), d);
  EXPECT_EQ(f.action(f.base().morphism_named("f")), Function{1});
  EXPECT_EQ(parse_kind([] { parse_set_functor_description(Json::parse(R"({"on_objects": {}, "variance": "sideways"})")); }),
            ErrorKind::ParseError);
}

TEST(ParseSetFunctor, JsonRoundTrip) {
  fixtures::Rng rng(21);
  for (const auto& c : fixtures::suite_categories()) {
    const auto f = fixtures::random_set_functor(c, Variance::Contravariant, rng);
    Loader loader;
    EXPECT_EQ(loader.set_functor(to_json(f), "."), f);
  }
}

TEST(ParseGraph, Examples) {
  const WeightedGraph g = parse_graph(read_json_file(kData / "graph.json"));
  EXPECT_EQ(g.weight("X", "Y"), Rational(1, 2));
  EXPECT_EQ(g.weight("Y", "X"), Rational(1, 2));
  EXPECT_EQ(parse_graph(to_json(g)).weights, g.weights);
  EXPECT_EQ(parse_kind([] {
              parse_graph(Json::parse(
                  R"({"nodes": ["X", "Y"], "edges": [{"x": "X", "y": "Y", "weight": 1}, {"x": "Y", "y": "X", "weight": 2}]})"));
            }),
            ErrorKind::InvalidArgument);
}

TEST(ParseMask, Example) {
  const MaskSpec m = parse_mask_spec(read_json_file(kData / "mask.json"));
  ASSERT_EQ(m.full_objects.size(), 2u);
  EXPECT_EQ(m.full_objects[1], (MaskedObject{"img2", "left", "bottom"}));
}

TEST(ParseLm, ExampleAndRoundTrip) {
  const MarkovLM lm = parse_lm(read_json_file(kData / "lm.json"));
  EXPECT_EQ(lm.window, 2u);
  EXPECT_EQ(lm.next.at({"b", "a"}).at("b"), Rational(3, 4));
  const MarkovLM again = parse_lm(to_json(lm));
  EXPECT_EQ(again.next, lm.next);
  const DistObject d = parse_distribution(lm, Json::parse(R"({"ba": "1/2", "ab": "1/2"})"));
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(distribution_to_json(lm, d), Json::parse(R"({"ab": "1/2", "ba": "1/2"})"));
}

TEST(ParseLm, RejectsBadMass) {
  EXPECT_EQ(parse_kind([] {
              parse_lm(Json::parse(R"({"tokens": ["a"], "N": 1, "next": {"a": {"a": "1/2"}}})"));
            }),
            ErrorKind::InvalidDistribution);
  EXPECT_EQ(parse_kind([] { parse_lm(Json::parse(R"({"tokens": ["a"], "N": -1, "next": {}})")); }),
            ErrorKind::ParseError);
}

TEST(Files, MissingAndMalformed) {
  EXPECT_EQ(parse_kind([] { read_json_file(kData / "does_not_exist.json"); }), ErrorKind::IoError);
  const fs::path tmp = fs::temp_directory_path() / "catfm_bad.json";
  std::ofstream(tmp) << "{ not json";
  EXPECT_EQ(parse_kind([&] { read_json_file(tmp); }), ErrorKind::ParseError);
  fs::remove(tmp);
}

TEST(Loader, SharesCategoriesAndRecordsFiles) {
  Loader loader;
  const auto a = loader.category_file(kData / "rotation.json");
  const auto b = loader.category(Json("rotation.json"), kData);
  EXPECT_EQ(a.get(), b.get());
  const auto task = loader.set_functor_file(kData / "rotation_two_class.json");
  EXPECT_EQ(task.base_ptr().get(), a.get());
  EXPECT_EQ(loader.files().size(), 2u);
}

TEST(Loader, InlineReferences) {
  Loader loader;
  const Json inline_functor = Json::parse(R"({
    "source": {"objects": ["A"]},
    "target": "arrow.json",
    "on_objects": {"A": "B"}
  })");
  const CatFunctor f = validate_functor(loader.functor(inline_functor, kData));
  EXPECT_EQ(f.target().object_name(f.object(0)), "B");
}

TEST(Loader, BaseOverrideMustAgree) {
  Loader loader;
  const auto arrow = loader.category_file(kData / "arrow.json");
  EXPECT_NO_THROW(loader.set_functor_file(kData / "arrow_task_hB.json", arrow));
  const auto rot = loader.category_file(kData / "rotation.json");
  EXPECT_EQ(parse_kind([&] { loader.set_functor_file(kData / "arrow_task_hB.json", rot); }), ErrorKind::BaseMismatch);
  EXPECT_EQ(parse_kind([&] { loader.set_functor(Json::parse(R"({"on_objects": {}})"), kData); }),
            ErrorKind::ParseError);
}

TEST(Loader, ChainFile) {
  Loader loader;
  const ChainSpec spec = loader.chain_file(kData / "chain.json");
  ASSERT_EQ(spec.categories.size(), 3u);
  ASSERT_EQ(spec.functors.size(), 2u);
  EXPECT_EQ(spec.functors[0].source_ptr().get(), spec.categories[0].get());
  EXPECT_EQ(spec.functors[1].target_ptr().get(), spec.categories[2].get());
  EXPECT_FALSE(spec.training_subset.has_value());
  EXPECT_TRUE(loader.chain_file(kData / "chain_creativity.json").training_subset.has_value());
}

TEST(Serialize, ErrorAndFunctor) {
  const Error e(ErrorKind::UnitLawViolation, {"f"}, "detail");
  EXPECT_EQ(to_json(e), Json::parse(R"({"kind": "UnitLawViolation", "witnesses": ["f"], "detail": "detail"})"));
  const Json f = to_json(CatFunctor::identity(fixtures::arrow_category()));
  EXPECT_EQ(f["on_morphisms"]["f"], "f");
  EXPECT_EQ(f["on_objects"]["A"], "A");
}
