#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "json.hpp"

#include "catfm/category.hpp"
#include "catfm/error.hpp"
#include "catfm/functor.hpp"
#include "catfm/multimodal.hpp"
#include "catfm/presheaf.hpp"
#include "catfm/pretext.hpp"

namespace catfm {

using Json = nlohmann::json;

// Parsers throw ParseError on malformed documents (wrong types, unknown or
// missing keys). Mathematical validation is left to the builders.

CategoryDescription parse_category(const Json& j);
SetFunctorDescription parse_set_functor_description(const Json& j);
WeightedGraph parse_graph(const Json& j);
MaskSpec parse_mask_spec(const Json& j);
MarkovLM parse_lm(const Json& j);
DistObject parse_distribution(const MarkovLM& lm, const Json& j);

Json to_json(const CategoryDescription& d);
Json to_json(const FinCategory& c);
/// Name maps only, identities included; source and target inline.
Json to_json(const CatFunctor& f);
Json to_json(const SetFunctor& f);
Json to_json(const WeightedGraph& g);
Json to_json(const MarkovLM& lm);
Json distribution_to_json(const MarkovLM& lm, const DistObject& d);
Json to_json(const Error& e);

Json read_json_file(const std::filesystem::path& path, std::string* raw = nullptr);

/// Resolves category/functor/presheaf references ("path-or-inline"). Paths
/// are relative to the referring file. Every file read is remembered so the
/// caller can report digests; a category file is loaded once and shared.
class Loader {
 public:
  Json read(const std::filesystem::path& path);

  CategoryPtr category(const Json& ref, const std::filesystem::path& base_dir);
  CategoryPtr category_file(const std::filesystem::path& path);

  CatFunctor functor(const Json& ref, const std::filesystem::path& base_dir);
  CatFunctor functor_file(const std::filesystem::path& path);

  /// `base` overrides the document's "base"; when both are present they must
  /// describe the same category (BaseMismatch otherwise).
  SetFunctor set_functor(const Json& ref, const std::filesystem::path& base_dir, CategoryPtr base = nullptr);
  SetFunctor set_functor_file(const std::filesystem::path& path, CategoryPtr base = nullptr);

  /// {"categories": [ref...], "functors": [ref...], "training_subset": [...]}
  ChainSpec chain_file(const std::filesystem::path& path);

  /// file path (as resolved) → raw bytes
  const std::map<std::string, std::string>& files() const { return files_; }

 private:
  std::map<std::string, CategoryPtr> categories_;
  std::map<std::string, std::string> files_;
};

}  // namespace catfm
