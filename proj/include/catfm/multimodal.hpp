#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catfm/functor.hpp"
#include "catfm/presheaf.hpp"

namespace catfm {

/// Extensional description of a map between presheaf categories on Yoneda
/// images: `table[X]` is the presheaf on the target category assigned to
/// h(X), for each object X of the functor's source.
struct FeatureAlignedMap {
  CatFunctor functor;
  std::vector<SetFunctor> table;
};

/// Canonical aligned map, table[X] = h_B(F(X)). Throws NotFullEmbedding.
FeatureAlignedMap build_feature_aligned(const CatFunctor& f);

struct AlignmentVerdict {
  bool aligned = false;
  /// per object X: an isomorphism h_B(F(X)) → table[X]
  std::vector<NatTransformation> witnesses;
  std::optional<ObjectIndex> failing_object;
  std::string detail;
};

AlignmentVerdict is_feature_aligned(const FeatureAlignedMap& m,
                                    std::uint64_t budget = kDefaultEnumerationBudget);

struct PairCorrespondence {
  ObjectIndex x = 0;
  ObjectIndex y = 0;
  std::size_t source_hom = 0;      // |hom_C(X, Y)|
  std::size_t transformations = 0; // |Hom(table[X]|A, table[Y]|A)|
  /// hom_C(X, Y)[i] ↦ transformation index; empty when sizes differ
  std::vector<std::size_t> bijection;
};

struct GeneralizationVerdict {
  bool preserved = false;
  CategoryPtr image;  // the full subcategory A spanned by F's image
  std::vector<PairCorrespondence> pairs;
  std::optional<PairCorrespondence> failure;
  std::string detail;
};

/// For all X, Y in C, compares hom_C(X, Y) with the natural transformations
/// between table[X] and table[Y] restricted to the image full subcategory,
/// and exhibits the bijection g ↦ α_Y ∘ h(F g) ∘ α_X⁻¹.
GeneralizationVerdict check_generalization(const FeatureAlignedMap& m,
                                           std::uint64_t budget = kDefaultEnumerationBudget);

struct DecodeResult {
  ObjectIndex object = 0;
  std::vector<ObjectIndex> candidates;  // every Z with h_B(Z) ≅ table[X]
  bool exact = false;                   // h_B(object) equals table[X] on the nose
  bool matches_functor = false;         // F(X) is among the candidates
};

/// Inverts h_B by search. h_B is injective on objects, so a table entry that
/// is literally a Yoneda image decodes to its object; otherwise the first
/// isomorphic candidate in canonical order is returned. Throws
/// NoDecodableObject.
DecodeResult decode_object(const FeatureAlignedMap& m, ObjectIndex x,
                           std::uint64_t budget = kDefaultEnumerationBudget);

struct ChainSpec {
  /// B_1, ..., B_n
  std::vector<CategoryPtr> categories;
  /// F_i: B_i → B_{i+1}, or already restricted to A_i
  std::vector<CatFunctor> functors;
  /// optional table overrides per link, indexed by objects of A_i
  std::vector<std::optional<std::vector<SetFunctor>>> tables;
  /// objects of B_n seen in training (creativity scenario)
  std::optional<std::vector<std::string>> training_subset;
};

struct CreativityEntry {
  ObjectIndex source_object = 0;
  ObjectIndex expected = 0;
  ObjectIndex decoded = 0;
};

struct ChainVerdict {
  bool preserved = false;
  std::optional<std::size_t> failing_link;  // 1-based, ChainMismatch(i)
  std::string detail;
  std::optional<CatFunctor> composite;
  std::optional<GeneralizationVerdict> end_to_end;
  std::vector<ObjectIndex> decoded;  // per object of B_1
  bool decode_matches = false;
  std::vector<CreativityEntry> creativity;
};

ChainVerdict check_chain(const ChainSpec& spec, std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace catfm
