#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catfm/category.hpp"

namespace catfm {

/// Functor between two finite categories, stored as index tables. A freshly
/// constructed CatFunctor is only well-typed as data; validate_functor checks
/// the functor laws.
class CatFunctor {
 public:
  CatFunctor(CategoryPtr source, CategoryPtr target, std::vector<ObjectIndex> on_objects,
             std::vector<MorphismIndex> on_morphisms);

  /// Builds from name maps. Throws IncompleteMapping when a source object or
  /// morphism is unmapped, UnknownObject/UnknownMorphism for bad targets.
  static CatFunctor from_names(CategoryPtr source, CategoryPtr target,
                               const std::map<std::string, std::string>& on_objects,
                               const std::map<std::string, std::string>& on_morphisms);

  static CatFunctor identity(CategoryPtr c);

  const FinCategory& source() const { return *source_; }
  const FinCategory& target() const { return *target_; }
  const CategoryPtr& source_ptr() const { return source_; }
  const CategoryPtr& target_ptr() const { return target_; }

  ObjectIndex object(ObjectIndex x) const { return on_objects_[x]; }
  MorphismIndex morphism(MorphismIndex f) const { return on_morphisms_[f]; }
  const std::vector<ObjectIndex>& object_table() const { return on_objects_; }
  const std::vector<MorphismIndex>& morphism_table() const { return on_morphisms_; }

  std::string object_name(const std::string& x) const;
  std::string morphism_name(const std::string& f) const;

  /// Same tables; source and target compared structurally.
  friend bool operator==(const CatFunctor& a, const CatFunctor& b);

 private:
  CategoryPtr source_;
  CategoryPtr target_;
  std::vector<ObjectIndex> on_objects_;
  std::vector<MorphismIndex> on_morphisms_;
};

/// Throws DomCodMismatch(f), IdentityNotPreserved(X) or
/// CompositionNotPreserved(g, f); returns the functor unchanged otherwise.
CatFunctor validate_functor(CatFunctor f);

struct FunctorClass {
  bool faithful = false;
  bool full = false;
  bool embedding = false;
  bool injective_on_objects = false;
};

FunctorClass classify_functor(const CatFunctor& f);

struct SubcategoryWitness {
  CategoryPtr ambient;
  CategoryPtr subcategory;
  CatFunctor inclusion;
  bool full = false;
};

/// Full subcategory of `ambient` on the given objects (kept in ambient order),
/// with its name-preserving inclusion.
SubcategoryWitness full_subcategory(const CategoryPtr& ambient,
                                    const std::vector<ObjectIndex>& objects);

SubcategoryWitness image_full_subcategory(const CatFunctor& f);

/// `f = inclusion ∘ iso`, with `iso` an isomorphism onto the image full
/// subcategory.
struct FullEmbeddingFactorization {
  SubcategoryWitness image;
  CatFunctor iso;
  CatFunctor inclusion;
};

/// Throws NotFullEmbedding carrying the first witness in canonical order:
/// either two morphisms with the same image, or a target morphism with no
/// preimage together with its hom-set endpoints.
FullEmbeddingFactorization factor_full_embedding(const CatFunctor& f);

/// `g ∘ f`. Throws SourceTargetMismatch unless target(f) == source(g).
CatFunctor compose_functors(const CatFunctor& g, const CatFunctor& f);

/// Two-sided inverse when `f` is bijective on objects and morphisms.
std::optional<CatFunctor> is_isomorphism_of_categories(const CatFunctor& f);

}  // namespace catfm
