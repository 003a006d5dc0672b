#pragma once

#include <memory>
#include <vector>

#include "catfm/functor.hpp"
#include "catfm/presheaf.hpp"

namespace catfm {

/// Category of elements of a presheaf A on C: objects are pairs (X, a) with
/// a ∈ A(X); a morphism (X, a) → (Y, b) is an f: X → Y with A(f)(b) = a.
/// Objects are named "X:a"; the morphism over a non-identity f landing at
/// (Y, b) is named "f[b]".
struct CategoryOfElements {
  struct Element {
    ObjectIndex object;
    std::size_t element;
  };

  std::shared_ptr<const SetFunctor> presheaf;
  CategoryPtr category;
  std::vector<Element> elements;              // per object of `category`
  std::vector<MorphismIndex> over;            // per morphism: the base morphism
  std::vector<std::vector<std::size_t>> lookup;  // [X][a] -> object of `category`

  CatFunctor projection() const;
};

CategoryOfElements category_of_elements(const SetFunctor& presheaf);

enum class MergeSchedule { Forward, Reverse };

/// Quotient of the disjoint union of F(X) over the diagram. A member is a
/// pair (diagram object d, element x of F(base(d))), flattened in canonical
/// order; every class is represented by its least member and classes are
/// listed in order of their representatives.
struct ColimitResult {
  std::vector<std::size_t> offset;          // per diagram object, start of its members
  std::vector<std::size_t> class_of;        // per member
  std::vector<std::size_t> representative;  // per class, the least member
  FinSet classes;                           // labels "x@X:a" of the representatives

  std::size_t member(std::size_t diagram_object, std::size_t element) const {
    return offset[diagram_object] + element;
  }
  /// Injection of F(base(d)) into the colimit.
  std::size_t inject(std::size_t diagram_object, std::size_t element) const {
    return class_of[member(diagram_object, element)];
  }
  friend bool operator==(const ColimitResult&, const ColimitResult&) = default;
};

/// Colimit of F ∘ projection over the category of elements, by union-find.
ColimitResult colimit_finset(const CategoryOfElements& diagram, const SetFunctor& covariant,
                             MergeSchedule schedule = MergeSchedule::Forward);

/// Value of the Yoneda extension of `covariant` at the presheaf `at`.
FinSet kan_extend(const SetFunctor& covariant, const SetFunctor& at);

/// Action of the extension on θ: A → A', as a function between the class
/// sets of colimit_finset at A and at A'.
Function kan_extend_map(const SetFunctor& covariant, const NatTransformation& theta);

struct FineTuningVerdict {
  bool solved = false;
  /// per X: F(X) → classes of the extension evaluated at h(X)
  std::vector<Function> bijections;
  std::vector<FinSet> extension_values;
  std::size_t naturality_squares = 0;
};

/// Verifies ext(F)(h(X)) ≅ F(X) with explicit bijections, natural in X.
/// Throws ExtensionMismatch(X) if the restriction identity fails.
FineTuningVerdict check_fine_tuning_theorem(const SetFunctor& covariant);

}  // namespace catfm
