#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catfm/category.hpp"

namespace catfm {

enum class Variance { Covariant, Contravariant };

std::string_view to_string(Variance v);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

/// Total function between two FinSets, as element indices.
using Function = std::vector<std::size_t>;

/// Set-valued functor on a finite category. For a contravariant functor
/// (presheaf) the action of f: X → Y is a function value(Y) → value(X).
class SetFunctor {
 public:
  SetFunctor(CategoryPtr base, Variance variance, std::vector<FinSet> values,
             std::vector<Function> actions);

  const FinCategory& base() const { return *base_; }
  const CategoryPtr& base_ptr() const { return base_; }
  Variance variance() const noexcept { return variance_; }

  const FinSet& value(ObjectIndex x) const { return values_[x]; }
  const Function& action(MorphismIndex f) const { return actions_[f]; }
  const std::vector<FinSet>& values() const noexcept { return values_; }
  const std::vector<Function>& actions() const noexcept { return actions_; }

  /// Domain and codomain of the action of f, respecting variance.
  ObjectIndex action_source(MorphismIndex f) const;
  ObjectIndex action_target(MorphismIndex f) const;

  friend bool operator==(const SetFunctor& a, const SetFunctor& b);

 private:
  CategoryPtr base_;
  Variance variance_;
  std::vector<FinSet> values_;
  std::vector<Function> actions_;
};

/// Name-level description of a set-valued functor. Identity actions and
/// actions with an empty domain may be omitted.
struct SetFunctorDescription {
  Variance variance = Variance::Contravariant;
  std::map<std::string, std::vector<std::string>> on_objects;
  std::map<std::string, std::map<std::string, std::string>> on_morphisms;
};

/// Throws InvalidSetFunctor naming the offending morphism(s).
SetFunctor build_set_functor(CategoryPtr base, const SetFunctorDescription& desc);
SetFunctorDescription describe(const SetFunctor& f);

/// Checks totality, identity and composition laws. Throws InvalidSetFunctor.
const SetFunctor& validate_set_functor(const SetFunctor& f);

/// Restriction along a (name-preserving) inclusion of a subcategory.
SetFunctor restrict_to(const SetFunctor& f, const CategoryPtr& sub);

struct NatTransformation {
  std::shared_ptr<const SetFunctor> source;
  std::shared_ptr<const SetFunctor> target;
  std::vector<Function> components;

  friend bool operator==(const NatTransformation& a, const NatTransformation& b) {
    return a.components == b.components;
  }
};

/// First failing naturality square as (morphism, element) or nullopt.
std::optional<std::pair<MorphismIndex, std::size_t>> naturality_failure(
    const SetFunctor& source, const SetFunctor& target, const std::vector<Function>& components);

bool is_natural(const SetFunctor& source, const SetFunctor& target,
                const std::vector<Function>& components);

NatTransformation identity_transformation(const SetFunctor& f);
NatTransformation vertical_compose(const NatTransformation& second, const NatTransformation& first);

/// Saturating product over objects of |target(X)|^|source(X)|.
std::uint64_t component_family_count(const SetFunctor& source, const SetFunctor& target);

/// All natural transformations source → target, in lexicographic order of
/// the component values (objects in canonical order, then elements).
/// Throws EnumerationBudgetExceeded(required) when the number of candidate
/// component families exceeds `budget`.
std::vector<NatTransformation> enumerate_nat_transformations(
    const SetFunctor& source, const SetFunctor& target,
    std::uint64_t budget = kDefaultEnumerationBudget);

/// First invertible natural transformation in canonical order, if any.
std::optional<NatTransformation> are_naturally_isomorphic(
    const SetFunctor& a, const SetFunctor& b, std::uint64_t budget = kDefaultEnumerationBudget);

/// Contravariant Hom(·, X).
SetFunctor yoneda_embed(const CategoryPtr& c, ObjectIndex x);
SetFunctor yoneda_embed(const CategoryPtr& c, const std::string& x);
/// Covariant Hom(X, ·).
SetFunctor corepresentable(const CategoryPtr& c, ObjectIndex x);
/// h(f): h(X) → h(Y), postcomposition with f: X → Y.
NatTransformation yoneda_on_morphism(const CategoryPtr& c, MorphismIndex f);

struct YonedaBijection {
  ObjectIndex object = 0;
  std::vector<NatTransformation> transformations;
  /// transformations[i] ↦ element forward[i] of A(X), via θ ↦ θ_X(id_X)
  std::vector<std::size_t> forward;
  /// element a of A(X) ↦ index of the transformation g ↦ A(g)(a)
  std::vector<std::size_t> backward;
  bool bijective = false;
  std::string counterexample;
};

YonedaBijection yoneda_bijection(const CategoryPtr& c, ObjectIndex x, const SetFunctor& presheaf,
                                 std::uint64_t budget = kDefaultEnumerationBudget);

struct Representation {
  ObjectIndex object = 0;
  NatTransformation iso;  // h(object) → task
};

/// First object (canonical order) whose Yoneda image is isomorphic to the
/// presheaf.
std::optional<Representation> find_representative(const SetFunctor& task,
                                                  std::uint64_t budget = kDefaultEnumerationBudget);

/// Answer under prompt P on input X, computed as Hom(h(X), h(P)) relabeled by
/// θ ↦ θ_X(id_X). Cross-checked against hom(X, P); a disagreement throws
/// InternalError.
FinSet prompt_solve(const CategoryPtr& c, ObjectIndex prompt, ObjectIndex input,
                    std::uint64_t budget = kDefaultEnumerationBudget);

struct PromptWitness {
  enum class Kind { Cardinality, NoNaturalIso };
  Kind kind = Kind::Cardinality;
  ObjectIndex prompt = 0;
  /// object Y with |h(P)(Y)| != |T(Y)|; unset for NoNaturalIso
  std::optional<ObjectIndex> object;
  std::size_t prompt_size = 0;
  std::size_t task_size = 0;
};

struct PromptVerdict {
  bool solvable = false;
  std::optional<Representation> representation;
  /// per input X: the prompt answer and its bijection onto T(X)
  std::vector<FinSet> answers;
  std::vector<Function> answer_to_task;
  /// one entry per candidate prompt, when unsolvable
  std::vector<PromptWitness> witnesses;
};

PromptVerdict check_prompt_theorem(const SetFunctor& task,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

/// Independent re-check of an unsolvability witness.
bool recheck_witness(const SetFunctor& task, const PromptWitness& w,
                     std::uint64_t budget = kDefaultEnumerationBudget);

// ---------------------------------------------------------------------------
// foundation-model abstraction

/// Feature value f(X): a presheaf, or an opaque label for models that keep
/// their own hom table.
struct FeatureToken {
  std::optional<SetFunctor> presheaf;
  std::string label;
};

class FoundationModel {
 public:
  virtual ~FoundationModel() = default;
  virtual FeatureToken embed(ObjectIndex x) const = 0;
  virtual FinSet kernel(const FeatureToken& a, const FeatureToken& b) const = 0;
};

/// f = h_C, k_f = natural transformations between the feature presheaves,
/// each labelled by its value at the universal element of the source.
class YonedaModel final : public FoundationModel {
 public:
  explicit YonedaModel(CategoryPtr c, std::uint64_t budget = kDefaultEnumerationBudget)
      : c_(std::move(c)), budget_(budget) {}
  FeatureToken embed(ObjectIndex x) const override;
  FinSet kernel(const FeatureToken& a, const FeatureToken& b) const override;

 private:
  CategoryPtr c_;
  std::uint64_t budget_;
};

/// (object, element) with `hom(Z, object) → T(Z), g ↦ T(g)(element)` bijective
/// for every Z, if the presheaf has one.
std::optional<std::pair<ObjectIndex, std::size_t>> universal_element(const SetFunctor& presheaf);

struct IdealFailure {
  ObjectIndex x = 0;
  ObjectIndex y = 0;
  FinSet expected;
  FinSet got;
};

struct IdealVerdict {
  bool ideal = false;
  std::size_t pairs_checked = 0;
  std::optional<IdealFailure> failure;  // NotIdeal(X, Y, expected, got)
};

/// Checks k_f(f(X), f(Y)) ≅ hom(X, Y) for every ordered pair.
IdealVerdict verify_ideal(const FoundationModel& model, const FinCategory& c);

}  // namespace catfm
