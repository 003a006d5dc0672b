#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace catfm {

using ObjectIndex = std::size_t;
using MorphismIndex = std::size_t;

inline constexpr std::size_t kDefaultMorphismCap = 10'000;

/// Finite set of named elements. Element order is significant: every
/// set-valued answer in the library is reported in this order.
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<std::string> elements);

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const std::string& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  std::optional<std::size_t> find(const std::string& element) const;
  bool contains(const std::string& element) const { return find(element).has_value(); }

  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  friend bool operator==(const FinSet& a, const FinSet& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<std::string> elements_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Same elements, order ignored.
bool same_elements(const FinSet& a, const FinSet& b);

struct MorphismDecl {
  std::string name;
  std::string dom;
  std::string cod;
};

/// `equals = then ∘ first`.
struct CompositeDecl {
  std::string first;
  std::string then;
  std::string equals;
};

/// Unvalidated category description, as read from a file or assembled by a
/// builder. Identities named `id_<object>` may be omitted; composites that
/// involve an identity may be omitted and are filled in by the unit laws.
struct CategoryDescription {
  std::vector<std::string> objects;
  std::vector<MorphismDecl> morphisms;
  std::vector<CompositeDecl> composition;

  CategoryDescription& object(std::string name);
  CategoryDescription& morphism(std::string name, std::string dom, std::string cod);
  CategoryDescription& composite(std::string first, std::string then, std::string equals);
};

std::string identity_name(const std::string& object);

struct Morphism {
  std::string name;
  ObjectIndex dom;
  ObjectIndex cod;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

/// A validated, immutable finite category. Obtain one through
/// validate_category(); every instance satisfies the identity, unit,
/// closure and associativity laws.
class FinCategory {
 public:
  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return morphisms_.size(); }

  const std::string& object_name(ObjectIndex x) const { return objects_[x]; }
  const std::vector<std::string>& object_names() const noexcept { return objects_; }
  const Morphism& morphism(MorphismIndex f) const { return morphisms_[f]; }
  const std::vector<Morphism>& morphisms() const noexcept { return morphisms_; }

  std::optional<ObjectIndex> find_object(const std::string& name) const;
  std::optional<MorphismIndex> find_morphism(const std::string& name) const;
  /// Throws Error(UnknownObject).
  ObjectIndex object(const std::string& name) const;
  /// Throws Error(UnknownMorphism).
  MorphismIndex morphism_named(const std::string& name) const;

  MorphismIndex identity(ObjectIndex x) const { return identities_[x]; }
  bool is_identity(MorphismIndex f) const {
    return identities_[morphisms_[f].dom] == f;
  }

  /// `then ∘ first`; requires cod(first) == dom(then).
  MorphismIndex compose(MorphismIndex then, MorphismIndex first) const;
  bool composable(MorphismIndex then, MorphismIndex first) const {
    return morphisms_[first].cod == morphisms_[then].dom;
  }

  /// Morphisms X → Y in canonical order.
  const std::vector<MorphismIndex>& hom(ObjectIndex x, ObjectIndex y) const {
    return hom_[x * objects_.size() + y];
  }
  /// Morphisms with domain X, in canonical order.
  const std::vector<MorphismIndex>& outgoing(ObjectIndex x) const { return outgoing_[x]; }
  const std::vector<MorphismIndex>& incoming(ObjectIndex y) const { return incoming_[y]; }

  friend bool operator==(const FinCategory& a, const FinCategory& b);

 private:
  friend FinCategory validate_category(const CategoryDescription&);
  friend FinCategory opposite(const FinCategory&);

  void index_structure();

  std::vector<std::string> objects_;
  std::unordered_map<std::string, ObjectIndex> object_index_;
  std::vector<Morphism> morphisms_;
  std::unordered_map<std::string, MorphismIndex> morphism_index_;
  std::vector<MorphismIndex> identities_;
  std::vector<std::vector<MorphismIndex>> hom_;
  std::vector<std::vector<MorphismIndex>> outgoing_;
  std::vector<std::vector<MorphismIndex>> incoming_;
  std::vector<std::size_t> outgoing_position_;
  // after_[f][outgoing_position_[g]] == g ∘ f
  std::vector<std::vector<MorphismIndex>> after_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

/// Validates a description. Throws Error naming the first violated axiom:
/// DuplicateName, DanglingReference, MissingIdentity, CompositionUndefined,
/// CompositeHomMismatch, UnitLawViolation(f) or AssociativityViolation(h,g,f).
FinCategory validate_category(const CategoryDescription& raw);

/// Inverse of validate_category: identities are listed explicitly and only
/// composites of two non-identity morphisms are emitted.
CategoryDescription describe(const FinCategory& c);

FinSet hom(const FinCategory& c, const std::string& x, const std::string& y);
FinSet hom_names(const FinCategory& c, ObjectIndex x, ObjectIndex y);

/// Position of every morphism inside its own hom list.
std::vector<std::size_t> hom_positions(const FinCategory& c);

FinCategory opposite(const FinCategory& c);

/// Deterministic random category: a random graph whose edges are realized as
/// random functions between small finite sets, closed under composition.
/// Paths evaluating to the same function are identified, so the result is a
/// quotient of the free category on the graph. `max_hom` bounds the number of
/// generating edges per ordered pair of objects. Throws BudgetExceeded when
/// the closure exceeds `morphism_cap`.
FinCategory generate_random_category(std::uint64_t seed, std::size_t max_objects,
                                     std::size_t max_hom,
                                     std::size_t morphism_cap = kDefaultMorphismCap);

}  // namespace catfm
