#include "catfm/presheaf.hpp"

#include <algorithm>
#include <limits>

#include "catfm/error.hpp"

namespace catfm {

std::string_view to_string(Variance v) {
  return v == Variance::Covariant ? "covariant" : "contravariant";
}

// ---------------------------------------------------------------------------
// SetFunctor

SetFunctor::SetFunctor(CategoryPtr base, Variance variance, std::vector<FinSet> values,
                       std::vector<Function> actions)
    : base_(std::move(base)),
      variance_(variance),
      values_(std::move(values)),
      actions_(std::move(actions)) {
  if (values_.size() != base_->object_count() || actions_.size() != base_->morphism_count()) {
    throw Error(ErrorKind::InvalidSetFunctor, {}, "value or action table does not cover the base category");
  }
}

ObjectIndex SetFunctor::action_source(MorphismIndex f) const {
  const auto& m = base_->morphism(f);
  return variance_ == Variance::Covariant ? m.dom : m.cod;
}

ObjectIndex SetFunctor::action_target(MorphismIndex f) const {
  const auto& m = base_->morphism(f);
  return variance_ == Variance::Covariant ? m.cod : m.dom;
}

bool operator==(const SetFunctor& a, const SetFunctor& b) {
  return a.variance_ == b.variance_ && a.values_ == b.values_ && a.actions_ == b.actions_ &&
         (a.base_ == b.base_ || *a.base_ == *b.base_);
}

namespace {

void require_same_shape(const SetFunctor& a, const SetFunctor& b) {
  if (a.variance() != b.variance()) {
    throw Error(ErrorKind::VarianceMismatch, {std::string(to_string(a.variance())),
                                              std::string(to_string(b.variance()))});
  }
  if (a.base_ptr() != b.base_ptr() && !(a.base() == b.base())) {
    throw Error(ErrorKind::BaseMismatch, {}, "set-valued functors live on different categories");
  }
}

void require_contravariant(const SetFunctor& f) {
  if (f.variance() != Variance::Contravariant) {
    throw Error(ErrorKind::VarianceMismatch, {"contravariant", "covariant"},
                "a presheaf (contravariant functor) is required");
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    out = saturating_mul(out, base);
    if (out == 0 || out == std::numeric_limits<std::uint64_t>::max()) break;
  }
  return exp == 0 ? 1 : out;
}

std::string count_string(std::uint64_t n) {
  return n == std::numeric_limits<std::uint64_t>::max() ? std::string(">=18446744073709551615")
                                                        : std::to_string(n);
}

}  // namespace

SetFunctor build_set_functor(CategoryPtr base, const SetFunctorDescription& desc) {
  const FinCategory& c = *base;
  std::vector<FinSet> values(c.object_count());
  for (const auto& [name, elements] : desc.on_objects) {
    values[c.object(name)] = FinSet(elements);
  }

  std::vector<Function> actions(c.morphism_count());
  for (const auto& [name, _] : desc.on_morphisms) c.morphism_named(name);
  for (MorphismIndex f = 0; f < c.morphism_count(); ++f) {
    const auto& m = c.morphism(f);
    const ObjectIndex from = desc.variance == Variance::Covariant ? m.dom : m.cod;
    const ObjectIndex to = desc.variance == Variance::Covariant ? m.cod : m.dom;
    const FinSet& src = values[from];
    const FinSet& dst = values[to];
    auto it = desc.on_morphisms.find(m.name);
    if (it == desc.on_morphisms.end()) {
      if (c.is_identity(f)) {
        for (std::size_t i = 0; i < src.size(); ++i) actions[f].push_back(i);
        continue;
      }
      if (src.empty()) continue;
      throw Error(ErrorKind::InvalidSetFunctor, {m.name}, "no action given for a morphism with non-empty domain");
    }
    actions[f].resize(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
      auto e = it->second.find(src[i]);
      if (e == it->second.end()) {
        throw Error(ErrorKind::InvalidSetFunctor, {m.name, src[i]}, "action is not total");
      }
      auto j = dst.find(e->second);
      if (!j) throw Error(ErrorKind::InvalidSetFunctor, {m.name, e->second}, "action lands outside its codomain");
      actions[f][i] = *j;
    }
    for (const auto& [from_elem, _] : it->second) {
      if (!src.contains(from_elem)) {
        throw Error(ErrorKind::InvalidSetFunctor, {m.name, from_elem}, "action defined on a foreign element");
      }
    }
  }
  SetFunctor out(std::move(base), desc.variance, std::move(values), std::move(actions));
  validate_set_functor(out);
  return out;
}

SetFunctorDescription describe(const SetFunctor& f) {
  SetFunctorDescription d;
  d.variance = f.variance();
  const auto& c = f.base();
  for (ObjectIndex x = 0; x < c.object_count(); ++x) d.on_objects[c.object_name(x)] = f.value(x).elements();
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    const FinSet& src = f.value(f.action_source(m));
    const FinSet& dst = f.value(f.action_target(m));
    if (src.empty()) continue;
    auto& table = d.on_morphisms[c.morphism(m).name];
    for (std::size_t i = 0; i < src.size(); ++i) table[src[i]] = dst[f.action(m)[i]];
  }
  return d;
}

const SetFunctor& validate_set_functor(const SetFunctor& f) {
  const auto& c = f.base();
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    const auto& act = f.action(m);
    if (act.size() != f.value(f.action_source(m)).size()) {
      throw Error(ErrorKind::InvalidSetFunctor, {c.morphism(m).name}, "action is not total");
    }
    for (std::size_t v : act) {
      if (v >= f.value(f.action_target(m)).size()) {
        throw Error(ErrorKind::InvalidSetFunctor, {c.morphism(m).name}, "action lands outside its codomain");
      }
    }
  }
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    const auto& act = f.action(c.identity(x));
    for (std::size_t i = 0; i < act.size(); ++i) {
      if (act[i] != i) {
        throw Error(ErrorKind::InvalidSetFunctor, {c.morphism(c.identity(x)).name},
                    "identity does not act as the identity function");
      }
    }
  }
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    for (MorphismIndex g : c.outgoing(c.morphism(m).cod)) {
      const MorphismIndex gm = c.compose(g, m);
      const auto& act_gm = f.action(gm);
      const auto& act_m = f.action(m);
      const auto& act_g = f.action(g);
      for (std::size_t i = 0; i < act_gm.size(); ++i) {
        // covariant: F(g∘m) = F(g)∘F(m); contravariant: F(g∘m) = F(m)∘F(g)
        const std::size_t expected =
            f.variance() == Variance::Covariant ? act_g[act_m[i]] : act_m[act_g[i]];
        if (act_gm[i] != expected) {
          throw Error(ErrorKind::InvalidSetFunctor, {c.morphism(g).name, c.morphism(m).name},
                      "composition law fails");
        }
      }
    }
  }
  return f;
}

SetFunctor restrict_to(const SetFunctor& f, const CategoryPtr& sub) {
  const auto& ambient = f.base();
  std::vector<FinSet> values(sub->object_count());
  for (ObjectIndex x = 0; x < sub->object_count(); ++x) {
    values[x] = f.value(ambient.object(sub->object_name(x)));
  }
  std::vector<Function> actions(sub->morphism_count());
  for (MorphismIndex m = 0; m < sub->morphism_count(); ++m) {
    actions[m] = f.action(ambient.morphism_named(sub->morphism(m).name));
  }
  return SetFunctor(sub, f.variance(), std::move(values), std::move(actions));
}

// ---------------------------------------------------------------------------
// natural transformations

std::optional<std::pair<MorphismIndex, std::size_t>> naturality_failure(
    const SetFunctor& source, const SetFunctor& target, const std::vector<Function>& components) {
  const auto& c = source.base();
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    const ObjectIndex from = source.action_source(m);
    const ObjectIndex to = source.action_target(m);
    const auto& f1 = source.action(m);
    const auto& f2 = target.action(m);
    for (std::size_t e = 0; e < source.value(from).size(); ++e) {
      if (components[to][f1[e]] != f2[components[from][e]]) return std::make_pair(m, e);
    }
  }
  return std::nullopt;
}

bool is_natural(const SetFunctor& source, const SetFunctor& target,
                const std::vector<Function>& components) {
  return !naturality_failure(source, target, components).has_value();
}

NatTransformation identity_transformation(const SetFunctor& f) {
  auto shared = std::make_shared<const SetFunctor>(f);
  std::vector<Function> comps(f.base().object_count());
  for (ObjectIndex x = 0; x < comps.size(); ++x) {
    for (std::size_t i = 0; i < f.value(x).size(); ++i) comps[x].push_back(i);
  }
  return NatTransformation{shared, shared, std::move(comps)};
}

NatTransformation vertical_compose(const NatTransformation& second, const NatTransformation& first) {
  std::vector<Function> comps(first.components.size());
  for (std::size_t x = 0; x < comps.size(); ++x) {
    for (std::size_t v : first.components[x]) comps[x].push_back(second.components[x][v]);
  }
  return NatTransformation{first.source, second.target, std::move(comps)};
}

std::uint64_t component_family_count(const SetFunctor& source, const SetFunctor& target) {
  std::uint64_t total = 1;
  for (ObjectIndex x = 0; x < source.base().object_count(); ++x) {
    total = saturating_mul(total, saturating_pow(target.value(x).size(), source.value(x).size()));
  }
  return total;
}

namespace {

/// Backtracking over component values in canonical lexicographic order.
/// Each naturality equation is checked as soon as both of its positions are
/// assigned, which prunes without changing the output order.
class FamilySearch {
 public:
  FamilySearch(const SetFunctor& source, const SetFunctor& target, bool bijective)
      : source_(source), target_(target), bijective_(bijective) {
    const auto& c = source.base();
    offset_.resize(c.object_count() + 1, 0);
    for (ObjectIndex x = 0; x < c.object_count(); ++x) {
      offset_[x + 1] = offset_[x] + source.value(x).size();
      for (std::size_t e = 0; e < source.value(x).size(); ++e) owner_.push_back(x);
    }
    checks_.resize(owner_.size());
    for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
      if (c.is_identity(m)) continue;
      const ObjectIndex from = source.action_source(m);
      const ObjectIndex to = source.action_target(m);
      for (std::size_t e = 0; e < source.value(from).size(); ++e) {
        const std::size_t rhs = offset_[from] + e;
        const std::size_t lhs = offset_[to] + source.action(m)[e];
        checks_[std::max(lhs, rhs)].push_back({lhs, rhs, m});
      }
    }
    assignment_.assign(owner_.size(), 0);
    used_.resize(c.object_count());
    for (ObjectIndex x = 0; x < c.object_count(); ++x) used_[x].assign(target.value(x).size(), false);
  }

  template <typename Emit>
  void run(Emit&& emit) {
    stop_ = false;
    descend(0, emit);
  }

 private:
  struct Check {
    std::size_t lhs;
    std::size_t rhs;
    MorphismIndex morphism;
  };

  template <typename Emit>
  void descend(std::size_t pos, Emit& emit) {
    if (stop_) return;
    if (pos == owner_.size()) {
      std::vector<Function> comps(offset_.size() - 1);
      for (ObjectIndex x = 0; x + 1 < offset_.size(); ++x) {
        comps[x].assign(assignment_.begin() + offset_[x], assignment_.begin() + offset_[x + 1]);
      }
      if (!emit(std::move(comps))) stop_ = true;
      return;
    }
    const ObjectIndex x = owner_[pos];
    const std::size_t choices = target_.value(x).size();
    for (std::size_t v = 0; v < choices && !stop_; ++v) {
      if (bijective_ && used_[x][v]) continue;
      assignment_[pos] = v;
      bool ok = true;
      for (const auto& chk : checks_[pos]) {
        if (assignment_[chk.lhs] != target_.action(chk.morphism)[assignment_[chk.rhs]]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (bijective_) used_[x][v] = true;
      descend(pos + 1, emit);
      if (bijective_) used_[x][v] = false;
    }
  }

  const SetFunctor& source_;
  const SetFunctor& target_;
  bool bijective_;
  std::vector<std::size_t> offset_;
  std::vector<ObjectIndex> owner_;
  std::vector<std::vector<Check>> checks_;
  std::vector<std::size_t> assignment_;
  std::vector<std::vector<bool>> used_;
  bool stop_ = false;
};

}  // namespace

std::vector<NatTransformation> enumerate_nat_transformations(const SetFunctor& source,
                                                             const SetFunctor& target,
                                                             std::uint64_t budget) {
  require_same_shape(source, target);
  const std::uint64_t required = component_family_count(source, target);
  if (required > budget) {
    throw Error(ErrorKind::EnumerationBudgetExceeded, {count_string(required)},
                "budget is " + std::to_string(budget));
  }
  std::vector<NatTransformation> out;
  if (required == 0) return out;
  auto src = std::make_shared<const SetFunctor>(source);
  auto tgt = std::make_shared<const SetFunctor>(target);
  FamilySearch search(source, target, false);
  search.run([&](std::vector<Function> comps) {
    out.push_back(NatTransformation{src, tgt, std::move(comps)});
    return true;
  });
  return out;
}

std::optional<NatTransformation> are_naturally_isomorphic(const SetFunctor& a, const SetFunctor& b,
                                                          std::uint64_t budget) {
  require_same_shape(a, b);
  std::uint64_t required = 1;
  for (ObjectIndex x = 0; x < a.base().object_count(); ++x) {
    const std::size_t n = a.value(x).size();
    if (n != b.value(x).size()) return std::nullopt;
    for (std::size_t k = 2; k <= n; ++k) required = saturating_mul(required, k);
  }
  if (required > budget) {
    throw Error(ErrorKind::EnumerationBudgetExceeded, {count_string(required)},
                "budget is " + std::to_string(budget));
  }
  std::optional<NatTransformation> found;
  FamilySearch search(a, b, true);
  search.run([&](std::vector<Function> comps) {
    found = NatTransformation{std::make_shared<const SetFunctor>(a),
                              std::make_shared<const SetFunctor>(b), std::move(comps)};
    return false;
  });
  return found;
}

// ---------------------------------------------------------------------------
// Yoneda

SetFunctor yoneda_embed(const CategoryPtr& c, ObjectIndex x) {
  if (x >= c->object_count()) throw Error(ErrorKind::UnknownObject, {std::to_string(x)});
  const auto pos = hom_positions(*c);
  std::vector<FinSet> values(c->object_count());
  for (ObjectIndex y = 0; y < c->object_count(); ++y) values[y] = hom_names(*c, y, x);
  std::vector<Function> actions(c->morphism_count());
  for (MorphismIndex f = 0; f < c->morphism_count(); ++f) {
    // f: Y → Z acts hom(Z, X) → hom(Y, X) by g ↦ g ∘ f
    for (MorphismIndex g : c->hom(c->morphism(f).cod, x)) actions[f].push_back(pos[c->compose(g, f)]);
  }
  return SetFunctor(c, Variance::Contravariant, std::move(values), std::move(actions));
}

SetFunctor yoneda_embed(const CategoryPtr& c, const std::string& x) {
  return yoneda_embed(c, c->object(x));
}

SetFunctor corepresentable(const CategoryPtr& c, ObjectIndex x) {
  if (x >= c->object_count()) throw Error(ErrorKind::UnknownObject, {std::to_string(x)});
  const auto pos = hom_positions(*c);
  std::vector<FinSet> values(c->object_count());
  for (ObjectIndex y = 0; y < c->object_count(); ++y) values[y] = hom_names(*c, x, y);
  std::vector<Function> actions(c->morphism_count());
  for (MorphismIndex f = 0; f < c->morphism_count(); ++f) {
    for (MorphismIndex g : c->hom(x, c->morphism(f).dom)) actions[f].push_back(pos[c->compose(f, g)]);
  }
  return SetFunctor(c, Variance::Covariant, std::move(values), std::move(actions));
}

NatTransformation yoneda_on_morphism(const CategoryPtr& c, MorphismIndex f) {
  const auto& m = c->morphism(f);
  const auto pos = hom_positions(*c);
  auto src = std::make_shared<const SetFunctor>(yoneda_embed(c, m.dom));
  auto tgt = std::make_shared<const SetFunctor>(yoneda_embed(c, m.cod));
  std::vector<Function> comps(c->object_count());
  for (ObjectIndex z = 0; z < c->object_count(); ++z) {
    for (MorphismIndex g : c->hom(z, m.dom)) comps[z].push_back(pos[c->compose(f, g)]);
  }
  return NatTransformation{src, tgt, std::move(comps)};
}

YonedaBijection yoneda_bijection(const CategoryPtr& c, ObjectIndex x, const SetFunctor& presheaf,
                                 std::uint64_t budget) {
  require_contravariant(presheaf);
  const SetFunctor hx = yoneda_embed(c, x);
  require_same_shape(hx, presheaf);

  YonedaBijection out;
  out.object = x;
  out.transformations = enumerate_nat_transformations(hx, presheaf, budget);

  const auto pos = hom_positions(*c);
  const std::size_t id_pos = pos[c->identity(x)];
  for (const auto& theta : out.transformations) out.forward.push_back(theta.components[x][id_pos]);

  const FinSet& ax = presheaf.value(x);
  out.bijective = out.transformations.size() == ax.size();
  if (!out.bijective) {
    out.counterexample = std::to_string(out.transformations.size()) + " transformations but " +
                         std::to_string(ax.size()) + " elements";
  }
  for (std::size_t a = 0; a < ax.size(); ++a) {
    // g ↦ A(g)(a) for g: Y → X
    std::vector<Function> comps(c->object_count());
    for (ObjectIndex y = 0; y < c->object_count(); ++y) {
      for (MorphismIndex g : c->hom(y, x)) comps[y].push_back(presheaf.action(g)[a]);
    }
    auto it = std::find_if(out.transformations.begin(), out.transformations.end(),
                           [&](const NatTransformation& t) { return t.components == comps; });
    if (it == out.transformations.end()) {
      out.bijective = false;
      out.counterexample = "no transformation realizes element " + ax[a];
      out.backward.push_back(static_cast<std::size_t>(-1));
      continue;
    }
    const std::size_t idx = static_cast<std::size_t>(it - out.transformations.begin());
    out.backward.push_back(idx);
    if (out.forward[idx] != a && out.bijective) {
      out.bijective = false;
      out.counterexample = "round trip fails at element " + ax[a];
    }
  }
  for (std::size_t i = 0; i < out.forward.size() && out.bijective; ++i) {
    if (out.backward[out.forward[i]] != i) {
      out.bijective = false;
      out.counterexample = "round trip fails at transformation " + std::to_string(i);
    }
  }
  return out;
}

std::optional<Representation> find_representative(const SetFunctor& task, std::uint64_t budget) {
  require_contravariant(task);
  const auto& c = task.base_ptr();
  for (ObjectIndex x = 0; x < c->object_count(); ++x) {
    const SetFunctor hx = yoneda_embed(c, x);
    if (auto iso = are_naturally_isomorphic(hx, task, budget)) {
      return Representation{x, std::move(*iso)};
    }
  }
  return std::nullopt;
}

FinSet prompt_solve(const CategoryPtr& c, ObjectIndex prompt, ObjectIndex input, std::uint64_t budget) {
  const SetFunctor hp = yoneda_embed(c, prompt);
  const SetFunctor hx = yoneda_embed(c, input);
  const auto pos = hom_positions(*c);
  const std::size_t id_pos = pos[c->identity(input)];

  std::vector<std::size_t> hits;
  for (const auto& theta : enumerate_nat_transformations(hx, hp, budget)) {
    hits.push_back(theta.components[input][id_pos]);
  }
  const auto n_transformations = hits.size();
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());

  const FinSet& direct = hp.value(input);  // hom(input, prompt)
  if (hits.size() != n_transformations || hits.size() != direct.size()) {
    throw Error(ErrorKind::InternalError, {c->object_name(prompt), c->object_name(input)},
                "natural-transformation route disagrees with hom(X, P)");
  }
  std::vector<std::string> names;
  for (std::size_t i : hits) names.push_back(direct[i]);
  return FinSet(std::move(names));
}

PromptVerdict check_prompt_theorem(const SetFunctor& task, std::uint64_t budget) {
  require_contravariant(task);
  const auto& c = task.base_ptr();
  PromptVerdict verdict;

  if (auto rep = find_representative(task, budget)) {
    const SetFunctor hp = yoneda_embed(c, rep->object);
    if (!is_natural(hp, task, rep->iso.components)) {
      throw Error(ErrorKind::InternalError, {c->object_name(rep->object)}, "representing iso is not natural");
    }
    for (ObjectIndex x = 0; x < c->object_count(); ++x) {
      FinSet answer = prompt_solve(c, rep->object, x, budget);
      Function to_task;
      std::vector<bool> hit(task.value(x).size(), false);
      for (const auto& name : answer) {
        const std::size_t v = rep->iso.components[x][*hp.value(x).find(name)];
        to_task.push_back(v);
        hit[v] = true;
      }
      if (answer.size() != task.value(x).size() ||
          !std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
        throw Error(ErrorKind::InternalError, {c->object_name(x)}, "prompt answer is not in bijection with T(X)");
      }
      verdict.answers.push_back(std::move(answer));
      verdict.answer_to_task.push_back(std::move(to_task));
    }
    verdict.solvable = true;
    verdict.representation = std::move(rep);
    return verdict;
  }

  for (ObjectIndex p = 0; p < c->object_count(); ++p) {
    PromptWitness w;
    w.prompt = p;
    w.kind = PromptWitness::Kind::NoNaturalIso;
    for (ObjectIndex y = 0; y < c->object_count(); ++y) {
      const std::size_t hs = c->hom(y, p).size();
      if (hs != task.value(y).size()) {
        w.kind = PromptWitness::Kind::Cardinality;
        w.object = y;
        w.prompt_size = hs;
        w.task_size = task.value(y).size();
        break;
      }
    }
    verdict.witnesses.push_back(w);
  }
  return verdict;
}

bool recheck_witness(const SetFunctor& task, const PromptWitness& w, std::uint64_t budget) {
  const auto& c = task.base_ptr();
  const SetFunctor hp = yoneda_embed(c, w.prompt);
  if (w.kind == PromptWitness::Kind::Cardinality) {
    if (!w.object) return false;
    return hp.value(*w.object).size() == w.prompt_size && task.value(*w.object).size() == w.task_size &&
           w.prompt_size != w.task_size;
  }
  return !are_naturally_isomorphic(hp, task, budget).has_value();
}

// ---------------------------------------------------------------------------
// foundation models

std::optional<std::pair<ObjectIndex, std::size_t>> universal_element(const SetFunctor& presheaf) {
  require_contravariant(presheaf);
  const auto& c = presheaf.base();
  for (ObjectIndex z = 0; z < c.object_count(); ++z) {
    for (std::size_t e = 0; e < presheaf.value(z).size(); ++e) {
      bool universal = true;
      for (ObjectIndex y = 0; y < c.object_count() && universal; ++y) {
        const auto& h = c.hom(y, z);
        if (h.size() != presheaf.value(y).size()) {
          universal = false;
          break;
        }
        std::vector<bool> seen(h.size(), false);
        for (MorphismIndex g : h) {
          const std::size_t v = presheaf.action(g)[e];
          if (seen[v]) {
            universal = false;
            break;
          }
          seen[v] = true;
        }
      }
      if (universal) return std::make_pair(z, e);
    }
  }
  return std::nullopt;
}

FeatureToken YonedaModel::embed(ObjectIndex x) const {
  return FeatureToken{yoneda_embed(c_, x), c_->object_name(x)};
}

FinSet YonedaModel::kernel(const FeatureToken& a, const FeatureToken& b) const {
  if (!a.presheaf || !b.presheaf) {
    throw Error(ErrorKind::InvalidSetFunctor, {a.label, b.label}, "Yoneda model needs presheaf features");
  }
  const auto transformations = enumerate_nat_transformations(*a.presheaf, *b.presheaf, budget_);
  const auto anchor = universal_element(*a.presheaf);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < transformations.size(); ++i) {
    if (anchor) {
      const auto [z, e] = *anchor;
      labels.push_back(b.presheaf->value(z)[transformations[i].components[z][e]]);
    } else {
      labels.push_back("nat" + std::to_string(i));
    }
  }
  return FinSet(std::move(labels));
}

IdealVerdict verify_ideal(const FoundationModel& model, const FinCategory& c) {
  IdealVerdict verdict;
  std::vector<FeatureToken> features;
  for (ObjectIndex x = 0; x < c.object_count(); ++x) features.push_back(model.embed(x));
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    for (ObjectIndex y = 0; y < c.object_count(); ++y) {
      FinSet expected = hom_names(c, x, y);
      FinSet got = model.kernel(features[x], features[y]);
      ++verdict.pairs_checked;
      if (got.size() != expected.size()) {
        verdict.failure = IdealFailure{x, y, std::move(expected), std::move(got)};
        return verdict;
      }
    }
  }
  verdict.ideal = true;
  return verdict;
}

}  // namespace catfm
