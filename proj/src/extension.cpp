#include "catfm/extension.hpp"

#include <algorithm>
#include <numeric>

#include "catfm/error.hpp"

namespace catfm {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

void require_covariant_on(const SetFunctor& f, const FinCategory& base) {
  if (f.variance() != Variance::Covariant) {
    throw Error(ErrorKind::VarianceMismatch, {"covariant", "contravariant"}, "a covariant task is required");
  }
  if (!(f.base() == base)) throw Error(ErrorKind::BaseMismatch, {}, "task and presheaf live on different categories");
}

}  // namespace

CatFunctor CategoryOfElements::projection() const {
  std::vector<ObjectIndex> objs;
  for (const auto& e : elements) objs.push_back(e.object);
  return CatFunctor(category, presheaf->base_ptr(), std::move(objs), over);
}

CategoryOfElements category_of_elements(const SetFunctor& presheaf) {
  if (presheaf.variance() != Variance::Contravariant) {
    throw Error(ErrorKind::VarianceMismatch, {"contravariant", "covariant"}, "category of elements needs a presheaf");
  }
  const FinCategory& c = presheaf.base();
  CategoryOfElements out;
  out.presheaf = std::make_shared<const SetFunctor>(presheaf);

  CategoryDescription desc;
  out.lookup.resize(c.object_count());
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    for (std::size_t a = 0; a < presheaf.value(x).size(); ++a) {
      out.lookup[x].push_back(out.elements.size());
      out.elements.push_back({x, a});
      desc.object(c.object_name(x) + ":" + presheaf.value(x)[a]);
    }
  }

  // one morphism per (f: X → Y, b ∈ A(Y)); the source element is A(f)(b)
  struct Arrow {
    MorphismIndex base;
    std::size_t from;
    std::size_t to;
    std::string name;
  };
  std::vector<Arrow> arrows;
  std::vector<std::vector<std::size_t>> arrow_index(c.morphism_count());
  for (MorphismIndex f = 0; f < c.morphism_count(); ++f) {
    const auto& m = c.morphism(f);
    for (std::size_t b = 0; b < presheaf.value(m.cod).size(); ++b) {
      const std::size_t to = out.lookup[m.cod][b];
      const std::size_t from = out.lookup[m.dom][presheaf.action(f)[b]];
      arrow_index[f].push_back(arrows.size());
      std::string name = c.is_identity(f) ? identity_name(desc.objects[to])
                                          : m.name + "[" + presheaf.value(m.cod)[b] + "]";
      arrows.push_back({f, from, to, std::move(name)});
    }
  }
  for (const auto& a : arrows) desc.morphism(a.name, desc.objects[a.from], desc.objects[a.to]);
  for (const auto& a : arrows) {
    if (c.is_identity(a.base)) continue;
    for (MorphismIndex g : c.outgoing(c.morphism(a.base).cod)) {
      if (c.is_identity(g)) continue;
      for (std::size_t k : arrow_index[g]) {
        const auto& next = arrows[k];
        if (next.from != a.to) continue;
        // (g over c) ∘ (f over b) = (g∘f over c)
        const MorphismIndex gf = c.compose(g, a.base);
        const auto& landing = out.elements[next.to];
        const std::size_t composite = arrow_index[gf][landing.element];
        desc.composite(a.name, next.name, arrows[composite].name);
      }
    }
  }
  out.category = std::make_shared<const FinCategory>(validate_category(desc));

  out.over.resize(out.category->morphism_count());
  for (const auto& a : arrows) out.over[out.category->morphism_named(a.name)] = a.base;
  return out;
}

ColimitResult colimit_finset(const CategoryOfElements& diagram, const SetFunctor& covariant,
                             MergeSchedule schedule) {
  require_covariant_on(covariant, diagram.presheaf->base());
  const FinCategory& d = *diagram.category;

  ColimitResult out;
  out.offset.resize(d.object_count() + 1, 0);
  for (ObjectIndex i = 0; i < d.object_count(); ++i) {
    out.offset[i + 1] = out.offset[i] + covariant.value(diagram.elements[i].object).size();
  }
  const std::size_t members = out.offset.back();
  DisjointSets sets(members);

  std::vector<MorphismIndex> order(d.morphism_count());
  std::iota(order.begin(), order.end(), 0);
  if (schedule == MergeSchedule::Reverse) std::reverse(order.begin(), order.end());
  for (MorphismIndex m : order) {
    const auto& arrow = d.morphism(m);
    const auto& act = covariant.action(diagram.over[m]);
    for (std::size_t x = 0; x < act.size(); ++x) {
      sets.unite(out.member(arrow.dom, x), out.member(arrow.cod, act[x]));
    }
  }

  // Classes are numbered by least member, independent of merge order.
  std::vector<std::size_t> class_of_root(members, static_cast<std::size_t>(-1));
  out.class_of.resize(members);
  std::vector<std::string> labels;
  std::size_t owner = 0;
  for (std::size_t mem = 0; mem < members; ++mem) {
    while (out.offset[owner + 1] <= mem) ++owner;
    const std::size_t root = sets.find(mem);
    if (class_of_root[root] == static_cast<std::size_t>(-1)) {
      class_of_root[root] = out.representative.size();
      out.representative.push_back(mem);
      const auto& e = diagram.elements[owner];
      labels.push_back(covariant.value(e.object)[mem - out.offset[owner]] + "@" + d.object_name(owner));
    }
    out.class_of[mem] = class_of_root[root];
  }
  out.classes = FinSet(std::move(labels));
  return out;
}

FinSet kan_extend(const SetFunctor& covariant, const SetFunctor& at) {
  return colimit_finset(category_of_elements(at), covariant).classes;
}

Function kan_extend_map(const SetFunctor& covariant, const NatTransformation& theta) {
  const auto source_el = category_of_elements(*theta.source);
  const auto target_el = category_of_elements(*theta.target);
  const auto source_colim = colimit_finset(source_el, covariant);
  const auto target_colim = colimit_finset(target_el, covariant);

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  Function out(source_colim.classes.size(), kUnset);
  for (std::size_t obj = 0; obj < source_el.elements.size(); ++obj) {
    const auto [x, a] = source_el.elements[obj];
    const std::size_t image_obj = target_el.lookup[x][theta.components[x][a]];
    for (std::size_t e = 0; e < covariant.value(x).size(); ++e) {
      const std::size_t cls = source_colim.inject(obj, e);
      const std::size_t image = target_colim.inject(image_obj, e);
      if (out[cls] == kUnset) {
        out[cls] = image;
      } else if (out[cls] != image) {
        throw Error(ErrorKind::InternalError, {source_colim.classes[cls]}, "induced map on classes is not well defined");
      }
    }
  }
  return out;
}

FineTuningVerdict check_fine_tuning_theorem(const SetFunctor& covariant) {
  if (covariant.variance() != Variance::Covariant) {
    throw Error(ErrorKind::VarianceMismatch, {"covariant", "contravariant"}, "fine tuning takes a covariant task");
  }
  const auto& c = covariant.base_ptr();
  FineTuningVerdict verdict;

  for (ObjectIndex x = 0; x < c->object_count(); ++x) {
    const auto el = category_of_elements(yoneda_embed(c, x));
    const auto colim = colimit_finset(el, covariant);
    // (X, id_X) carries the copy of F(X)
    const std::size_t anchor = el.lookup[x][*el.presheaf->value(x).find(c->morphism(c->identity(x)).name)];
    Function phi;
    std::vector<bool> hit(colim.classes.size(), false);
    for (std::size_t e = 0; e < covariant.value(x).size(); ++e) {
      const std::size_t cls = colim.inject(anchor, e);
      if (hit[cls]) throw Error(ErrorKind::ExtensionMismatch, {c->object_name(x)}, "two elements collapse");
      hit[cls] = true;
      phi.push_back(cls);
    }
    if (phi.size() != colim.classes.size()) {
      throw Error(ErrorKind::ExtensionMismatch, {c->object_name(x)}, "extension has extra classes");
    }
    verdict.bijections.push_back(std::move(phi));
    verdict.extension_values.push_back(colim.classes);
  }

  for (MorphismIndex f = 0; f < c->morphism_count(); ++f) {
    const auto& m = c->morphism(f);
    const Function ext = kan_extend_map(covariant, yoneda_on_morphism(c, f));
    const auto& act = covariant.action(f);
    for (std::size_t e = 0; e < covariant.value(m.dom).size(); ++e) {
      if (ext[verdict.bijections[m.dom][e]] != verdict.bijections[m.cod][act[e]]) {
        throw Error(ErrorKind::ExtensionMismatch, {c->object_name(m.dom), m.name}, "naturality square fails");
      }
    }
    ++verdict.naturality_squares;
  }
  verdict.solved = true;
  return verdict;
}

}  // namespace catfm
