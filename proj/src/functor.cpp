#include "catfm/functor.hpp"

#include <algorithm>

#include "catfm/error.hpp"

namespace catfm {

namespace {

bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
  return a == b || *a == *b;
}

}  // namespace

CatFunctor::CatFunctor(CategoryPtr source, CategoryPtr target, std::vector<ObjectIndex> on_objects,
                       std::vector<MorphismIndex> on_morphisms)
    : source_(std::move(source)),
      target_(std::move(target)),
      on_objects_(std::move(on_objects)),
      on_morphisms_(std::move(on_morphisms)) {
  if (on_objects_.size() != source_->object_count() ||
      on_morphisms_.size() != source_->morphism_count()) {
    throw Error(ErrorKind::IncompleteMapping, {}, "functor tables do not cover the source");
  }
  for (ObjectIndex y : on_objects_) {
    if (y >= target_->object_count()) throw Error(ErrorKind::UnknownObject, {std::to_string(y)});
  }
  for (MorphismIndex g : on_morphisms_) {
    if (g >= target_->morphism_count()) throw Error(ErrorKind::UnknownMorphism, {std::to_string(g)});
  }
}

CatFunctor CatFunctor::from_names(CategoryPtr source, CategoryPtr target,
                                  const std::map<std::string, std::string>& on_objects,
                                  const std::map<std::string, std::string>& on_morphisms) {
  std::vector<ObjectIndex> objs(source->object_count());
  for (ObjectIndex x = 0; x < source->object_count(); ++x) {
    auto it = on_objects.find(source->object_name(x));
    if (it == on_objects.end()) {
      throw Error(ErrorKind::IncompleteMapping, {source->object_name(x)}, "object not mapped");
    }
    objs[x] = target->object(it->second);
  }
  for (const auto& [name, _] : on_objects) source->object(name);

  std::vector<MorphismIndex> mors(source->morphism_count());
  for (MorphismIndex f = 0; f < source->morphism_count(); ++f) {
    const auto& m = source->morphism(f);
    auto it = on_morphisms.find(m.name);
    if (it != on_morphisms.end()) {
      mors[f] = target->morphism_named(it->second);
    } else if (source->is_identity(f)) {
      // identities may be left implicit
      mors[f] = target->identity(objs[m.dom]);
    } else {
      throw Error(ErrorKind::IncompleteMapping, {m.name}, "morphism not mapped");
    }
  }
  for (const auto& [name, _] : on_morphisms) source->morphism_named(name);
  return CatFunctor(std::move(source), std::move(target), std::move(objs), std::move(mors));
}

CatFunctor CatFunctor::identity(CategoryPtr c) {
  std::vector<ObjectIndex> objs(c->object_count());
  std::vector<MorphismIndex> mors(c->morphism_count());
  for (std::size_t i = 0; i < objs.size(); ++i) objs[i] = i;
  for (std::size_t i = 0; i < mors.size(); ++i) mors[i] = i;
  return CatFunctor(c, c, std::move(objs), std::move(mors));
}

std::string CatFunctor::object_name(const std::string& x) const {
  return target_->object_name(on_objects_[source_->object(x)]);
}

std::string CatFunctor::morphism_name(const std::string& f) const {
  return target_->morphism(on_morphisms_[source_->morphism_named(f)]).name;
}

bool operator==(const CatFunctor& a, const CatFunctor& b) {
  return a.on_objects_ == b.on_objects_ && a.on_morphisms_ == b.on_morphisms_ &&
         same_category(a.source_, b.source_) && same_category(a.target_, b.target_);
}

CatFunctor validate_functor(CatFunctor f) {
  const auto& src = f.source();
  const auto& tgt = f.target();
  for (MorphismIndex m = 0; m < src.morphism_count(); ++m) {
    const auto& sm = src.morphism(m);
    const auto& tm = tgt.morphism(f.morphism(m));
    if (tm.dom != f.object(sm.dom) || tm.cod != f.object(sm.cod)) {
      throw Error(ErrorKind::DomCodMismatch, {sm.name},
                  "image " + tm.name + " is " + tgt.object_name(tm.dom) + " -> " +
                      tgt.object_name(tm.cod));
    }
  }
  for (ObjectIndex x = 0; x < src.object_count(); ++x) {
    if (f.morphism(src.identity(x)) != tgt.identity(f.object(x))) {
      throw Error(ErrorKind::IdentityNotPreserved, {src.object_name(x)});
    }
  }
  for (MorphismIndex m = 0; m < src.morphism_count(); ++m) {
    for (MorphismIndex g : src.outgoing(src.morphism(m).cod)) {
      if (f.morphism(src.compose(g, m)) != tgt.compose(f.morphism(g), f.morphism(m))) {
        throw Error(ErrorKind::CompositionNotPreserved,
                    {src.morphism(g).name, src.morphism(m).name});
      }
    }
  }
  return f;
}

FunctorClass classify_functor(const CatFunctor& f) {
  const auto& src = f.source();
  const auto& tgt = f.target();
  FunctorClass out{true, true, true, true};

  for (ObjectIndex x = 0; x < src.object_count(); ++x) {
    for (ObjectIndex y = 0; y < src.object_count(); ++y) {
      std::vector<MorphismIndex> image;
      for (MorphismIndex m : src.hom(x, y)) image.push_back(f.morphism(m));
      std::sort(image.begin(), image.end());
      const bool injective = std::adjacent_find(image.begin(), image.end()) == image.end();
      out.faithful = out.faithful && injective;
      // every target morphism must be hit
      const auto& target_hom = tgt.hom(f.object(x), f.object(y));
      for (MorphismIndex g : target_hom) {
        if (!std::binary_search(image.begin(), image.end(), g)) {
          out.full = false;
          break;
        }
      }
    }
  }

  std::vector<MorphismIndex> mors = f.morphism_table();
  std::sort(mors.begin(), mors.end());
  out.embedding = std::adjacent_find(mors.begin(), mors.end()) == mors.end();
  std::vector<ObjectIndex> objs = f.object_table();
  std::sort(objs.begin(), objs.end());
  out.injective_on_objects = std::adjacent_find(objs.begin(), objs.end()) == objs.end();
  return out;
}

SubcategoryWitness full_subcategory(const CategoryPtr& ambient,
                                    const std::vector<ObjectIndex>& objects) {
  std::vector<bool> keep(ambient->object_count(), false);
  for (ObjectIndex x : objects) keep.at(x) = true;

  CategoryDescription desc;
  std::vector<ObjectIndex> obj_map;
  for (ObjectIndex x = 0; x < ambient->object_count(); ++x) {
    if (!keep[x]) continue;
    desc.object(ambient->object_name(x));
    obj_map.push_back(x);
  }
  std::vector<MorphismIndex> mor_candidates;
  for (MorphismIndex f = 0; f < ambient->morphism_count(); ++f) {
    const auto& m = ambient->morphism(f);
    if (keep[m.dom] && keep[m.cod]) mor_candidates.push_back(f);
  }
  // identities first so the validated category keeps the ambient order
  for (MorphismIndex f : mor_candidates) {
    const auto& m = ambient->morphism(f);
    desc.morphism(m.name, ambient->object_name(m.dom), ambient->object_name(m.cod));
    for (MorphismIndex g : ambient->outgoing(m.cod)) {
      if (!keep[ambient->morphism(g).cod]) continue;
      if (ambient->is_identity(f) || ambient->is_identity(g)) continue;
      desc.composite(m.name, ambient->morphism(g).name,
                     ambient->morphism(ambient->compose(g, f)).name);
    }
  }
  auto sub = std::make_shared<const FinCategory>(validate_category(desc));

  std::vector<MorphismIndex> mor_map(sub->morphism_count());
  for (MorphismIndex f = 0; f < sub->morphism_count(); ++f) {
    mor_map[f] = ambient->morphism_named(sub->morphism(f).name);
  }
  CatFunctor inclusion(sub, ambient, std::move(obj_map), std::move(mor_map));
  return SubcategoryWitness{ambient, sub, std::move(inclusion), true};
}

SubcategoryWitness image_full_subcategory(const CatFunctor& f) {
  return full_subcategory(f.target_ptr(), f.object_table());
}

FullEmbeddingFactorization factor_full_embedding(const CatFunctor& f) {
  const auto& src = f.source();
  const auto& tgt = f.target();

  std::map<MorphismIndex, MorphismIndex> preimage;
  for (MorphismIndex m = 0; m < src.morphism_count(); ++m) {
    auto [it, inserted] = preimage.emplace(f.morphism(m), m);
    if (!inserted) {
      throw Error(ErrorKind::NotFullEmbedding, {src.morphism(it->second).name, src.morphism(m).name},
                  "both map to " + tgt.morphism(f.morphism(m)).name);
    }
  }
  for (ObjectIndex x = 0; x < src.object_count(); ++x) {
    for (ObjectIndex y = 0; y < src.object_count(); ++y) {
      for (MorphismIndex g : tgt.hom(f.object(x), f.object(y))) {
        if (!preimage.count(g)) {
          throw Error(ErrorKind::NotFullEmbedding,
                      {tgt.morphism(g).name, src.object_name(x), src.object_name(y)},
                      "no preimage in hom(" + src.object_name(x) + ", " + src.object_name(y) + ")");
        }
      }
    }
  }

  SubcategoryWitness image = image_full_subcategory(f);
  const auto& sub = *image.subcategory;
  std::vector<ObjectIndex> objs(src.object_count());
  for (ObjectIndex x = 0; x < src.object_count(); ++x) {
    objs[x] = sub.object(tgt.object_name(f.object(x)));
  }
  std::vector<MorphismIndex> mors(src.morphism_count());
  for (MorphismIndex m = 0; m < src.morphism_count(); ++m) {
    mors[m] = sub.morphism_named(tgt.morphism(f.morphism(m)).name);
  }
  CatFunctor iso = validate_functor(CatFunctor(f.source_ptr(), image.subcategory, objs, mors));
  CatFunctor inclusion = image.inclusion;

  // Round trip: the factorization must reproduce f and iso must invert.
  if (!(compose_functors(inclusion, iso) == f) || !is_isomorphism_of_categories(iso)) {
    throw Error(ErrorKind::InternalError, {}, "full-embedding factorization failed to round-trip");
  }
  return FullEmbeddingFactorization{std::move(image), std::move(iso), std::move(inclusion)};
}

CatFunctor compose_functors(const CatFunctor& g, const CatFunctor& f) {
  if (!same_category(f.target_ptr(), g.source_ptr())) {
    throw Error(ErrorKind::SourceTargetMismatch, {}, "target of the first functor is not the source of the second");
  }
  std::vector<ObjectIndex> objs(f.source().object_count());
  for (ObjectIndex x = 0; x < objs.size(); ++x) objs[x] = g.object(f.object(x));
  std::vector<MorphismIndex> mors(f.source().morphism_count());
  for (MorphismIndex m = 0; m < mors.size(); ++m) mors[m] = g.morphism(f.morphism(m));
  return CatFunctor(f.source_ptr(), g.target_ptr(), std::move(objs), std::move(mors));
}

std::optional<CatFunctor> is_isomorphism_of_categories(const CatFunctor& f) {
  const auto& src = f.source();
  const auto& tgt = f.target();
  if (src.object_count() != tgt.object_count() || src.morphism_count() != tgt.morphism_count()) {
    return std::nullopt;
  }
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<ObjectIndex> inv_objs(tgt.object_count(), kUnset);
  for (ObjectIndex x = 0; x < src.object_count(); ++x) {
    if (inv_objs[f.object(x)] != kUnset) return std::nullopt;
    inv_objs[f.object(x)] = x;
  }
  std::vector<MorphismIndex> inv_mors(tgt.morphism_count(), kUnset);
  for (MorphismIndex m = 0; m < src.morphism_count(); ++m) {
    if (inv_mors[f.morphism(m)] != kUnset) return std::nullopt;
    inv_mors[f.morphism(m)] = m;
  }
  return CatFunctor(f.target_ptr(), f.source_ptr(), std::move(inv_objs), std::move(inv_mors));
}

}  // namespace catfm
