#include "catfm/multimodal.hpp"

#include <algorithm>
#include <map>

#include "catfm/error.hpp"

namespace catfm {

FeatureAlignedMap build_feature_aligned(const CatFunctor& f) {
  factor_full_embedding(f);
  FeatureAlignedMap m{f, {}};
  for (ObjectIndex x = 0; x < f.source().object_count(); ++x) {
    m.table.push_back(yoneda_embed(f.target_ptr(), f.object(x)));
  }
  return m;
}

AlignmentVerdict is_feature_aligned(const FeatureAlignedMap& m, std::uint64_t budget) {
  AlignmentVerdict verdict;
  const auto& f = m.functor;
  if (m.table.size() != f.source().object_count()) {
    verdict.detail = "table does not cover the source objects";
    return verdict;
  }
  for (ObjectIndex x = 0; x < m.table.size(); ++x) {
    const SetFunctor& entry = m.table[x];
    const SetFunctor expected = yoneda_embed(f.target_ptr(), f.object(x));
    const bool same_base = entry.base_ptr() == f.target_ptr() || entry.base() == f.target();
    std::optional<NatTransformation> iso;
    if (same_base && entry.variance() == Variance::Contravariant) {
      iso = are_naturally_isomorphic(expected, entry, budget);
    }
    if (!iso) {
      verdict.failing_object = x;
      std::string sizes_expected, sizes_got;
      for (ObjectIndex z = 0; z < f.target().object_count(); ++z) {
        if (z) {
          sizes_expected += ",";
          sizes_got += ",";
        }
        sizes_expected += std::to_string(expected.value(z).size());
        sizes_got += same_base ? std::to_string(entry.value(z).size()) : "?";
      }
      verdict.detail = "table[" + f.source().object_name(x) + "] is not isomorphic to h(" +
                       f.target().object_name(f.object(x)) + "): value sizes [" + sizes_got +
                       "] vs [" + sizes_expected + "]";
      return verdict;
    }
    verdict.witnesses.push_back(std::move(*iso));
  }
  verdict.aligned = true;
  return verdict;
}

namespace {

Function invert(const Function& bijection) {
  Function inv(bijection.size());
  for (std::size_t i = 0; i < bijection.size(); ++i) inv[bijection[i]] = i;
  return inv;
}

}  // namespace

GeneralizationVerdict check_generalization(const FeatureAlignedMap& m, std::uint64_t budget) {
  GeneralizationVerdict verdict;
  const auto& f = m.functor;
  const auto& c = f.source();
  const auto& b = f.target();

  const AlignmentVerdict alignment = is_feature_aligned(m, budget);
  if (!alignment.aligned) {
    verdict.detail = "not feature aligned: " + alignment.detail;
    return verdict;
  }
  verdict.image = image_full_subcategory(f).subcategory;
  const FinCategory& a = *verdict.image;

  // restrict tables and alignment isos to A
  std::vector<SetFunctor> restricted;
  std::vector<std::vector<Function>> forward(c.object_count());  // hom_B(Z, FX) → table[X](Z)
  std::vector<std::vector<Function>> backward(c.object_count());
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    restricted.push_back(restrict_to(m.table[x], verdict.image));
    for (ObjectIndex z = 0; z < a.object_count(); ++z) {
      const ObjectIndex zb = b.object(a.object_name(z));
      forward[x].push_back(alignment.witnesses[x].components[zb]);
      backward[x].push_back(invert(forward[x].back()));
    }
  }
  const auto pos = hom_positions(b);

  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    for (ObjectIndex y = 0; y < c.object_count(); ++y) {
      PairCorrespondence pair;
      pair.x = x;
      pair.y = y;
      pair.source_hom = c.hom(x, y).size();
      const auto nats = enumerate_nat_transformations(restricted[x], restricted[y], budget);
      pair.transformations = nats.size();

      std::vector<std::size_t> image;
      for (MorphismIndex g : c.hom(x, y)) {
        const MorphismIndex fg = f.morphism(g);
        std::vector<Function> comps(a.object_count());
        for (ObjectIndex z = 0; z < a.object_count(); ++z) {
          const ObjectIndex zb = b.object(a.object_name(z));
          const auto& into_x = b.hom(zb, f.object(x));
          for (std::size_t e = 0; e < restricted[x].value(z).size(); ++e) {
            const MorphismIndex u = into_x[backward[x][z][e]];
            comps[z].push_back(forward[y][z][pos[b.compose(fg, u)]]);
          }
        }
        auto it = std::find_if(nats.begin(), nats.end(),
                               [&](const NatTransformation& t) { return t.components == comps; });
        image.push_back(it == nats.end() ? nats.size() : static_cast<std::size_t>(it - nats.begin()));
      }
      std::vector<std::size_t> sorted = image;
      std::sort(sorted.begin(), sorted.end());
      const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      const bool all_found = std::none_of(image.begin(), image.end(),
                                          [&](std::size_t i) { return i == nats.size(); });
      if (distinct && all_found && image.size() == nats.size()) pair.bijection = std::move(image);

      if (pair.bijection.size() != pair.source_hom || pair.source_hom != pair.transformations) {
        if (!verdict.failure) {
          verdict.failure = pair;
          verdict.detail = "|hom(" + c.object_name(x) + ", " + c.object_name(y) + ")| = " +
                           std::to_string(pair.source_hom) + " but " + std::to_string(pair.transformations) +
                           " transformations over the image";
        }
      }
      verdict.pairs.push_back(std::move(pair));
    }
  }
  verdict.preserved = !verdict.failure.has_value();
  return verdict;
}

DecodeResult decode_object(const FeatureAlignedMap& m, ObjectIndex x, std::uint64_t budget) {
  const auto& b = m.functor.target_ptr();
  const SetFunctor& entry = m.table.at(x);
  DecodeResult out;
  std::optional<ObjectIndex> exact;
  for (ObjectIndex z = 0; z < b->object_count(); ++z) {
    const SetFunctor hz = yoneda_embed(b, z);
    if (hz == entry && !exact) exact = z;
    if (are_naturally_isomorphic(hz, entry, budget)) out.candidates.push_back(z);
  }
  if (out.candidates.empty()) {
    throw Error(ErrorKind::NoDecodableObject, {m.functor.source().object_name(x)},
                "table entry is not isomorphic to any Yoneda image");
  }
  out.exact = exact.has_value();
  out.object = exact.value_or(out.candidates.front());
  out.matches_functor = std::find(out.candidates.begin(), out.candidates.end(), m.functor.object(x)) !=
                        out.candidates.end();
  return out;
}

ChainVerdict check_chain(const ChainSpec& spec, std::uint64_t budget) {
  ChainVerdict verdict;
  const std::size_t n = spec.categories.size();
  if (n < 1 || spec.functors.size() + 1 != n) {
    throw Error(ErrorKind::InvalidArgument, {}, "a chain of n categories needs n-1 functors");
  }
  if (!spec.tables.empty() && spec.tables.size() != spec.functors.size()) {
    throw Error(ErrorKind::InvalidArgument, {}, "table overrides must be given per link");
  }
  auto mismatch = [&](std::size_t link, std::string detail) {
    verdict.failing_link = link;
    verdict.detail = "ChainMismatch(" + std::to_string(link) + "): " + std::move(detail);
    return verdict;
  };

  const CategoryPtr& first = spec.categories.front();
  // running composite, by name, and the composite feature table per B_1 object
  std::map<std::string, std::string> obj_map;
  std::map<std::string, std::string> mor_map;
  for (const auto& name : first->object_names()) obj_map[name] = name;
  for (const auto& m : first->morphisms()) mor_map[m.name] = m.name;
  std::vector<SetFunctor> features;

  SubcategoryWitness domain = full_subcategory(first, [&] {
    std::vector<ObjectIndex> all(first->object_count());
    for (ObjectIndex i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }());

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t link = i + 1;
    const CatFunctor& given = spec.functors[i];
    const CategoryPtr& next = spec.categories[i + 1];
    if (!(given.target() == *next)) return mismatch(link, "functor target is not the next category");

    std::optional<CatFunctor> restricted;
    if (given.source() == *domain.subcategory) {
      restricted = given;
    } else if (given.source() == *spec.categories[i]) {
      restricted = compose_functors(given, domain.inclusion);
    } else {
      return mismatch(link, "functor source is neither B_i nor the image subcategory A_i");
    }
    try {
      restricted = validate_functor(*restricted);
    } catch (const Error& e) {
      return mismatch(link, e.what());
    }
    const FunctorClass cls = classify_functor(*restricted);
    if (!cls.full || !cls.embedding) {
      return mismatch(link, std::string("not a full embedding (full=") + (cls.full ? "true" : "false") +
                                ", embedding=" + (cls.embedding ? "true" : "false") + ")");
    }
    FeatureAlignedMap aligned = (!spec.tables.empty() && spec.tables[i])
                                    ? FeatureAlignedMap{*restricted, *spec.tables[i]}
                                    : build_feature_aligned(*restricted);
    const GeneralizationVerdict gen = check_generalization(aligned, budget);
    if (!gen.preserved) return mismatch(link, gen.detail);

    // push the composite features through this link
    const CategoryPtr& a_i = restricted->source_ptr();
    for (ObjectIndex x = 0; x < first->object_count(); ++x) {
      if (i == 0) {
        features.push_back(aligned.table[x]);
        continue;
      }
      const SetFunctor current = restrict_to(features[x], a_i);
      std::optional<ObjectIndex> found;
      for (ObjectIndex z = 0; z < a_i->object_count() && !found; ++z) {
        if (yoneda_embed(a_i, z) == current) found = z;
      }
      for (ObjectIndex z = 0; z < a_i->object_count() && !found; ++z) {
        if (are_naturally_isomorphic(yoneda_embed(a_i, z), current, budget)) found = z;
      }
      if (!found) return mismatch(link, "composite feature of " + first->object_name(x) + " does not decode in A_i");
      features[x] = aligned.table[*found];
    }
    for (auto& [_, image] : obj_map) image = restricted->object_name(image);
    for (auto& [_, image] : mor_map) image = restricted->morphism_name(image);
    domain = image_full_subcategory(*restricted);
  }

  const CategoryPtr& last = spec.categories.back();
  CatFunctor composite = validate_functor(CatFunctor::from_names(first, last, obj_map, mor_map));
  if (n == 1) {
    for (ObjectIndex x = 0; x < first->object_count(); ++x) features.push_back(yoneda_embed(first, x));
  }
  FeatureAlignedMap end_to_end{composite, features};
  verdict.end_to_end = check_generalization(end_to_end, budget);
  verdict.composite = composite;

  verdict.decode_matches = true;
  for (ObjectIndex x = 0; x < first->object_count(); ++x) {
    const DecodeResult d = decode_object(end_to_end, x, budget);
    verdict.decoded.push_back(d.object);
    if (d.object != composite.object(x)) verdict.decode_matches = false;
  }
  if (spec.training_subset) {
    std::vector<bool> seen(last->object_count(), false);
    for (const auto& name : *spec.training_subset) seen[last->object(name)] = true;
    for (ObjectIndex x = 0; x < first->object_count(); ++x) {
      if (seen[composite.object(x)]) continue;
      verdict.creativity.push_back({x, composite.object(x), verdict.decoded[x]});
    }
  }

  verdict.preserved = verdict.end_to_end->preserved && verdict.decode_matches;
  if (!verdict.end_to_end->preserved) verdict.detail = "end to end: " + verdict.end_to_end->detail;
  else if (!verdict.decode_matches) verdict.detail = "end-to-end decode differs from the composite functor";
  return verdict;
}

}  // namespace catfm
