#include "generators.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "catfm/error.hpp"
#include "catfm/pretext.hpp"

namespace catfm::fixtures {

CategoryPtr share(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

CategoryPtr arrow_category() {
  return share(validate_category(CategoryDescription{}.object("A").object("B").morphism("f", "A", "B")));
}

namespace {

CategoryPtr commuting_square() {
  CategoryDescription d;
  d.object("A").object("B").object("C").object("D");
  d.morphism("u", "A", "B").morphism("v", "A", "C").morphism("p", "B", "D").morphism("q", "C", "D");
  d.morphism("diag", "A", "D");
  d.composite("u", "p", "diag").composite("v", "q", "diag");
  return share(validate_category(d));
}

CategoryPtr idempotent_monoid() {
  CategoryDescription d;
  d.object("X").morphism("e", "X", "X").composite("e", "e", "e");
  return share(validate_category(d));
}

CategoryPtr involution() {
  CategoryDescription d;
  d.object("X").morphism("s", "X", "X").composite("s", "s", "id_X");
  return share(validate_category(d));
}

CategoryPtr parallel_pair() {
  CategoryDescription d;
  d.object("A").object("B").morphism("f", "A", "B").morphism("g", "A", "B");
  return share(validate_category(d));
}

CategoryPtr language_category() {
  MarkovLM lm;
  lm.tokens = {"a", "b"};
  lm.window = 2;
  lm.next[{"b", "a"}] = {{"a", Rational(1, 4)}, {"b", Rational(3, 4)}};
  lm.next[{"a", "b"}] = {{"a", Rational(1, 2)}, {"b", Rational(1, 2)}};
  lm.next[{"a", "a"}] = {{"a", Rational(1)}};
  lm.next[{"b", "b"}] = {{"b", Rational(1)}};
  return share(build_language_category(lm, {DistObject{{{"b", "a"}, Rational(1)}}}, 2).category);
}

}  // namespace

std::vector<CategoryPtr> random_categories(std::size_t count, std::uint64_t first_seed, std::size_t max_objects,
                                           std::size_t max_morphisms) {
  std::vector<CategoryPtr> out;
  for (std::uint64_t seed = first_seed; out.size() < count; ++seed) {
    try {
      out.push_back(share(generate_random_category(seed, max_objects, 2, max_morphisms)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
    }
  }
  return out;
}

std::vector<CategoryPtr> suite_categories() {
  std::vector<CategoryPtr> out{arrow_category(), commuting_square(), idempotent_monoid(), involution(),
                               parallel_pair(), share(build_rotation_category(1))};
  WeightedGraph g;
  g.nodes = {"x", "y", "z"};
  g.weights[{"x", "y"}] = Rational(1, 2);
  g.weights[{"y", "z"}] = Rational(1, 3);
  g.weights[{"x", "z"}] = Rational(1, 5);
  out.push_back(share(build_contrastive_category(g).category));
  MaskSpec m;
  m.full_objects = {{"img", "left", "right"}, {"img2", "left", "bottom"}, {"img3", "left", "right"}};
  out.push_back(share(build_masked_category(m)));
  out.push_back(language_category());
  for (auto& c : random_categories(4, 1, 3, 12)) out.push_back(std::move(c));
  return out;
}

SetFunctor random_set_functor(const CategoryPtr& c, Variance v, Rng& rng, std::size_t max_generators,
                              std::size_t max_merges) {
  const FinCategory& cat = *c;
  const std::size_t n = cat.object_count();
  std::uniform_int_distribution<std::size_t> gen_count(0, max_generators);
  std::uniform_int_distribution<std::size_t> pick_object(0, n - 1);
  const std::size_t k = n == 0 ? 0 : gen_count(rng);
  std::vector<ObjectIndex> generators;
  for (std::size_t i = 0; i < k; ++i) generators.push_back(pick_object(rng));

  // free part: element (generator, morphism) at an object
  struct Elem {
    std::size_t gen;
    MorphismIndex g;
    ObjectIndex at;
  };
  std::vector<Elem> elems;
  std::map<std::pair<std::size_t, MorphismIndex>, std::size_t> id_of;
  std::vector<std::vector<std::size_t>> at_object(n);
  for (ObjectIndex y = 0; y < n; ++y) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto& h = v == Variance::Contravariant ? cat.hom(y, generators[i]) : cat.hom(generators[i], y);
      for (MorphismIndex g : h) {
        id_of[{i, g}] = elems.size();
        at_object[y].push_back(elems.size());
        elems.push_back({i, g, y});
      }
    }
  }
  auto act = [&](MorphismIndex f, std::size_t e) {
    const MorphismIndex g = elems[e].g;
    const MorphismIndex moved = v == Variance::Contravariant ? cat.compose(g, f) : cat.compose(f, g);
    return id_of.at({elems[e].gen, moved});
  };

  // congruence closure by union-find
  std::vector<std::size_t> parent(elems.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::vector<std::pair<std::size_t, std::size_t>> work;
  std::uniform_int_distribution<std::size_t> merges(0, max_merges);
  for (std::size_t m = merges(rng); m > 0; --m) {
    const ObjectIndex y = pick_object(rng);
    if (at_object[y].size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, at_object[y].size() - 1);
    work.emplace_back(at_object[y][pick(rng)], at_object[y][pick(rng)]);
  }
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    const std::size_t ra = find(a), rb = find(b);
    if (ra == rb) continue;
    parent[std::max(ra, rb)] = std::min(ra, rb);
    const ObjectIndex y = elems[a].at;
    for (MorphismIndex f = 0; f < cat.morphism_count(); ++f) {
      const ObjectIndex src = v == Variance::Contravariant ? cat.morphism(f).cod : cat.morphism(f).dom;
      if (src == y) work.emplace_back(act(f, a), act(f, b));
    }
  }

  std::vector<FinSet> values(n);
  std::vector<std::size_t> position(elems.size());
  for (ObjectIndex y = 0; y < n; ++y) {
    std::vector<std::string> names;
    std::map<std::size_t, std::size_t> class_pos;
    for (std::size_t e : at_object[y]) {
      const std::size_t r = find(e);
      auto [it, fresh] = class_pos.emplace(r, names.size());
      if (fresh) names.push_back("k" + std::to_string(elems[r].gen) + ":" + cat.morphism(elems[r].g).name);
      position[e] = it->second;
    }
    values[y] = FinSet(std::move(names));
  }
  std::vector<Function> actions(cat.morphism_count());
  for (MorphismIndex f = 0; f < cat.morphism_count(); ++f) {
    const ObjectIndex src = v == Variance::Contravariant ? cat.morphism(f).cod : cat.morphism(f).dom;
    Function fn(values[src].size());
    for (std::size_t e : at_object[src]) fn[position[e]] = position[act(f, e)];
    actions[f] = std::move(fn);
  }
  SetFunctor out(c, v, std::move(values), std::move(actions));
  validate_set_functor(out);
  return out;
}

SetFunctor relabel(const SetFunctor& f, Rng& rng, const std::string& prefix) {
  const FinCategory& c = f.base();
  std::vector<std::vector<std::size_t>> perm(c.object_count());  // old index → new index
  std::vector<FinSet> values;
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    const std::size_t n = f.value(x).size();
    perm[x].resize(n);
    std::iota(perm[x].begin(), perm[x].end(), 0);
    std::shuffle(perm[x].begin(), perm[x].end(), rng);
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) {
      names[perm[x][i]] = prefix + std::to_string(x) + "_" + std::to_string(perm[x][i]);
    }
    values.emplace_back(std::move(names));
  }
  std::vector<Function> actions;
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    const ObjectIndex s = f.action_source(m), t = f.action_target(m);
    Function fn(f.value(s).size());
    for (std::size_t i = 0; i < fn.size(); ++i) fn[perm[s][i]] = perm[t][f.action(m)[i]];
    actions.push_back(std::move(fn));
  }
  return SetFunctor(f.base_ptr(), f.variance(), std::move(values), std::move(actions));
}

SetFunctor coproduct(const SetFunctor& a, const SetFunctor& b) {
  const FinCategory& c = a.base();
  std::vector<FinSet> values;
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    std::vector<std::string> names;
    for (const auto& e : a.value(x)) names.push_back("L:" + e);
    for (const auto& e : b.value(x)) names.push_back("R:" + e);
    values.emplace_back(std::move(names));
  }
  std::vector<Function> actions;
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    Function fn = a.action(m);
    const std::size_t offset = a.value(a.action_target(m)).size();
    for (std::size_t i : b.action(m)) fn.push_back(i + offset);
    actions.push_back(std::move(fn));
  }
  return SetFunctor(a.base_ptr(), a.variance(), std::move(values), std::move(actions));
}

SetFunctor constant_functor(const CategoryPtr& c, Variance v, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  Function id(n);
  std::iota(id.begin(), id.end(), 0);
  return SetFunctor(c, v, std::vector<FinSet>(c->object_count(), FinSet(names)),
                    std::vector<Function>(c->morphism_count(), id));
}

std::vector<NatTransformation> brute_force_nat(const SetFunctor& a, const SetFunctor& b) {
  const FinCategory& c = a.base();
  std::vector<std::pair<ObjectIndex, std::size_t>> positions;
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    for (std::size_t e = 0; e < a.value(x).size(); ++e) positions.emplace_back(x, e);
  }
  std::vector<NatTransformation> out;
  for (const auto& [x, _] : positions) {
    if (b.value(x).empty()) return out;
  }
  std::vector<std::size_t> digits(positions.size(), 0);
  while (true) {
    std::vector<Function> comps(c.object_count());
    for (ObjectIndex x = 0; x < c.object_count(); ++x) comps[x].assign(a.value(x).size(), 0);
    for (std::size_t p = 0; p < positions.size(); ++p) comps[positions[p].first][positions[p].second] = digits[p];
    bool natural = true;
    for (MorphismIndex m = 0; m < c.morphism_count() && natural; ++m) {
      const ObjectIndex s = a.action_source(m), t = a.action_target(m);
      for (std::size_t e = 0; e < a.value(s).size() && natural; ++e) {
        natural = comps[t][a.action(m)[e]] == b.action(m)[comps[s][e]];
      }
    }
    if (natural) out.push_back({nullptr, nullptr, comps});
    // odometer: last position least significant
    std::size_t p = positions.size();
    while (p > 0) {
      --p;
      if (++digits[p] < b.value(positions[p].first).size()) break;
      digits[p] = 0;
      if (p == 0) return out;
    }
    if (positions.empty()) return out;
  }
}

bool objects_isomorphic(const FinCategory& c, ObjectIndex x, ObjectIndex y) {
  for (MorphismIndex f : c.hom(x, y)) {
    for (MorphismIndex g : c.hom(y, x)) {
      if (c.compose(g, f) == c.identity(x) && c.compose(f, g) == c.identity(y)) return true;
    }
  }
  return false;
}

std::vector<std::size_t> size_vector(const SetFunctor& f) {
  std::vector<std::size_t> out;
  for (const auto& v : f.values()) out.push_back(v.size());
  return out;
}

}  // namespace catfm::fixtures
