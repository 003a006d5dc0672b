#include "catfm/category.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "catfm/error.hpp"

namespace catfm {

// ---------------------------------------------------------------------------
// FinSet

FinSet::FinSet(std::vector<std::string> elements) : elements_(std::move(elements)) {
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!index_.emplace(elements_[i], i).second) {
      throw Error(ErrorKind::DuplicateName, {elements_[i]}, "duplicate set element");
    }
  }
}

std::optional<std::size_t> FinSet::find(const std::string& element) const {
  auto it = index_.find(element);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool same_elements(const FinSet& a, const FinSet& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.begin(), a.end(), [&](const std::string& e) { return b.contains(e); });
}

// ---------------------------------------------------------------------------
// CategoryDescription

CategoryDescription& CategoryDescription::object(std::string name) {
  objects.push_back(std::move(name));
  return *this;
}

CategoryDescription& CategoryDescription::morphism(std::string name, std::string dom,
                                                   std::string cod) {
  morphisms.push_back({std::move(name), std::move(dom), std::move(cod)});
  return *this;
}

CategoryDescription& CategoryDescription::composite(std::string first, std::string then,
                                                    std::string equals) {
  composition.push_back({std::move(first), std::move(then), std::move(equals)});
  return *this;
}

std::string identity_name(const std::string& object) { return "id_" + object; }

// ---------------------------------------------------------------------------
// FinCategory

std::optional<ObjectIndex> FinCategory::find_object(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorphismIndex> FinCategory::find_morphism(const std::string& name) const {
  auto it = morphism_index_.find(name);
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

ObjectIndex FinCategory::object(const std::string& name) const {
  if (auto x = find_object(name)) return *x;
  throw Error(ErrorKind::UnknownObject, {name});
}

MorphismIndex FinCategory::morphism_named(const std::string& name) const {
  if (auto f = find_morphism(name)) return *f;
  throw Error(ErrorKind::UnknownMorphism, {name});
}

MorphismIndex FinCategory::compose(MorphismIndex then, MorphismIndex first) const {
  if (!composable(then, first)) {
    throw Error(ErrorKind::CompositionUndefined, {morphisms_[then].name, morphisms_[first].name},
                "codomain of the first does not match domain of the second");
  }
  return after_[first][outgoing_position_[then]];
}

void FinCategory::index_structure() {
  const std::size_t n = objects_.size();
  object_index_.clear();
  for (std::size_t i = 0; i < n; ++i) object_index_.emplace(objects_[i], i);
  morphism_index_.clear();
  for (std::size_t i = 0; i < morphisms_.size(); ++i) morphism_index_.emplace(morphisms_[i].name, i);

  hom_.assign(n * n, {});
  outgoing_.assign(n, {});
  incoming_.assign(n, {});
  outgoing_position_.assign(morphisms_.size(), 0);
  for (MorphismIndex f = 0; f < morphisms_.size(); ++f) {
    const auto& m = morphisms_[f];
    hom_[m.dom * n + m.cod].push_back(f);
    outgoing_position_[f] = outgoing_[m.dom].size();
    outgoing_[m.dom].push_back(f);
    incoming_[m.cod].push_back(f);
  }
}

bool operator==(const FinCategory& a, const FinCategory& b) {
  if (a.objects_ != b.objects_ || a.morphisms_ != b.morphisms_ || a.identities_ != b.identities_) {
    return false;
  }
  return a.after_ == b.after_;
}

// ---------------------------------------------------------------------------
// validation

FinCategory validate_category(const CategoryDescription& raw) {
  FinCategory c;

  std::unordered_map<std::string, ObjectIndex> objects;
  for (const auto& name : raw.objects) {
    if (name.empty()) throw Error(ErrorKind::DanglingReference, {"<empty>"}, "empty object name");
    if (!objects.emplace(name, objects.size()).second) {
      throw Error(ErrorKind::DuplicateName, {name}, "object declared twice");
    }
  }
  c.objects_ = raw.objects;

  std::unordered_map<std::string, MorphismIndex> declared;
  for (const auto& m : raw.morphisms) {
    if (m.name.empty()) throw Error(ErrorKind::DanglingReference, {"<empty>"}, "empty morphism name");
    if (!declared.emplace(m.name, declared.size()).second) {
      throw Error(ErrorKind::DuplicateName, {m.name}, "morphism declared twice");
    }
    if (!objects.count(m.dom)) throw Error(ErrorKind::DanglingReference, {m.name, m.dom}, "unknown domain");
    if (!objects.count(m.cod)) throw Error(ErrorKind::DanglingReference, {m.name, m.cod}, "unknown codomain");
  }

  // Auto-generated identities come first, in object order; declared
  // morphisms keep their input order after them.
  for (const auto& x : raw.objects) {
    const std::string id = identity_name(x);
    auto it = declared.find(id);
    if (it != declared.end()) {
      const auto& m = raw.morphisms[it->second];
      if (m.dom != x || m.cod != x) {
        throw Error(ErrorKind::MissingIdentity, {x},
                    "morphism " + id + " is declared " + m.dom + " -> " + m.cod);
      }
      continue;
    }
    c.morphisms_.push_back({id, objects.at(x), objects.at(x)});
  }
  for (const auto& m : raw.morphisms) {
    c.morphisms_.push_back({m.name, objects.at(m.dom), objects.at(m.cod)});
  }
  c.index_structure();

  c.identities_.resize(c.objects_.size());
  for (ObjectIndex x = 0; x < c.objects_.size(); ++x) {
    c.identities_[x] = c.morphism_index_.at(identity_name(c.objects_[x]));
  }

  constexpr MorphismIndex kUnset = static_cast<MorphismIndex>(-1);
  c.after_.assign(c.morphisms_.size(), {});
  for (MorphismIndex f = 0; f < c.morphisms_.size(); ++f) {
    c.after_[f].assign(c.outgoing_[c.morphisms_[f].cod].size(), kUnset);
  }

  auto lookup = [&](const std::string& name) -> MorphismIndex {
    auto it = c.morphism_index_.find(name);
    if (it == c.morphism_index_.end()) {
      throw Error(ErrorKind::DanglingReference, {name}, "unknown morphism in composition table");
    }
    return it->second;
  };

  for (const auto& decl : raw.composition) {
    const MorphismIndex first = lookup(decl.first);
    const MorphismIndex then = lookup(decl.then);
    const MorphismIndex eq = lookup(decl.equals);
    const auto& mf = c.morphisms_[first];
    const auto& mt = c.morphisms_[then];
    const auto& me = c.morphisms_[eq];
    if (mf.cod != mt.dom) {
      throw Error(ErrorKind::CompositionUndefined, {decl.then, decl.first},
                  "composite declared for a non-composable pair");
    }
    if (me.dom != mf.dom || me.cod != mt.cod) {
      throw Error(ErrorKind::CompositeHomMismatch, {decl.then, decl.first, decl.equals},
                  "composite lands outside hom(" + c.objects_[mf.dom] + ", " + c.objects_[mt.cod] + ")");
    }
    auto& slot = c.after_[first][c.outgoing_position_[then]];
    if (slot != kUnset && slot != eq) {
      throw Error(ErrorKind::CompositeHomMismatch, {decl.then, decl.first},
                  "composite declared twice with different results");
    }
    slot = eq;
  }

  // Unit laws fill whatever was left undeclared.
  for (MorphismIndex f = 0; f < c.morphisms_.size(); ++f) {
    const auto& m = c.morphisms_[f];
    auto& left = c.after_[f][c.outgoing_position_[c.identities_[m.cod]]];
    if (left == kUnset) left = f;
    auto& right = c.after_[c.identities_[m.dom]][c.outgoing_position_[f]];
    if (right == kUnset) right = f;
  }

  for (MorphismIndex f = 0; f < c.morphisms_.size(); ++f) {
    const auto& out = c.outgoing_[c.morphisms_[f].cod];
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (c.after_[f][k] == kUnset) {
        throw Error(ErrorKind::CompositionUndefined, {c.morphisms_[out[k]].name, c.morphisms_[f].name});
      }
    }
  }

  for (MorphismIndex f = 0; f < c.morphisms_.size(); ++f) {
    const auto& m = c.morphisms_[f];
    if (c.compose(c.identities_[m.cod], f) != f || c.compose(f, c.identities_[m.dom]) != f) {
      throw Error(ErrorKind::UnitLawViolation, {m.name});
    }
  }

  for (MorphismIndex f = 0; f < c.morphisms_.size(); ++f) {
    for (MorphismIndex g : c.outgoing_[c.morphisms_[f].cod]) {
      const MorphismIndex gf = c.compose(g, f);
      for (MorphismIndex h : c.outgoing_[c.morphisms_[g].cod]) {
        if (c.compose(h, gf) != c.compose(c.compose(h, g), f)) {
          throw Error(ErrorKind::AssociativityViolation,
                      {c.morphisms_[h].name, c.morphisms_[g].name, c.morphisms_[f].name});
        }
      }
    }
  }
  return c;
}

CategoryDescription describe(const FinCategory& c) {
  CategoryDescription d;
  d.objects = c.object_names();
  for (const auto& m : c.morphisms()) {
    d.morphisms.push_back({m.name, c.object_name(m.dom), c.object_name(m.cod)});
  }
  for (MorphismIndex f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    for (MorphismIndex g : c.outgoing(c.morphism(f).cod)) {
      if (c.is_identity(g)) continue;
      d.composition.push_back({c.morphism(f).name, c.morphism(g).name, c.morphism(c.compose(g, f)).name});
    }
  }
  return d;
}

FinSet hom(const FinCategory& c, const std::string& x, const std::string& y) {
  return hom_names(c, c.object(x), c.object(y));
}

FinSet hom_names(const FinCategory& c, ObjectIndex x, ObjectIndex y) {
  std::vector<std::string> names;
  for (MorphismIndex f : c.hom(x, y)) names.push_back(c.morphism(f).name);
  return FinSet(std::move(names));
}

std::vector<std::size_t> hom_positions(const FinCategory& c) {
  std::vector<std::size_t> pos(c.morphism_count());
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    for (ObjectIndex y = 0; y < c.object_count(); ++y) {
      const auto& h = c.hom(x, y);
      for (std::size_t i = 0; i < h.size(); ++i) pos[h[i]] = i;
    }
  }
  return pos;
}

FinCategory opposite(const FinCategory& c) {
  FinCategory op;
  op.objects_ = c.objects_;
  op.morphisms_ = c.morphisms_;
  for (auto& m : op.morphisms_) std::swap(m.dom, m.cod);
  op.identities_ = c.identities_;
  op.index_structure();
  op.after_.assign(op.morphisms_.size(), {});
  for (MorphismIndex f = 0; f < op.morphisms_.size(); ++f) {
    const auto& out = op.outgoing_[op.morphisms_[f].cod];
    op.after_[f].reserve(out.size());
    // g ∘op f = f ∘ g
    for (MorphismIndex g : out) op.after_[f].push_back(c.compose(f, g));
  }
  return op;
}

// ---------------------------------------------------------------------------
// random generation

namespace {

struct Arrow {
  ObjectIndex dom;
  ObjectIndex cod;
  std::vector<std::uint8_t> table;  // function dom-set -> cod-set

  auto key() const { return std::tie(dom, cod, table); }
  friend bool operator<(const Arrow& a, const Arrow& b) { return a.key() < b.key(); }
};

Arrow after(const Arrow& then, const Arrow& first) {
  Arrow out{first.dom, then.cod, {}};
  out.table.reserve(first.table.size());
  for (std::uint8_t v : first.table) out.table.push_back(then.table[v]);
  return out;
}

}  // namespace

FinCategory generate_random_category(std::uint64_t seed, std::size_t max_objects,
                                     std::size_t max_hom, std::size_t morphism_cap) {
  if (max_objects == 0) {
    throw Error(ErrorKind::InvalidArgument, {}, "max_objects must be at least 1");
  }
  std::mt19937_64 rng(seed);
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  const std::size_t n = 1 + below(max_objects);
  std::vector<std::size_t> carrier(n);
  for (auto& s : carrier) s = 1 + below(3);

  CategoryDescription desc;
  for (std::size_t i = 0; i < n; ++i) desc.object("O" + std::to_string(i));

  std::vector<Arrow> arrows;
  std::vector<std::string> names;
  std::map<Arrow, MorphismIndex> known;
  std::deque<MorphismIndex> pending;

  auto admit = [&](Arrow a, std::string name) {
    if (known.count(a)) return;
    if (arrows.size() >= morphism_cap) {
      throw Error(ErrorKind::BudgetExceeded, {std::to_string(morphism_cap)},
                  "composition closure exceeds the morphism cap");
    }
    known.emplace(a, arrows.size());
    pending.push_back(arrows.size());
    arrows.push_back(std::move(a));
    names.push_back(std::move(name));
  };

  for (ObjectIndex x = 0; x < n; ++x) {
    Arrow id{x, x, {}};
    for (std::size_t i = 0; i < carrier[x]; ++i) id.table.push_back(static_cast<std::uint8_t>(i));
    admit(std::move(id), identity_name(desc.objects[x]));
  }

  std::size_t generator = 0;
  if (max_hom > 0) {
    for (ObjectIndex x = 0; x < n; ++x) {
      for (ObjectIndex y = 0; y < n; ++y) {
        std::size_t edges = below(max_hom + 1);
        // Endomorphism generators blow up quickly; keep them rarer.
        if (x == y && below(2) == 0) edges = 0;
        for (std::size_t e = 0; e < edges; ++e) {
          Arrow a{x, y, {}};
          for (std::size_t i = 0; i < carrier[x]; ++i) {
            a.table.push_back(static_cast<std::uint8_t>(below(carrier[y])));
          }
          admit(std::move(a), "g" + std::to_string(generator++));
        }
      }
    }
  }

  while (!pending.empty()) {
    const MorphismIndex m = pending.front();
    pending.pop_front();
    const std::size_t known_now = arrows.size();
    for (MorphismIndex other = 0; other < known_now; ++other) {
      if (arrows[other].dom == arrows[m].cod) {
        Arrow a = after(arrows[other], arrows[m]);
        std::string name = names[other] + "." + names[m];
        admit(std::move(a), std::move(name));
      }
      if (arrows[other].cod == arrows[m].dom) {
        Arrow a = after(arrows[m], arrows[other]);
        std::string name = names[m] + "." + names[other];
        admit(std::move(a), std::move(name));
      }
    }
  }

  for (MorphismIndex i = n; i < arrows.size(); ++i) {
    desc.morphism(names[i], desc.objects[arrows[i].dom], desc.objects[arrows[i].cod]);
  }
  for (MorphismIndex f = 0; f < arrows.size(); ++f) {
    for (MorphismIndex g = 0; g < arrows.size(); ++g) {
      if (arrows[g].dom != arrows[f].cod || f < n || g < n) continue;
      desc.composite(names[f], names[g], names[known.at(after(arrows[g], arrows[f]))]);
    }
  }
  return validate_category(desc);
}

}  // namespace catfm
