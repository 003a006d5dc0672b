#include "catfm/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace catfm {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, {where}, what);
}

void expect_object(const Json& j, const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected a JSON object");
}

void check_keys(const Json& j, const std::string& where, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  expect_object(j, where);
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    if (!j.contains(k)) parse_fail(where, std::string("missing key \"") + k + "\"");
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) parse_fail(where, "unknown key \"" + key + "\"");
  }
}

std::string get_string(const Json& j, const std::string& where) {
  if (!j.is_string()) parse_fail(where, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> get_strings(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(get_string(e, where));
  return out;
}

std::map<std::string, std::string> get_string_map(const Json& j, const std::string& where) {
  expect_object(j, where);
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = get_string(v, where + "." + k);
  return out;
}

Rational get_rational(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  parse_fail(where, "expected a rational as a \"p/q\" string or an integer");
}

Variance parse_variance(const Json& j) {
  const std::string v = get_string(j, "variance");
  if (v == "contravariant") return Variance::Contravariant;
  if (v == "covariant") return Variance::Covariant;
  parse_fail("variance", "expected \"contravariant\" or \"covariant\"");
}

fs::path resolve(const fs::path& base_dir, const std::string& ref) {
  const fs::path p(ref);
  return (p.is_absolute() ? p : base_dir / p).lexically_normal();
}

}  // namespace

// ---------------------------------------------------------------------------
// parsers

CategoryDescription parse_category(const Json& j) {
  check_keys(j, "category", {"objects"}, {"morphisms", "composition"});
  CategoryDescription d;
  d.objects = get_strings(j.at("objects"), "objects");
  if (j.contains("morphisms")) {
    if (!j["morphisms"].is_array()) parse_fail("morphisms", "expected an array");
    for (const auto& m : j["morphisms"]) {
      check_keys(m, "morphisms[]", {"name", "dom", "cod"});
      d.morphisms.push_back({get_string(m["name"], "name"), get_string(m["dom"], "dom"), get_string(m["cod"], "cod")});
    }
  }
  if (j.contains("composition")) {
    if (!j["composition"].is_array()) parse_fail("composition", "expected an array");
    for (const auto& c : j["composition"]) {
      check_keys(c, "composition[]", {"first", "then", "equals"});
      d.composition.push_back(
          {get_string(c["first"], "first"), get_string(c["then"], "then"), get_string(c["equals"], "equals")});
    }
  }
  return d;
}

SetFunctorDescription parse_set_functor_description(const Json& j) {
  check_keys(j, "presheaf", {"on_objects"}, {"base", "variance", "on_morphisms"});
  SetFunctorDescription d;
  if (j.contains("variance")) d.variance = parse_variance(j["variance"]);
  expect_object(j["on_objects"], "on_objects");
  for (const auto& [obj, values] : j["on_objects"].items()) {
    d.on_objects[obj] = get_strings(values, "on_objects." + obj);
  }
  if (j.contains("on_morphisms")) {
    expect_object(j["on_morphisms"], "on_morphisms");
    for (const auto& [mor, action] : j["on_morphisms"].items()) {
      d.on_morphisms[mor] = get_string_map(action, "on_morphisms." + mor);
    }
  }
  return d;
}

WeightedGraph parse_graph(const Json& j) {
  check_keys(j, "graph", {"nodes"}, {"edges", "allow_self_weights"});
  WeightedGraph g;
  g.nodes = get_strings(j["nodes"], "nodes");
  if (j.contains("allow_self_weights")) {
    if (!j["allow_self_weights"].is_boolean()) parse_fail("allow_self_weights", "expected a boolean");
    g.allow_self_weights = j["allow_self_weights"].get<bool>();
  }
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) parse_fail("edges", "expected an array");
    for (const auto& e : j["edges"]) {
      check_keys(e, "edges[]", {"x", "y", "weight"});
      const std::string x = get_string(e["x"], "x");
      const std::string y = get_string(e["y"], "y");
      const Rational w = get_rational(e["weight"], "weight");
      if (auto it = g.weights.find({y, x}); it != g.weights.end() && it->second != w) {
        throw Error(ErrorKind::InvalidArgument, {x, y}, "weights are not symmetric");
      }
      if (!g.weights.emplace(std::make_pair(x, y), w).second) parse_fail("edges", "duplicate edge " + x + "," + y);
    }
  }
  return g;
}

MaskSpec parse_mask_spec(const Json& j) {
  check_keys(j, "mask spec", {"full_objects"});
  if (!j["full_objects"].is_array()) parse_fail("full_objects", "expected an array");
  MaskSpec m;
  for (const auto& o : j["full_objects"]) {
    check_keys(o, "full_objects[]", {"name", "revealed", "mask"});
    m.full_objects.push_back(
        {get_string(o["name"], "name"), get_string(o["revealed"], "revealed"), get_string(o["mask"], "mask")});
  }
  return m;
}

MarkovLM parse_lm(const Json& j) {
  check_keys(j, "language model", {"tokens", "N", "next"});
  MarkovLM lm;
  lm.tokens = get_strings(j["tokens"], "tokens");
  if (!j["N"].is_number_unsigned()) parse_fail("N", "expected a positive integer");
  lm.window = j["N"].get<std::size_t>();
  expect_object(j["next"], "next");
  for (const auto& [sentence, dist] : j["next"].items()) {
    expect_object(dist, "next." + sentence);
    TokenDistribution nu;
    for (const auto& [token, p] : dist.items()) nu[token] = get_rational(p, "next." + sentence + "." + token);
    lm.next[parse_sentence(lm, sentence)] = std::move(nu);
  }
  validate_lm(lm);
  return lm;
}

DistObject parse_distribution(const MarkovLM& lm, const Json& j) {
  expect_object(j, "distribution");
  DistObject d;
  for (const auto& [sentence, p] : j.items()) d[parse_sentence(lm, sentence)] += get_rational(p, sentence);
  validate_distribution(lm, d);
  return d;
}

// ---------------------------------------------------------------------------
// serializers

Json to_json(const CategoryDescription& d) {
  Json j;
  j["objects"] = d.objects;
  j["morphisms"] = Json::array();
  for (const auto& m : d.morphisms) j["morphisms"].push_back({{"name", m.name}, {"dom", m.dom}, {"cod", m.cod}});
  j["composition"] = Json::array();
  for (const auto& c : d.composition) {
    j["composition"].push_back({{"first", c.first}, {"then", c.then}, {"equals", c.equals}});
  }
  return j;
}

Json to_json(const FinCategory& c) { return to_json(describe(c)); }

Json to_json(const CatFunctor& f) {
  Json j;
  j["source"] = to_json(f.source());
  j["target"] = to_json(f.target());
  j["on_objects"] = Json::object();
  for (ObjectIndex x = 0; x < f.source().object_count(); ++x) {
    j["on_objects"][f.source().object_name(x)] = f.target().object_name(f.object(x));
  }
  j["on_morphisms"] = Json::object();
  for (MorphismIndex m = 0; m < f.source().morphism_count(); ++m) {
    j["on_morphisms"][f.source().morphism(m).name] = f.target().morphism(f.morphism(m)).name;
  }
  return j;
}

Json to_json(const SetFunctor& f) {
  const SetFunctorDescription d = describe(f);
  Json j;
  j["base"] = to_json(f.base());
  j["variance"] = std::string(to_string(d.variance));
  j["on_objects"] = d.on_objects;
  j["on_morphisms"] = d.on_morphisms;
  return j;
}

Json to_json(const WeightedGraph& g) {
  Json j;
  j["nodes"] = g.nodes;
  j["allow_self_weights"] = g.allow_self_weights;
  j["edges"] = Json::array();
  for (const auto& [pair, w] : g.weights) {
    j["edges"].push_back({{"x", pair.first}, {"y", pair.second}, {"weight", format_rational(w)}});
  }
  return j;
}

Json to_json(const MarkovLM& lm) {
  Json j;
  j["tokens"] = lm.tokens;
  j["N"] = lm.window;
  j["next"] = Json::object();
  for (const auto& [s, nu] : lm.next) {
    Json dist = Json::object();
    for (const auto& [t, p] : nu) dist[t] = format_rational(p);
    j["next"][format_sentence(lm, s)] = dist;
  }
  return j;
}

Json distribution_to_json(const MarkovLM& lm, const DistObject& d) {
  Json j = Json::object();
  for (const auto& [s, p] : d) j[format_sentence(lm, s)] = format_rational(p);
  return j;
}

Json to_json(const Error& e) {
  return {{"kind", std::string(to_string(e.kind()))}, {"witnesses", e.witnesses()}, {"detail", e.detail()}};
}

Json read_json_file(const fs::path& path, std::string* raw) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, {path.string()}, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (raw) *raw = text;
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, {path.string()}, e.what());
  }
}

// ---------------------------------------------------------------------------
// loader

Json Loader::read(const fs::path& path) {
  std::string raw;
  Json j = read_json_file(path, &raw);
  files_[path.lexically_normal().string()] = std::move(raw);
  return j;
}

CategoryPtr Loader::category_file(const fs::path& path) {
  const std::string key = path.lexically_normal().string();
  if (auto it = categories_.find(key); it != categories_.end()) return it->second;
  const Json j = read(path);
  auto c = std::make_shared<const FinCategory>(validate_category(parse_category(j)));
  categories_.emplace(key, c);
  return c;
}

CategoryPtr Loader::category(const Json& ref, const fs::path& base_dir) {
  if (ref.is_string()) return category_file(resolve(base_dir, ref.get<std::string>()));
  return std::make_shared<const FinCategory>(validate_category(parse_category(ref)));
}

CatFunctor Loader::functor(const Json& ref, const fs::path& base_dir) {
  if (ref.is_string()) return functor_file(resolve(base_dir, ref.get<std::string>()));
  check_keys(ref, "functor", {"source", "target", "on_objects"}, {"on_morphisms"});
  CategoryPtr source = category(ref["source"], base_dir);
  CategoryPtr target = category(ref["target"], base_dir);
  const auto on_objects = get_string_map(ref["on_objects"], "on_objects");
  const auto on_morphisms =
      ref.contains("on_morphisms") ? get_string_map(ref["on_morphisms"], "on_morphisms") : std::map<std::string, std::string>{};
  return CatFunctor::from_names(source, target, on_objects, on_morphisms);
}

CatFunctor Loader::functor_file(const fs::path& path) {
  return functor(read(path), path.parent_path());
}

SetFunctor Loader::set_functor(const Json& ref, const fs::path& base_dir, CategoryPtr base) {
  if (ref.is_string()) return set_functor_file(resolve(base_dir, ref.get<std::string>()), std::move(base));
  const SetFunctorDescription d = parse_set_functor_description(ref);
  if (ref.contains("base")) {
    CategoryPtr declared = category(ref["base"], base_dir);
    if (base && !(*base == *declared)) {
      throw Error(ErrorKind::BaseMismatch, {}, "the task's base differs from the given category");
    }
    if (!base) base = declared;
  }
  if (!base) parse_fail("presheaf", "missing key \"base\"");
  return build_set_functor(base, d);
}

SetFunctor Loader::set_functor_file(const fs::path& path, CategoryPtr base) {
  return set_functor(read(path), path.parent_path(), std::move(base));
}

ChainSpec Loader::chain_file(const fs::path& path) {
  const Json j = read(path);
  const fs::path dir = path.parent_path();
  check_keys(j, "chain", {"categories", "functors"}, {"training_subset"});
  if (!j["categories"].is_array() || !j["functors"].is_array()) {
    parse_fail("chain", "\"categories\" and \"functors\" must be arrays");
  }
  ChainSpec spec;
  for (const auto& ref : j["categories"]) spec.categories.push_back(category(ref, dir));
  for (const auto& ref : j["functors"]) spec.functors.push_back(functor(ref, dir));
  if (j.contains("training_subset")) spec.training_subset = get_strings(j["training_subset"], "training_subset");
  return spec;
}

}  // namespace catfm
