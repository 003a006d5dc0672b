#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include <openssl/evp.h>

#include "catfm/extension.hpp"

namespace catfm::cli {

namespace {

Json names(const FinSet& s) { return s.elements(); }

std::string hom_element(const FinCategory& c, ObjectIndex x, ObjectIndex y, std::size_t i) {
  return c.morphism(c.hom(x, y)[i]).name;
}

bool is_budget(ErrorKind k) {
  return k == ErrorKind::BudgetExceeded || k == ErrorKind::EnumerationBudgetExceeded ||
         k == ErrorKind::ObjectBudgetExceeded;
}

using Body = std::function<void(Report&, Loader&)>;

Report run(const std::string& command, const Body& body) {
  Report r;
  r.command = command;
  Loader loader;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r, loader);
  } catch (const Error& e) {
    r.verdict = {{"status", "Error"}, {"error", to_json(e)}};
    r.exit_code = exit_code_for(e.kind());
    r.narration.push_back(std::string("error: ") + e.what());
  } catch (const std::exception& e) {
    r.verdict = {{"status", "Error"}, {"error", {{"kind", "InvalidArgument"}, {"witnesses", Json::array()}, {"detail", e.what()}}}};
    r.exit_code = kInputError;
    r.narration.push_back(std::string("error: ") + e.what());
  }
  r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  for (const auto& [path, bytes] : loader.files()) r.inputs[path] = sha256_hex(bytes);
  return r;
}

// ---------------------------------------------------------------------------
// verdict builders

Json prompt_verdict_json(const SetFunctor& task, const PromptVerdict& v, const Options& opt) {
  const FinCategory& c = task.base();
  Json j;
  if (v.solvable) {
    const auto& rep = *v.representation;
    const ObjectIndex p = rep.object;
    j["status"] = "Solvable";
    j["prompt"] = c.object_name(p);
    Json iso = Json::object();
    for (ObjectIndex y = 0; y < c.object_count(); ++y) {
      Json comp = Json::object();
      for (std::size_t i = 0; i < rep.iso.components[y].size(); ++i) {
        comp[hom_element(c, y, p, i)] = task.value(y)[rep.iso.components[y][i]];
      }
      iso[c.object_name(y)] = comp;
    }
    j["iso"] = iso;
    Json answers = Json::object();
    for (ObjectIndex x = 0; x < c.object_count(); ++x) {
      Json bij = Json::object();
      for (std::size_t i = 0; i < v.answers[x].size(); ++i) {
        bij[v.answers[x][i]] = task.value(x)[v.answer_to_task[x][i]];
      }
      answers[c.object_name(x)] = {{"answer", names(v.answers[x])}, {"to_task", bij}};
    }
    j["answers"] = answers;
    return j;
  }
  j["status"] = "Unsolvable";
  j["witnesses"] = Json::array();
  for (const auto& w : v.witnesses) {
    Json e;
    e["prompt"] = c.object_name(w.prompt);
    e["kind"] = w.kind == PromptWitness::Kind::Cardinality ? "cardinality" : "no_natural_iso";
    e["object"] = w.object ? Json(c.object_name(*w.object)) : Json(nullptr);
    e["prompt_size"] = w.prompt_size;
    e["task_size"] = w.task_size;
    e["rechecked"] = recheck_witness(task, w, opt.budget);
    j["witnesses"].push_back(e);
  }
  return j;
}

Json finetune_verdict_json(const SetFunctor& task, const FineTuningVerdict& v) {
  const FinCategory& c = task.base();
  Json objects = Json::object();
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    Json bij = Json::object();
    for (std::size_t a = 0; a < v.bijections[x].size(); ++a) {
      bij[task.value(x)[a]] = v.extension_values[x][v.bijections[x][a]];
    }
    objects[c.object_name(x)] = {
        {"task_value", names(task.value(x))}, {"extension_value", names(v.extension_values[x])}, {"bijection", bij}};
  }
  return {{"status", v.solved ? "Solved" : "Failed"}, {"objects", objects}, {"naturality_squares", v.naturality_squares}};
}

Json chain_verdict_json(const ChainSpec& spec, const ChainVerdict& v) {
  Json j;
  j["status"] = v.preserved ? "Preserved" : "Failed";
  j["failing_link"] = v.failing_link ? Json(*v.failing_link) : Json(nullptr);
  j["detail"] = v.detail;
  if (!v.composite) return j;
  const FinCategory& first = v.composite->source();
  const FinCategory& last = v.composite->target();
  Json on_objects = Json::object();
  for (ObjectIndex x = 0; x < first.object_count(); ++x) {
    on_objects[first.object_name(x)] = last.object_name(v.composite->object(x));
  }
  j["composite"] = on_objects;
  j["pairs"] = Json::array();
  for (const auto& p : v.end_to_end->pairs) {
    j["pairs"].push_back({{"x", first.object_name(p.x)},
                          {"y", first.object_name(p.y)},
                          {"hom", p.source_hom},
                          {"transformations", p.transformations},
                          {"bijection", !p.bijection.empty() || p.source_hom == 0}});
  }
  Json decode = Json::object();
  for (ObjectIndex x = 0; x < v.decoded.size(); ++x) {
    decode[first.object_name(x)] = {{"expected", last.object_name(v.composite->object(x))},
                                    {"decoded", last.object_name(v.decoded[x])}};
  }
  j["decode"] = decode;
  j["decode_matches"] = v.decode_matches;
  if (spec.training_subset) {
    j["training_subset"] = *spec.training_subset;
    j["creativity"] = Json::array();
    for (const auto& e : v.creativity) {
      j["creativity"].push_back({{"source", first.object_name(e.source_object)},
                                 {"expected", last.object_name(e.expected)},
                                 {"decoded", last.object_name(e.decoded)},
                                 {"recovered", e.expected == e.decoded}});
    }
  }
  return j;
}

Json category_summary(const FinCategory& c) {
  Json homs = Json::array();
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    for (ObjectIndex y = 0; y < c.object_count(); ++y) {
      if (c.hom(x, y).empty()) continue;
      homs.push_back({{"dom", c.object_name(x)}, {"cod", c.object_name(y)}, {"hom", names(hom_names(c, x, y))}});
    }
  }
  return {{"objects", c.object_names()}, {"morphism_count", c.morphism_count()}, {"homs", homs}};
}

// ---------------------------------------------------------------------------
// validate

Json validate_one(const std::string& path, Loader& loader, int& worst) {
  Json entry;
  entry["path"] = path;
  try {
    const Json doc = loader.read(path);
    const std::filesystem::path p(path);
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, {path}, "expected a JSON object");
    if (doc.contains("categories")) {
      entry["kind"] = "chain";
      const ChainSpec spec = loader.chain_file(p);
      for (const auto& f : spec.functors) validate_functor(f);
    } else if (doc.contains("objects")) {
      entry["kind"] = "category";
      const CategoryPtr c = loader.category_file(p);
      entry["objects"] = c->object_count();
      entry["morphisms"] = c->morphism_count();
    } else if (doc.contains("source")) {
      entry["kind"] = "functor";
      const CatFunctor f = validate_functor(loader.functor_file(p));
      const FunctorClass cls = classify_functor(f);
      entry["classification"] = {{"faithful", cls.faithful},
                                 {"full", cls.full},
                                 {"embedding", cls.embedding},
                                 {"injective_on_objects", cls.injective_on_objects}};
    } else if (doc.contains("on_objects")) {
      entry["kind"] = "presheaf";
      const SetFunctor f = loader.set_functor_file(p);
      validate_set_functor(f);
      entry["variance"] = std::string(to_string(f.variance()));
    } else if (doc.contains("tokens")) {
      entry["kind"] = "language_model";
      parse_lm(doc);
    } else if (doc.contains("nodes")) {
      entry["kind"] = "weighted_graph";
      build_contrastive_category(parse_graph(doc));
    } else if (doc.contains("full_objects")) {
      entry["kind"] = "mask_spec";
      build_masked_category(parse_mask_spec(doc));
    } else {
      throw Error(ErrorKind::ParseError, {path}, "unrecognized document");
    }
    entry["status"] = "valid";
  } catch (const Error& e) {
    entry["status"] = "invalid";
    entry["error"] = to_json(e);
    worst = std::max(worst, exit_code_for(e.kind()));
  }
  return entry;
}

// ---------------------------------------------------------------------------
// demos

void demo_rotation(Report& r, const Options& opt) {
  auto c = std::make_shared<const FinCategory>(build_rotation_category(1));
  SetFunctorDescription d;
  for (const auto& x : c->object_names()) d.on_objects[x] = {"class0", "class1"};
  for (const auto& m : c->morphisms()) d.on_morphisms[m.name] = {{"class0", "class0"}, {"class1", "class1"}};
  const SetFunctor task = build_set_functor(c, d);

  Json hom_into = Json::object();
  bool four = true;
  for (ObjectIndex x = 0; x < c->object_count(); ++x) {
    std::size_t total = 0;
    for (ObjectIndex y = 0; y < c->object_count(); ++y) total += c->hom(y, x).size();
    hom_into[c->object_name(x)] = total;
    four = four && total == 4;
  }
  const PromptVerdict v = check_prompt_theorem(task, opt.budget);
  r.narration.push_back("rotation groupoid: 4 objects, " + std::to_string(c->morphism_count()) + " morphisms");
  r.narration.push_back("two-class task with constant labels; prompt tuning is " +
                        std::string(v.solvable ? "able" : "unable") + " to solve it");
  r.verdict = {{"category", category_summary(*c)},
               {"hom_into", hom_into},
               {"task", to_json(task)["on_objects"]},
               {"prompt", prompt_verdict_json(task, v, opt)},
               {"status", !v.solvable && four ? "Reproduced" : "Failed"}};
  r.exit_code = !v.solvable && four ? kSuccess : kMathFailure;
}

void demo_contrastive(Report& r, const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> eighths(1, 7);
  WeightedGraph g;
  g.nodes = {"cat", "kitten", "car", "truck"};
  g.allow_self_weights = true;
  for (const auto& n : g.nodes) g.weights[{n, n}] = 1;
  g.weights[{"cat", "kitten"}] = Rational(eighths(rng), 8);
  g.weights[{"car", "truck"}] = Rational(eighths(rng), 8);

  const ContrastiveCategory cc = build_contrastive_category(g);
  Json weights = Json::object();
  for (const auto& [name, w] : cc.weights) weights[name] = format_rational(w);
  const RkhsFactorization rk = rkhs_factor(g, opt.tolerance);
  Json features = Json::object();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    std::vector<double> row(rk.features.cols());
    for (Eigen::Index k = 0; k < rk.features.cols(); ++k) row[k] = rk.features(i, k);
    features[g.nodes[i]] = row;
  }
  r.narration.push_back("similarity graph with two positive pairs; weights drawn with seed " + std::to_string(opt.seed));
  r.narration.push_back("kernel factors with gram error " + std::to_string(rk.max_gram_error));

  Eigen::Matrix2d swap;
  swap << 0, 1, 1, 0;
  Json rejected;
  try {
    rkhs_factor(swap, opt.tolerance);
    rejected = nullptr;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotPSD) throw;
    rejected = to_json(e);
  }
  r.narration.push_back("[[0,1],[1,0]] is rejected as not positive semidefinite");

  std::vector<double> eig(rk.eigenvalues.data(), rk.eigenvalues.data() + rk.eigenvalues.size());
  const bool ok = rk.max_gram_error <= opt.tolerance && !rejected.is_null();
  r.verdict = {{"graph", to_json(g)},
               {"category", category_summary(cc.category)},
               {"weights", weights},
               {"rkhs",
                {{"eigenvalues", eig},
                 {"features", features},
                 {"max_gram_error", rk.max_gram_error},
                 {"max_reproducing_error", rk.max_reproducing_error}}},
               {"non_psd_example", rejected},
               {"status", ok ? "Reproduced" : "Failed"}};
  r.exit_code = ok ? kSuccess : kMathFailure;
}

void demo_masked(Report& r) {
  MaskSpec m;
  m.full_objects = {{"photo_cat", "cat_top", "cat_bottom"},
                    {"photo_cat_side", "cat_top", "cat_left"},
                    {"sentence_1", "the_cat", "sat_down"}};
  const FinCategory c = build_masked_category(m);
  const MaskSpec back = recover_mask_spec(c);
  const bool lossless = back.full_objects == m.full_objects;
  r.narration.push_back("masked category over " + std::to_string(c.object_count()) + " parts");
  r.narration.push_back(std::string("round trip to (revealed, mask, full) triples is ") +
                        (lossless ? "lossless" : "lossy"));
  r.verdict = {{"category", category_summary(c)},
               {"round_trip_lossless", lossless},
               {"status", lossless ? "Reproduced" : "Failed"}};
  r.exit_code = lossless ? kSuccess : kMathFailure;
}

void demo_lm(Report& r) {
  MarkovLM lm;
  lm.tokens = {"a", "b"};
  lm.window = 2;
  lm.next[{"b", "a"}] = {{"a", Rational(1, 4)}, {"b", Rational(3, 4)}};
  lm.next[{"a", "b"}] = {{"a", Rational(1, 2)}, {"b", Rational(1, 2)}};
  lm.next[{"a", "a"}] = {{"a", Rational(1, 2)}, {"b", Rational(1, 2)}};
  lm.next[{"b", "b"}] = {{"a", Rational(1, 3)}, {"b", Rational(2, 3)}};
  validate_lm(lm);

  const DistObject point{{{"b", "a"}, Rational(1)}};
  const DistObject mixture{{{"b", "a"}, Rational(1, 2)}, {{"a", "b"}, Rational(1, 2)}};
  const DistObject point_next = canonical_successor(lm, point);
  const DistObject mixture_next = canonical_successor(lm, mixture);
  const DistObject expected{{{"a", "a"}, Rational(1, 8)},
                            {{"a", "b"}, Rational(3, 8)},
                            {{"b", "a"}, Rational(1, 4)},
                            {{"b", "b"}, Rational(1, 4)}};

  const LanguageCategory lc = build_language_category(lm, {point}, 2, kDefaultObjectBudget);
  Json objects = Json::object();
  for (std::size_t i = 0; i < lc.objects.size(); ++i) {
    objects[lc.category.object_name(i)] = distribution_to_json(lm, lc.objects[i]);
  }
  Json morphisms = Json::array();
  for (const auto& m : lc.category.morphisms()) {
    auto it = lc.labels.find(m.name);
    if (it == lc.labels.end()) continue;
    Json transitions = Json::array();
    for (const auto& t : it->second.transitions) {
      transitions.push_back({{"from", format_sentence(lm, t.from)},
                             {"token", t.token},
                             {"to", format_sentence(lm, t.to)},
                             {"probability", format_rational(t.probability)}});
    }
    morphisms.push_back({{"name", m.name},
                         {"dom", lc.category.object_name(m.dom)},
                         {"cod", lc.category.object_name(m.cod)},
                         {"steps", it->second.steps},
                         {"transitions", transitions}});
  }
  r.narration.push_back("successor of \"ba\": " + distribution_to_json(lm, point_next).dump());
  r.narration.push_back("successor of 1/2 ba + 1/2 ab: " + distribution_to_json(lm, mixture_next).dump());
  const bool ok = mixture_next == expected && total_mass(point_next) == 1 && total_mass(mixture_next) == 1;
  r.verdict = {{"lm", to_json(lm)},
               {"successor_of_point", distribution_to_json(lm, point_next)},
               {"successor_of_mixture", distribution_to_json(lm, mixture_next)},
               {"category", {{"objects", objects}, {"morphisms", morphisms}}},
               {"status", ok ? "Reproduced" : "Failed"}};
  r.exit_code = ok ? kSuccess : kMathFailure;
}

void demo_clip(Report& r, const Options& opt) {
  // captions: one orbit of four rotated descriptions; images: two orbits
  auto text = std::make_shared<const FinCategory>(build_rotation_category(1));
  auto images = std::make_shared<const FinCategory>(build_rotation_category(2));
  std::map<std::string, std::string> on_objects, on_morphisms;
  auto shift = [](std::string name) {
    name[1] = '1';  // I0.* → I1.*
    return name;
  };
  for (const auto& x : text->object_names()) on_objects[x] = shift(x);
  for (MorphismIndex m = 0; m < text->morphism_count(); ++m) {
    if (!text->is_identity(m)) on_morphisms[text->morphism(m).name] = shift(text->morphism(m).name);
  }
  ChainSpec spec;
  spec.categories = {text, images};
  spec.functors = {validate_functor(CatFunctor::from_names(text, images, on_objects, on_morphisms))};
  const std::string unseen = rotation_object(1, 270);
  spec.training_subset = std::vector<std::string>{};
  for (const auto& x : images->object_names()) {
    if (x != unseen) spec.training_subset->push_back(x);
  }
  const ChainVerdict v = check_chain(spec, opt.budget);
  bool recovered = !v.creativity.empty();
  for (const auto& e : v.creativity) recovered = recovered && e.expected == e.decoded;
  r.narration.push_back("caption groupoid embedded fully into the second orbit of the image groupoid");
  r.narration.push_back("image " + unseen + " is withheld from training; decode " +
                        (recovered ? "recovers it" : "misses it"));
  r.verdict = chain_verdict_json(spec, v);
  r.verdict["status"] = v.preserved && recovered ? "Reproduced" : "Failed";
  r.exit_code = v.preserved && recovered ? kSuccess : kMathFailure;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  if (is_budget(kind)) return kBudgetExceeded;
  if (kind == ErrorKind::ParseError || kind == ErrorKind::IoError || kind == ErrorKind::InvalidArgument) {
    return kInputError;
  }
  return kMathFailure;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::InternalError, {}, "sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Json Report::to_json(bool with_timing) const {
  Json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["verdict"] = verdict;
  j["exit_code"] = exit_code;
  if (with_timing) j["timing_ms"] = timing_ms;
  return j;
}

Report cmd_validate(const std::vector<std::string>& paths, const Options&) {
  return run("validate", [&](Report& r, Loader& loader) {
    if (paths.empty()) throw Error(ErrorKind::InvalidArgument, {}, "no files given");
    int worst = kSuccess;
    Json files = Json::array();
    for (const auto& p : paths) {
      files.push_back(validate_one(p, loader, worst));
      const Json& e = files.back();
      r.narration.push_back(p + ": " + e["status"].get<std::string>() +
                            (e.contains("error") ? " (" + e["error"]["kind"].get<std::string>() + ")" : ""));
    }
    r.verdict = {{"status", worst == kSuccess ? "valid" : "invalid"}, {"files", files}};
    r.exit_code = worst;
  });
}

Report cmd_prompt(const std::string& category_path, const std::string& task_path, const Options& opt) {
  return run("prompt", [&](Report& r, Loader& loader) {
    const CategoryPtr c = loader.category_file(category_path);
    const SetFunctor task = loader.set_functor_file(task_path, c);
    const PromptVerdict v = check_prompt_theorem(task, opt.budget);
    r.verdict = prompt_verdict_json(task, v, opt);
    r.exit_code = v.solvable ? kSuccess : kMathFailure;
    if (v.solvable) {
      r.narration.push_back("task is representable; prompt " + c->object_name(v.representation->object) + " solves it");
    } else {
      r.narration.push_back("task is not representable; no prompt solves it (" + std::to_string(v.witnesses.size()) +
                            " prompts refuted)");
    }
  });
}

Report cmd_finetune(const std::string& category_path, const std::string& task_path, const Options&) {
  return run("finetune", [&](Report& r, Loader& loader) {
    const CategoryPtr c = loader.category_file(category_path);
    const SetFunctor task = loader.set_functor_file(task_path, c);
    const FineTuningVerdict v = check_fine_tuning_theorem(task);
    r.verdict = finetune_verdict_json(task, v);
    r.exit_code = v.solved ? kSuccess : kMathFailure;
    r.narration.push_back(std::string("extension along the Yoneda embedding ") +
                          (v.solved ? "restricts to the task on every object" : "fails to restrict to the task"));
  });
}

Report cmd_chain(const std::string& chain_path, const Options& opt) {
  return run("chain", [&](Report& r, Loader& loader) {
    const ChainSpec spec = loader.chain_file(chain_path);
    const ChainVerdict v = check_chain(spec, opt.budget);
    r.verdict = chain_verdict_json(spec, v);
    r.exit_code = v.preserved ? kSuccess : kMathFailure;
    r.narration.push_back(v.preserved ? "structure of the first category is preserved end to end" : v.detail);
  });
}

Report cmd_demo(const std::string& name, const Options& opt) {
  return run("demo " + name, [&](Report& r, Loader&) {
    if (name == "rotation") demo_rotation(r, opt);
    else if (name == "contrastive") demo_contrastive(r, opt);
    else if (name == "masked") demo_masked(r);
    else if (name == "lm") demo_lm(r);
    else if (name == "clip-analog") demo_clip(r, opt);
    else throw Error(ErrorKind::InvalidArgument, {name}, "unknown demo");
  });
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "command: " << r.command << "\n";
  if (r.verdict.contains("status")) out << "status:  " << r.verdict["status"].get<std::string>() << "\n";
  out << "exit:    " << r.exit_code << "\n";
  for (const auto& [path, digest] : r.inputs) out << "input:   " << path << " sha256=" << digest << "\n";
  for (const auto& line : r.narration) out << "  " << line << "\n";
  out << r.verdict.dump(2) << "\n";
  return out.str();
}

}  // namespace catfm::cli
