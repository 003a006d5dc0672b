#include "catfm/pretext.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <set>

#include <Eigen/Eigenvalues>

#include "catfm/error.hpp"

namespace catfm {

// ---------------------------------------------------------------------------
// rotation

namespace {

constexpr int kAngles[] = {0, 90, 180, 270};

std::string rotation_morphism(std::size_t image, int by, int from) {
  return "I" + std::to_string(image) + ".rot" + std::to_string(by) + "@" + std::to_string(from);
}

}  // namespace

std::string rotation_object(std::size_t image, int degrees) {
  return "I" + std::to_string(image) + ".R" + std::to_string(degrees);
}

FinCategory build_rotation_category(std::size_t n_base_images) {
  if (n_base_images == 0) throw Error(ErrorKind::InvalidArgument, {}, "need at least one base image");
  CategoryDescription desc;
  for (std::size_t i = 0; i < n_base_images; ++i) {
    for (int d : kAngles) desc.object(rotation_object(i, d));
  }
  for (std::size_t i = 0; i < n_base_images; ++i) {
    for (int d : kAngles) {
      for (int by : {90, 180, 270}) {
        desc.morphism(rotation_morphism(i, by, d), rotation_object(i, d), rotation_object(i, (d + by) % 360));
      }
    }
  }
  for (std::size_t i = 0; i < n_base_images; ++i) {
    for (int d : kAngles) {
      for (int a : {90, 180, 270}) {
        for (int b : {90, 180, 270}) {
          const int total = (a + b) % 360;
          const std::string composite =
              total == 0 ? identity_name(rotation_object(i, d)) : rotation_morphism(i, total, d);
          desc.composite(rotation_morphism(i, a, d), rotation_morphism(i, b, (d + a) % 360), composite);
        }
      }
    }
  }
  return validate_category(desc);
}

// ---------------------------------------------------------------------------
// contrastive

Rational WeightedGraph::weight(const std::string& x, const std::string& y) const {
  if (std::find(nodes.begin(), nodes.end(), x) == nodes.end()) throw Error(ErrorKind::UnknownObject, {x});
  if (std::find(nodes.begin(), nodes.end(), y) == nodes.end()) throw Error(ErrorKind::UnknownObject, {y});
  if (auto it = weights.find({x, y}); it != weights.end()) return it->second;
  if (auto it = weights.find({y, x}); it != weights.end()) return it->second;
  return Rational(0);
}

void validate_graph(const WeightedGraph& g) {
  std::set<std::string> seen;
  for (const auto& n : g.nodes) {
    if (!seen.insert(n).second) throw Error(ErrorKind::InvalidArgument, {n}, "duplicate node");
  }
  for (const auto& [pair, w] : g.weights) {
    const auto& [x, y] = pair;
    if (!seen.count(x) || !seen.count(y)) throw Error(ErrorKind::InvalidArgument, {x, y}, "edge on unknown node");
    if (w < 0) throw Error(ErrorKind::InvalidArgument, {x, y}, "negative weight");
    if (x == y && w != 0 && !g.allow_self_weights) {
      throw Error(ErrorKind::InvalidArgument, {x}, "self weight present but not allowed");
    }
    if (auto rev = g.weights.find({y, x}); rev != g.weights.end() && rev->second != w) {
      throw Error(ErrorKind::InvalidArgument, {x, y}, "weights are not symmetric");
    }
  }
}

ContrastiveCategory build_contrastive_category(const WeightedGraph& g) {
  validate_graph(g);
  const auto& nodes = g.nodes;
  auto linked = [&](const std::string& x, const std::string& y) { return x != y && g.weight(x, y) > 0; };
  auto edge_name = [](const std::string& x, const std::string& y) { return x + "~" + y; };

  for (const auto& x : nodes) {
    for (const auto& y : nodes) {
      for (const auto& z : nodes) {
        if (x != z && linked(x, y) && linked(y, z) && !linked(x, z)) {
          throw Error(ErrorKind::ComposabilityConflict, {edge_name(y, z), edge_name(x, y)},
                      "composite " + x + " -> " + z + " is forced but hom(" + x + ", " + z + ") is empty");
        }
      }
    }
  }

  ContrastiveCategory out;
  CategoryDescription desc;
  for (const auto& x : nodes) desc.object(x);
  for (const auto& x : nodes) {
    for (const auto& y : nodes) {
      if (!linked(x, y)) continue;
      desc.morphism(edge_name(x, y), x, y);
      out.weights[edge_name(x, y)] = g.weight(x, y);
    }
  }
  for (const auto& x : nodes) {
    for (const auto& y : nodes) {
      if (!linked(x, y)) continue;
      for (const auto& z : nodes) {
        if (!linked(y, z)) continue;
        desc.composite(edge_name(x, y), edge_name(y, z), x == z ? identity_name(x) : edge_name(x, z));
      }
    }
  }
  for (const auto& x : nodes) out.weights[identity_name(x)] = g.weight(x, x);
  out.category = validate_category(desc);
  return out;
}

Eigen::MatrixXd weight_matrix(const WeightedGraph& g) {
  validate_graph(g);
  const auto n = static_cast<Eigen::Index>(g.nodes.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) k(i, j) = to_double(g.weight(g.nodes[i], g.nodes[j]));
  }
  return k;
}

namespace {
constexpr double kRelativeRankCutoff = 1e-12;
}  // namespace

RkhsFactorization rkhs_factor(const Eigen::MatrixXd& kernel, double tolerance) {
  if (kernel.rows() != kernel.cols()) throw Error(ErrorKind::InvalidArgument, {}, "kernel matrix is not square");
  const auto n = kernel.rows();
  if (n > 0 && (kernel - kernel.transpose()).cwiseAbs().maxCoeff() > tolerance) {
    throw Error(ErrorKind::InvalidArgument, {}, "kernel matrix is not symmetric");
  }
  RkhsFactorization out;
  if (n == 0) return out;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kernel);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::InternalError, {}, "eigendecomposition failed");
  out.eigenvalues = solver.eigenvalues();
  const double lambda_min = out.eigenvalues.minCoeff();
  if (lambda_min < -tolerance) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", lambda_min);
    throw Error(ErrorKind::NotPSD, {buf});
  }

  const Eigen::MatrixXd& u = solver.eigenvectors();
  const Eigen::VectorXd root = out.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  out.features = u * root.asDiagonal();
  out.max_gram_error = (out.features * out.features.transpose() - kernel).cwiseAbs().maxCoeff();

  // Representers k(., x) are the columns of K. Their coordinates in H are
  // recovered from the values alone (least squares against the features), so
  // the H inner products are computed independently of the Gram check.
  // Eigenvalues at rounding-noise level count as zero.
  const double cutoff = kRelativeRankCutoff * std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
  Eigen::VectorXd inv_root(n);
  for (Eigen::Index i = 0; i < n; ++i) inv_root(i) = out.eigenvalues(i) > cutoff ? 1.0 / root(i) : 0.0;
  const Eigen::MatrixXd coords = inv_root.asDiagonal() * (u.transpose() * kernel);
  out.max_reproducing_error = (coords.transpose() * coords - kernel).cwiseAbs().maxCoeff();

  if (out.max_gram_error > tolerance || out.max_reproducing_error > tolerance) {
    throw Error(ErrorKind::InternalError, {}, "factorization misses the requested tolerance");
  }
  return out;
}

RkhsFactorization rkhs_factor(const WeightedGraph& g, double tolerance) {
  return rkhs_factor(weight_matrix(g), tolerance);
}

// ---------------------------------------------------------------------------
// masked modeling

FinCategory build_masked_category(const MaskSpec& m) {
  enum Role { kRevealed = 1, kMask = 2 };
  std::vector<std::string> parts;
  std::map<std::string, int> roles;
  auto note = [&](const std::string& part, Role role) {
    auto [it, inserted] = roles.emplace(part, 0);
    if (inserted) parts.push_back(part);
    it->second |= role;
    if (it->second == (kRevealed | kMask)) {
      throw Error(ErrorKind::ComposabilityConflict, {part},
                  "part is both a revealed part and a mask; composites through it are undefined");
    }
  };
  for (const auto& obj : m.full_objects) {
    note(obj.revealed, kRevealed);
    note(obj.mask, kMask);
  }
  CategoryDescription desc;
  for (const auto& p : parts) desc.object(p);
  for (const auto& obj : m.full_objects) desc.morphism(obj.name, obj.revealed, obj.mask);
  return validate_category(desc);
}

MaskSpec recover_mask_spec(const FinCategory& c) {
  MaskSpec out;
  for (MorphismIndex f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    const auto& m = c.morphism(f);
    out.full_objects.push_back({m.name, c.object_name(m.dom), c.object_name(m.cod)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// language models

namespace {

bool single_char_tokens(const MarkovLM& lm) {
  return std::all_of(lm.tokens.begin(), lm.tokens.end(), [](const std::string& t) { return t.size() == 1; });
}

}  // namespace

std::string format_sentence(const MarkovLM& lm, const Sentence& s) {
  const std::string sep = single_char_tokens(lm) ? "" : " ";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += sep;
    out += s[i];
  }
  return out;
}

Sentence parse_sentence(const MarkovLM& lm, const std::string& text) {
  Sentence s;
  if (single_char_tokens(lm) && text.find(' ') == std::string::npos) {
    for (char ch : text) s.emplace_back(1, ch);
    return s;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t space = text.find(' ', start);
    const std::size_t end = space == std::string::npos ? text.size() : space;
    if (end > start) s.push_back(text.substr(start, end - start));
    if (space == std::string::npos) break;
    start = space + 1;
  }
  return s;
}

void validate_lm(const MarkovLM& lm) {
  if (lm.window == 0) throw Error(ErrorKind::InvalidDistribution, {}, "window must be positive");
  std::set<std::string> alphabet(lm.tokens.begin(), lm.tokens.end());
  if (alphabet.size() != lm.tokens.size() || alphabet.empty()) {
    throw Error(ErrorKind::InvalidDistribution, {}, "token alphabet must be non-empty and duplicate free");
  }
  for (const auto& [sentence, dist] : lm.next) {
    const std::string name = format_sentence(lm, sentence);
    if (sentence.size() != lm.window) throw Error(ErrorKind::InvalidDistribution, {name}, "sentence length differs from the window");
    for (const auto& t : sentence) {
      if (!alphabet.count(t)) throw Error(ErrorKind::InvalidDistribution, {name, t}, "unknown token");
    }
    Rational mass = 0;
    for (const auto& [t, p] : dist) {
      if (!alphabet.count(t)) throw Error(ErrorKind::InvalidDistribution, {name, t}, "unknown token");
      if (p < 0) throw Error(ErrorKind::InvalidDistribution, {name, t}, "negative probability");
      mass += p;
    }
    if (mass != 1) {
      throw Error(ErrorKind::InvalidDistribution, {name}, "next-token mass is " + format_rational(mass));
    }
  }
}

Rational total_mass(const DistObject& d) {
  Rational mass = 0;
  for (const auto& [_, p] : d) mass += p;
  return mass;
}

void validate_distribution(const MarkovLM& lm, const DistObject& d) {
  if (d.empty()) throw Error(ErrorKind::InvalidDistribution, {}, "empty support");
  for (const auto& [s, p] : d) {
    if (s.size() != lm.window) {
      throw Error(ErrorKind::InvalidDistribution, {format_sentence(lm, s)}, "sentence length differs from the window");
    }
    if (p <= 0) throw Error(ErrorKind::InvalidDistribution, {format_sentence(lm, s)}, "support weight must be positive");
  }
  const Rational mass = total_mass(d);
  if (mass != 1) throw Error(ErrorKind::InvalidDistribution, {}, "total mass is " + format_rational(mass));
}

DistObject canonical_successor(const MarkovLM& lm, const DistObject& z) {
  validate_distribution(lm, z);
  DistObject out;
  for (const auto& [s, mu] : z) {
    auto it = lm.next.find(s);
    if (it == lm.next.end()) {
      throw Error(ErrorKind::InvalidDistribution, {format_sentence(lm, s)}, "no next-token distribution");
    }
    for (const auto& [token, p] : it->second) {
      if (p == 0) continue;
      Sentence shifted(s.begin() + 1, s.end());
      shifted.push_back(token);
      out[shifted] += mu * p;
    }
  }
  return out;
}

LanguageCategory build_language_category(const MarkovLM& lm, const std::vector<DistObject>& seeds,
                                         std::size_t depth, std::size_t object_budget) {
  validate_lm(lm);
  LanguageCategory out;
  std::map<DistObject, std::size_t> index;
  std::vector<std::optional<std::size_t>> successor;

  auto admit = [&](const DistObject& d) -> std::pair<std::size_t, bool> {
    if (auto it = index.find(d); it != index.end()) return {it->second, false};
    if (out.objects.size() >= object_budget) {
      throw Error(ErrorKind::ObjectBudgetExceeded, {std::to_string(object_budget)});
    }
    index.emplace(d, out.objects.size());
    out.objects.push_back(d);
    successor.emplace_back();
    return {out.objects.size() - 1, true};
  };

  std::vector<std::size_t> frontier;
  for (const auto& s : seeds) {
    validate_distribution(lm, s);
    auto [idx, fresh] = admit(s);
    if (fresh) frontier.push_back(idx);
  }
  for (std::size_t level = 0; level <= depth && !frontier.empty(); ++level) {
    std::vector<std::size_t> next;
    for (std::size_t obj : frontier) {
      // objects at the depth boundary only link back into the closure, so a
      // model that stops short there is fine
      const bool boundary = level == depth;
      if (boundary && std::any_of(out.objects[obj].begin(), out.objects[obj].end(),
                                  [&](const auto& entry) { return !lm.next.count(entry.first); })) {
        continue;
      }
      const DistObject succ = canonical_successor(lm, out.objects[obj]);
      if (auto it = index.find(succ); it != index.end()) {
        successor[obj] = it->second;
      } else if (!boundary) {
        auto [idx, fresh] = admit(succ);
        successor[obj] = idx;
        if (fresh) next.push_back(idx);
      }
    }
    frontier = std::move(next);
  }

  auto object_name = [](std::size_t i) { return "D" + std::to_string(i); };
  auto morphism_name = [&](std::size_t from, std::size_t steps) {
    return "s" + std::to_string(steps) + "(" + object_name(from) + ")";
  };

  CategoryDescription desc;
  for (std::size_t i = 0; i < out.objects.size(); ++i) desc.object(object_name(i));
  // reach[x][y] = shortest number of successor steps, when y != x is reachable
  std::vector<std::map<std::size_t, std::size_t>> reach(out.objects.size());
  for (std::size_t x = 0; x < out.objects.size(); ++x) {
    std::optional<std::size_t> cur = successor[x];
    std::size_t steps = 1;
    std::set<std::size_t> visited{x};
    while (cur && visited.insert(*cur).second) {
      reach[x].emplace(*cur, steps);
      cur = successor[*cur];
      ++steps;
    }
  }
  for (std::size_t x = 0; x < out.objects.size(); ++x) {
    for (const auto& [y, steps] : reach[x]) {
      const std::string name = morphism_name(x, steps);
      desc.morphism(name, object_name(x), object_name(y));
      LanguageMorphism label{steps, {}};
      if (steps == 1) {
        for (const auto& [s, mu] : out.objects[x]) {
          for (const auto& [token, p] : lm.next.at(s)) {
            if (p == 0) continue;
            Sentence shifted(s.begin() + 1, s.end());
            shifted.push_back(token);
            label.transitions.push_back({s, token, shifted, mu * p});
          }
        }
      }
      out.labels.emplace(name, std::move(label));
    }
  }
  for (std::size_t x = 0; x < out.objects.size(); ++x) {
    for (const auto& [y, s1] : reach[x]) {
      for (const auto& [z, s2] : reach[y]) {
        const std::string composite = z == x ? identity_name(object_name(x)) : morphism_name(x, reach[x].at(z));
        desc.composite(morphism_name(x, s1), morphism_name(y, s2), composite);
      }
    }
  }
  out.category = validate_category(desc);
  return out;
}

}  // namespace catfm
