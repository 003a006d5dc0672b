#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "catfm/category.hpp"
#include "catfm/rational.hpp"

namespace catfm {

// ---------------------------------------------------------------------------
// rotation prediction

/// Object name for base image `image` rotated by `degrees`, e.g. "I0.R90".
std::string rotation_object(std::size_t image, int degrees);

/// Groupoid with four objects per base image (0°, 90°, 180°, 270°). Within
/// an orbit every hom-set holds exactly one rotation and composition adds
/// angles mod 360; hom-sets between orbits are empty.
FinCategory build_rotation_category(std::size_t n_base_images);

// ---------------------------------------------------------------------------
// contrastive learning

struct WeightedGraph {
  std::vector<std::string> nodes;
  /// Unordered pairs; (x, y) and (y, x) denote the same edge.
  std::map<std::pair<std::string, std::string>, Rational> weights;
  bool allow_self_weights = false;

  /// Weight of the pair, zero when absent. Throws on unknown nodes.
  Rational weight(const std::string& x, const std::string& y) const;
};

/// Checks node uniqueness, non-negativity, symmetry of duplicate entries and
/// the diagonal flag. Throws InvalidArgument.
void validate_graph(const WeightedGraph& g);

struct ContrastiveCategory {
  FinCategory category;
  /// weight label per morphism name (identities carry the diagonal weight)
  std::map<std::string, Rational> weights;
};

/// One object per node and a single morphism "X~Y" for every pair with
/// positive weight. Composites are forced (every hom-set has at most one
/// element), so positive-weight edges must form cliques; otherwise throws
/// ComposabilityConflict naming the open triangle.
ContrastiveCategory build_contrastive_category(const WeightedGraph& g);

struct RkhsFactorization {
  Eigen::MatrixXd features;      // row i is the feature vector of node i
  Eigen::VectorXd eigenvalues;   // ascending
  double max_gram_error = 0.0;   // max |<v_x, v_y> - k(x, y)|
  double max_reproducing_error = 0.0;  // max |<k(., x), k(., y)>_H - k(x, y)|
};

/// Factors a symmetric PSD kernel matrix. Throws NotPSD(λ_min) when some
/// eigenvalue is below -tolerance, InvalidArgument when the matrix is not
/// symmetric, and InternalError if the reconstruction misses `tolerance`.
RkhsFactorization rkhs_factor(const Eigen::MatrixXd& kernel, double tolerance);
RkhsFactorization rkhs_factor(const WeightedGraph& g, double tolerance);

Eigen::MatrixXd weight_matrix(const WeightedGraph& g);

// ---------------------------------------------------------------------------
// masked modeling

struct MaskedObject {
  std::string name;
  std::string revealed;
  std::string mask;

  friend bool operator==(const MaskedObject&, const MaskedObject&) = default;
};

struct MaskSpec {
  std::vector<MaskedObject> full_objects;
};

/// Objects are the part names; hom(revealed, mask) holds the full objects
/// realizing that split. A part used both as revealed and as mask would need
/// composites the description cannot supply, so it throws ComposabilityConflict.
FinCategory build_masked_category(const MaskSpec& m);

/// Reads the (revealed, mask, full) triples back off a masked category.
MaskSpec recover_mask_spec(const FinCategory& c);

// ---------------------------------------------------------------------------
// language models

using Sentence = std::vector<std::string>;
using TokenDistribution = std::map<std::string, Rational>;

struct MarkovLM {
  std::vector<std::string> tokens;
  std::size_t window = 1;
  std::map<Sentence, TokenDistribution> next;
};

/// Throws InvalidDistribution unless every sentence has length `window`,
/// uses known tokens, and its distribution is non-negative with mass 1.
void validate_lm(const MarkovLM& lm);

/// Sentence text: tokens concatenated when all tokens of the model are single
/// characters, space separated otherwise.
std::string format_sentence(const MarkovLM& lm, const Sentence& s);
Sentence parse_sentence(const MarkovLM& lm, const std::string& text);

/// Finite probability measure on sentences of length `window`.
using DistObject = std::map<Sentence, Rational>;

/// Throws InvalidDistribution unless the support is non-empty, weights are
/// positive and sum to exactly 1.
void validate_distribution(const MarkovLM& lm, const DistObject& d);

Rational total_mass(const DistObject& d);

/// μ'(s') = Σ_s μ(s) ν_s(t) over s' = drop_first(s) ++ t, exactly.
DistObject canonical_successor(const MarkovLM& lm, const DistObject& z);

struct Transition {
  Sentence from;
  std::string token;
  Sentence to;
  Rational probability;
};

struct LanguageMorphism {
  std::size_t steps = 0;
  /// populated for single-step successor morphisms
  std::vector<Transition> transitions;
};

struct LanguageCategory {
  FinCategory category;
  std::vector<DistObject> objects;  // per object index, names "D0", "D1", ...
  std::map<std::string, LanguageMorphism> labels;
};

inline constexpr std::size_t kDefaultObjectBudget = 10'000;

/// Closes the seeds under canonical_successor `depth` times, deduplicating by
/// exact equality. X → Y exists when Y is reached from X by following
/// successors; parallel paths are identified, so composition is path
/// concatenation up to endpoints. Throws ObjectBudgetExceeded.
LanguageCategory build_language_category(const MarkovLM& lm, const std::vector<DistObject>& seeds,
                                         std::size_t depth,
                                         std::size_t object_budget = kDefaultObjectBudget);

}  // namespace catfm
