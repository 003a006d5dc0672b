// Seeded randomized checks over the test suite categories.
#include <random>

#include <gtest/gtest.h>

#include "catfm/extension.hpp"
#include "catfm/multimodal.hpp"
#include "catfm/pretext.hpp"
#include "generators.hpp"

using namespace catfm;

TEST(Property, YonedaBijectionOnRandomPresheaves) {
  fixtures::Rng rng(101);
  for (const auto& c : fixtures::suite_categories()) {
    for (int i = 0; i < 3; ++i) {
      const auto p = fixtures::random_set_functor(c, Variance::Contravariant, rng);
      for (ObjectIndex x = 0; x < c->object_count(); ++x) {
        const YonedaBijection b = yoneda_bijection(c, x, p);
        EXPECT_TRUE(b.bijective) << b.counterexample;
        EXPECT_EQ(b.transformations.size(), p.value(x).size());
      }
    }
  }
}

TEST(Property, YonedaFullyFaithful) {
  for (const auto& c : fixtures::suite_categories()) {
    for (ObjectIndex x = 0; x < c->object_count(); ++x) {
      for (ObjectIndex y = 0; y < c->object_count(); ++y) {
        const auto nats = enumerate_nat_transformations(yoneda_embed(c, x), yoneda_embed(c, y));
        ASSERT_EQ(nats.size(), c->hom(x, y).size());
        for (std::size_t i = 0; i < nats.size(); ++i) {
          EXPECT_EQ(yoneda_on_morphism(c, c->hom(x, y)[i]), nats[i]);
        }
      }
    }
  }
}

TEST(Property, PromptBiconditional) {
  fixtures::Rng rng(202);
  for (const auto& c : fixtures::suite_categories()) {
    for (int i = 0; i < 3; ++i) {
      const auto task = fixtures::random_set_functor(c, Variance::Contravariant, rng);
      const PromptVerdict v = check_prompt_theorem(task);
      EXPECT_EQ(v.solvable, find_representative(task).has_value());
      if (v.solvable) {
        EXPECT_TRUE(are_naturally_isomorphic(yoneda_embed(c, v.representation->object), task).has_value());
      } else {
        EXPECT_EQ(v.witnesses.size(), c->object_count());
        for (const auto& w : v.witnesses) EXPECT_TRUE(recheck_witness(task, w));
      }
    }
    for (ObjectIndex x = 0; x < c->object_count(); ++x) {
      const auto image = fixtures::relabel(yoneda_embed(c, x), rng);
      EXPECT_TRUE(check_prompt_theorem(image).solvable);
    }
  }
}

TEST(Property, FineTuningOnRandomCovariantTasks) {
  fixtures::Rng rng(303);
  for (const auto& c : fixtures::suite_categories()) {
    for (int i = 0; i < 3; ++i) {
      const auto task = fixtures::random_set_functor(c, Variance::Covariant, rng);
      const FineTuningVerdict v = check_fine_tuning_theorem(task);
      EXPECT_TRUE(v.solved);
    }
  }
}

TEST(Property, ColimitSchedulesAgreeOnRandomDiagrams) {
  fixtures::Rng rng(404);
  for (const auto& c : fixtures::random_categories(10, 500, 4, 20)) {
    const auto p = fixtures::random_set_functor(c, Variance::Contravariant, rng);
    const auto f = fixtures::random_set_functor(c, Variance::Covariant, rng);
    const auto el = category_of_elements(p);
    EXPECT_EQ(colimit_finset(el, f, MergeSchedule::Forward), colimit_finset(el, f, MergeSchedule::Reverse));
  }
}

TEST(Property, RelabelledFunctorsAreIsomorphic) {
  fixtures::Rng rng(505);
  for (const auto& c : fixtures::suite_categories()) {
    const auto p = fixtures::random_set_functor(c, Variance::Contravariant, rng);
    EXPECT_TRUE(are_naturally_isomorphic(p, fixtures::relabel(p, rng)).has_value());
  }
}

TEST(Property, MassConservationOnRandomLms) {
  fixtures::Rng rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    MarkovLM lm;
    const std::size_t k = 2 + rng() % 2;
    for (std::size_t t = 0; t < k; ++t) lm.tokens.push_back(std::string(1, static_cast<char>('a' + t)));
    lm.window = 1 + rng() % 2;
    std::vector<Sentence> all{{}};
    for (std::size_t w = 0; w < lm.window; ++w) {
      std::vector<Sentence> longer;
      for (const auto& s : all) {
        for (const auto& t : lm.tokens) {
          Sentence e = s;
          e.push_back(t);
          longer.push_back(e);
        }
      }
      all = std::move(longer);
    }
    for (const auto& s : all) {
      std::vector<long long> raw(k);
      long long total = 0;
      for (auto& r : raw) total += (r = static_cast<long long>(rng() % 5));
      if (total == 0) raw[0] = total = 1;
      for (std::size_t t = 0; t < k; ++t) lm.next[s][lm.tokens[t]] = Rational(raw[t], total);
    }
    DistObject z;
    long long total = 0;
    std::vector<long long> raw(all.size());
    for (auto& r : raw) total += (r = static_cast<long long>(rng() % 4));
    if (total == 0) raw[0] = total = 1;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (raw[i] > 0) z[all[i]] = Rational(raw[i], total);
    }
    const DistObject next = canonical_successor(lm, z);
    EXPECT_EQ(total_mass(next), 1);
    EXPECT_NO_THROW(validate_distribution(lm, next));
  }
}

TEST(Property, RkhsReproducesRandomPsd) {
  std::mt19937_64 rng(707);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const int rank = 1 + static_cast<int>(rng() % n);
    Eigen::MatrixXd a(n, rank);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < rank; ++j) a(i, j) = normal(rng);
    }
    const Eigen::MatrixXd k = a * a.transpose();
    const RkhsFactorization r = rkhs_factor(k, 1e-9);
    EXPECT_LE(r.max_gram_error, 1e-9);
    EXPECT_LE(r.max_reproducing_error, 1e-9);
  }
}

TEST(Property, MaskedRoundTrip) {
  fixtures::Rng rng(808);
  for (int trial = 0; trial < 50; ++trial) {
    MaskSpec m;
    const std::size_t revealed = 1 + rng() % 3, masks = 1 + rng() % 3, count = 1 + rng() % 6;
    for (std::size_t i = 0; i < count; ++i) {
      m.full_objects.push_back({"full" + std::to_string(i), "r" + std::to_string(rng() % revealed),
                                "m" + std::to_string(rng() % masks)});
    }
    EXPECT_EQ(recover_mask_spec(build_masked_category(m)).full_objects, m.full_objects);
  }
}

TEST(Property, IdentityEmbeddingPreservesEverything) {
  for (const auto& c : fixtures::suite_categories()) {
    const auto m = build_feature_aligned(CatFunctor::identity(c));
    const GeneralizationVerdict g = check_generalization(m);
    EXPECT_TRUE(g.preserved) << g.detail;
    for (ObjectIndex x = 0; x < c->object_count(); ++x) {
      const DecodeResult d = decode_object(m, x);
      EXPECT_EQ(d.object, x);
      EXPECT_TRUE(d.exact);
    }
  }
}
