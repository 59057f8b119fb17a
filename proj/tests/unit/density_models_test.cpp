#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "sld/density_models.hpp"
#include "sld/error.hpp"

namespace sld {
namespace {

DensityModel std_normal_1d() { return GaussianModel::standard(1); }

MixtureModel two_blob_mixture() {
  GaussianModel a({-2.0, 0.0}, {1.0, 0.3, 0.3, 0.5});
  GaussianModel b({3.0, 1.0}, {0.4, -0.1, -0.1, 2.0});
  return MixtureModel({0.3, 0.7}, {a, b});
}

TEST(FeatureVector, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(FeatureVector(std::vector<double>{}), DataError);
  EXPECT_THROW(FeatureVector({1.0, std::nan("")}), NonFiniteInput);
  EXPECT_THROW(FeatureVector({std::numeric_limits<double>::infinity()}), NonFiniteInput);
  EXPECT_EQ(FeatureVector({1.0, 2.0}).dim(), 2u);
}

TEST(GaussianModel, StandardNormalValues) {
  const auto model = std_normal_1d();
  EXPECT_NEAR(log_pdf(model, FeatureVector{0.0}), -0.91893853320467274178, 1e-15);
  EXPECT_NEAR(pdf(model, FeatureVector{0.0}), 0.39894228040143267794, 1e-15);
  // (1/sqrt(2 pi)) e^(-1/2), frozen from a 40-digit evaluation.
  EXPECT_NEAR(pdf(model, FeatureVector{1.0}), 0.24197072451914334980, 1e-15);
  const DensityModel two_d = GaussianModel::standard(2);
  EXPECT_NEAR(pdf(two_d, FeatureVector{0.0, 0.0}), 0.15915494309189533577, 1e-15);
}

TEST(GaussianModel, CorrelatedMatchesExplicitFormula) {
  const GaussianModel g({1.0, -1.0}, {2.0, 0.6, 0.6, 1.0});
  const double det = 2.0 * 1.0 - 0.36;
  const double dx = 0.5 - 1.0;
  const double dy = 0.25 + 1.0;
  // inverse of [[a b][b c]] is [[c -b][-b a]] / det
  const double quad = (1.0 * dx * dx - 2 * 0.6 * dx * dy + 2.0 * dy * dy) / det;
  const double expected = -std::log(2 * std::numbers::pi) - 0.5 * std::log(det) - 0.5 * quad;
  EXPECT_NEAR(log_pdf(DensityModel(g), FeatureVector{0.5, 0.25}), expected, 1e-13);
}

TEST(GaussianModel, ConstructionErrors) {
  EXPECT_THROW(GaussianModel({0.0, 0.0}, {1.0, 0.5, 0.4, 1.0}), FactorizationError);
  EXPECT_THROW(GaussianModel({0.0, 0.0}, {1.0, 2.0, 2.0, 1.0}), FactorizationError);
  EXPECT_THROW(GaussianModel({0.0}, {0.0}), FactorizationError);
  EXPECT_THROW(GaussianModel({0.0}, {1.0, 0.0}), InvalidModel);
  EXPECT_THROW(GaussianModel({}, {}), InvalidModel);
  // Asymmetry inside the relative tolerance is accepted and symmetrized.
  EXPECT_NO_THROW(GaussianModel({0.0, 0.0}, {1.0, 0.5, 0.5 + 1e-14, 1.0}));
}

TEST(DensityModel, DimensionMismatch) {
  const auto model = std_normal_1d();
  EXPECT_THROW(log_pdf(model, FeatureVector{0.0, 1.0}), DimensionMismatch);
  try {
    log_pdf(model, FeatureVector{0.0, 1.0});
  } catch (const DimensionMismatch& e) {
    EXPECT_EQ(e.expected(), 1u);
    EXPECT_EQ(e.found(), 2u);
  }
}

TEST(DensityModel, LogPdfFiniteFarInTails) {
  const auto model = std_normal_1d();
  const FeatureVector far{1e6};
  EXPECT_TRUE(std::isfinite(log_pdf(model, far)));
  EXPECT_EQ(pdf(model, far), 0.0);

  const DensityModel kde = KdeModel({FeatureVector{0.0}}, {0.1});
  EXPECT_TRUE(std::isfinite(log_pdf(kde, FeatureVector{1e3})));
  const DensityModel mix = two_blob_mixture();
  EXPECT_TRUE(std::isfinite(log_pdf(mix, FeatureVector{1e4, -1e4})));
}

TEST(MixtureModel, IdenticalComponentsEqualSingleComponent) {
  const GaussianModel g({0.5, -1.0}, {1.5, 0.2, 0.2, 0.7});
  const DensityModel single = g;
  const DensityModel mix = MixtureModel({0.5, 0.5}, {g, g});
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const FeatureVector x{3 * rng.normal(), 3 * rng.normal()};
    EXPECT_NEAR(log_pdf(mix, x), log_pdf(single, x), 1e-12);
  }
}

TEST(MixtureModel, EqualsWeightedSumOfComponents) {
  const MixtureModel m = two_blob_mixture();
  const DensityModel mix = m;
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const FeatureVector x{4 * rng.normal(), 4 * rng.normal()};
    double direct = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
      direct += m.weights()[k] * std::exp(m.components()[k].log_pdf(x.coords()));
    }
    EXPECT_NEAR(pdf(mix, x), direct, 1e-12 * direct);
  }
}

TEST(MixtureModel, ConstructionErrors) {
  const GaussianModel g1 = GaussianModel::standard(1);
  const GaussianModel g2 = GaussianModel::standard(2);
  EXPECT_THROW(MixtureModel({0.6, 0.6}, {g1, g1}), InvalidModel);
  EXPECT_THROW(MixtureModel({-0.5, 1.5}, {g1, g1}), InvalidModel);
  EXPECT_THROW(MixtureModel({0.5, 0.5}, {g1, g2}), InvalidModel);
  EXPECT_THROW(MixtureModel({1.0}, {g1, g1}), InvalidModel);
  EXPECT_THROW(MixtureModel({}, {}), InvalidModel);
}

TEST(MixtureModel, DegenerateWeightsSampleOneComponent) {
  const GaussianModel left({-100.0}, {1.0});
  const GaussianModel right({100.0}, {1.0});
  const DensityModel mix = MixtureModel({1.0, 0.0}, {left, right});
  Rng rng(3);
  for (const auto& x : sample(mix, rng, 5000)) EXPECT_LT(x[0], 0.0);
}

TEST(KdeModel, SinglePointIsAGaussian) {
  const double t = 1.7;
  const double h = 0.4;
  const DensityModel kde = KdeModel({FeatureVector{t}}, {h});
  const DensityModel ref = GaussianModel({t}, {h * h});
  for (double x : {-3.0, 0.0, 1.7, 2.2, 9.0}) {
    EXPECT_NEAR(log_pdf(kde, FeatureVector{x}), log_pdf(ref, FeatureVector{x}), 1e-13);
  }
}

TEST(KdeModel, ConstructionErrors) {
  EXPECT_THROW(KdeModel({}, {1.0}), InvalidModel);
  EXPECT_THROW(KdeModel({FeatureVector{0.0}}, {0.0}), InvalidModel);
  EXPECT_THROW(KdeModel({FeatureVector{0.0}}, {-1.0}), InvalidModel);
  EXPECT_THROW(KdeModel({FeatureVector{0.0, 1.0}}, {1.0}), DimensionMismatch);
}

TEST(FitKde, SilvermanTwoPoints) {
  const std::vector<FeatureVector> data{FeatureVector{0.0}, FeatureVector{2.0}};
  const KdeModel kde = fit_kde(data);
  // 1.06 * sqrt(2) * 2^(-0.2), frozen from a 40-digit evaluation.
  EXPECT_NEAR(kde.bandwidths()[0], 1.3050130781456113, 1e-14);
}

TEST(FitKde, ExplicitBandwidthOverridesRule) {
  const std::vector<FeatureVector> data{FeatureVector{0.0, 5.0}, FeatureVector{2.0, 1.0},
                                        FeatureVector{1.0, 1.0}};
  const KdeModel kde = fit_kde(data, FixedBandwidth{{0.5}});
  ASSERT_EQ(kde.bandwidths().size(), 2u);
  EXPECT_EQ(kde.bandwidths()[0], 0.5);
  EXPECT_EQ(kde.bandwidths()[1], 0.5);
  const KdeModel per_dim = fit_kde(data, FixedBandwidth{{0.5, 0.25}});
  EXPECT_EQ(per_dim.bandwidths()[1], 0.25);
  EXPECT_THROW(fit_kde(data, FixedBandwidth{{0.5, 0.25, 1.0}}), DimensionMismatch);
}

TEST(FitKde, Errors) {
  const std::vector<FeatureVector> one{FeatureVector{1.0}};
  EXPECT_THROW(fit_kde(one), TooFewPoints);
  const std::vector<FeatureVector> constant_dim{FeatureVector{0.0, 3.0}, FeatureVector{1.0, 3.0},
                                                FeatureVector{2.0, 3.0}};
  try {
    fit_kde(constant_dim);
    FAIL() << "expected ZeroVariance";
  } catch (const ZeroVariance& e) {
    EXPECT_EQ(e.dimension(), 1u);
  }
  const std::vector<FeatureVector> mixed{FeatureVector{0.0}, FeatureVector{1.0, 2.0}};
  EXPECT_THROW(fit_kde(mixed), DimensionMismatch);
}

TEST(FitGaussian, MeanAndCovariance) {
  const std::vector<FeatureVector> data{FeatureVector{1.0, 2.0}, FeatureVector{3.0, 0.0},
                                        FeatureVector{2.0, 4.0}, FeatureVector{6.0, 2.0}};
  const GaussianModel g = fit_gaussian(data);
  EXPECT_DOUBLE_EQ(g.mean()[0], 3.0);
  EXPECT_DOUBLE_EQ(g.mean()[1], 2.0);
  // Unbiased sample covariance.
  EXPECT_DOUBLE_EQ(g.covariance()[0], (4.0 + 0.0 + 1.0 + 9.0) / 3.0);
  EXPECT_DOUBLE_EQ(g.covariance()[1], (-2.0 * 0.0 + 0.0 * -2.0 + -1.0 * 2.0 + 3.0 * 0.0) / 3.0);
  EXPECT_DOUBLE_EQ(g.covariance()[3], (0.0 + 4.0 + 4.0 + 0.0) / 3.0);
}

TEST(Sampling, DeterministicForFixedSeed) {
  const DensityModel models[] = {GaussianModel::standard(3), two_blob_mixture(),
                                 KdeModel({FeatureVector{0.0}, FeatureVector{4.0}}, {0.5})};
  for (const auto& model : models) {
    Rng a(99);
    Rng b(99);
    EXPECT_EQ(sample(model, a, 200), sample(model, b, 200));
  }
}

TEST(Sampling, StandardNormalMeanWithinCltBound) {
  Rng rng(2024);
  const auto draws = sample(std_normal_1d(), rng, 100000);
  double sum = 0.0;
  for (const auto& x : draws) sum += x[0];
  EXPECT_LT(std::abs(sum / 1e5), 0.01);
}

TEST(Sampling, GaussianMomentsWithinFourStandardErrors) {
  const GaussianModel g({1.0, -2.0}, {2.0, 0.8, 0.8, 1.0});
  const DensityModel model = g;
  Rng rng(5);
  constexpr std::size_t kCount = 100000;
  const auto draws = sample(model, rng, kCount);
  double m[2] = {0, 0};
  for (const auto& x : draws) {
    m[0] += x[0];
    m[1] += x[1];
  }
  m[0] /= kCount;
  m[1] /= kCount;
  double c[4] = {0, 0, 0, 0};
  for (const auto& x : draws) {
    const double a = x[0] - m[0];
    const double b = x[1] - m[1];
    c[0] += a * a;
    c[1] += a * b;
    c[3] += b * b;
  }
  for (double& v : c) v /= (kCount - 1);
  const double n = kCount;
  const auto cov = g.covariance();
  EXPECT_LT(std::abs(m[0] - 1.0), 4 * std::sqrt(cov[0] / n));
  EXPECT_LT(std::abs(m[1] + 2.0), 4 * std::sqrt(cov[3] / n));
  // Var(s_ij) ~ (s_ii s_jj + s_ij^2) / n for Gaussian data.
  EXPECT_LT(std::abs(c[0] - cov[0]), 4 * std::sqrt(2 * cov[0] * cov[0] / n));
  EXPECT_LT(std::abs(c[1] - cov[1]), 4 * std::sqrt((cov[0] * cov[3] + cov[1] * cov[1]) / n));
  EXPECT_LT(std::abs(c[3] - cov[3]), 4 * std::sqrt(2 * cov[3] * cov[3] / n));
}

// Importance-sampled normalization: draw from a broad Gaussian proposal q and
// average p/q. Each model's estimate must lie within 3 standard errors of 1.
TEST(DensityModel, MonteCarloNormalization) {
  const DensityModel models[] = {
      GaussianModel({0.5, -0.5}, {1.0, 0.3, 0.3, 0.8}), two_blob_mixture(),
      KdeModel({FeatureVector{0.0, 0.0}, FeatureVector{2.0, 1.0}, FeatureVector{-1.0, 3.0}},
               {0.7, 0.4})};
  const DensityModel proposal = GaussianModel({0.5, 0.5}, {16.0, 0.0, 0.0, 16.0});
  for (const auto& model : models) {
    Rng rng(123);
    constexpr std::size_t kCount = 100000;
    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<double> buf(2);
    for (std::size_t i = 0; i < kCount; ++i) {
      proposal.sample_into(rng, buf);
      const double w = std::exp(model.log_pdf_unchecked(buf) - proposal.log_pdf_unchecked(buf));
      sum += w;
      sum_sq += w * w;
    }
    const double mean = sum / kCount;
    const double se = std::sqrt((sum_sq / kCount - mean * mean) / kCount);
    EXPECT_LT(std::abs(mean - 1.0), 3 * se) << model.kind();
  }
}

TEST(DensityModel, PdfIsExpOfLogPdf) {
  const DensityModel models[] = {GaussianModel::standard(2), two_blob_mixture(),
                                 KdeModel({FeatureVector{0.0, 0.0}}, {1.0, 2.0})};
  Rng rng(8);
  for (const auto& model : models) {
    for (int i = 0; i < 100; ++i) {
      const FeatureVector x{3 * rng.normal(), 3 * rng.normal()};
      const double p = pdf(model, x);
      EXPECT_GE(p, 0.0);
      EXPECT_EQ(p, std::exp(log_pdf(model, x)));
    }
  }
}

TEST(LogSumExp, StableAndHandlesInfinities) {
  const std::vector<double> big{1000.0, 1000.0};
  EXPECT_NEAR(log_sum_exp(big), 1000.0 + std::log(2.0), 1e-12);
  const std::vector<double> with_ninf{-std::numeric_limits<double>::infinity(), 0.0};
  EXPECT_EQ(log_sum_exp(with_ninf), 0.0);
  EXPECT_EQ(log_sum_exp({}), -std::numeric_limits<double>::infinity());
}

}  // namespace
}  // namespace sld
