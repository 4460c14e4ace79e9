#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fcs/counting.hpp"
#include "fcs/oracle.hpp"

namespace {

using fcs::Channel;
using fcs::Complex;
using fcs::ScatterParams;

std::vector<double> poisson(double nbar, int n_max) {
  std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) p[static_cast<std::size_t>(n)] = std::exp(-nbar) * std::pow(nbar, n) / std::tgamma(n + 1.0);
  return p;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    d = std::max(d, std::abs((i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0)));
  }
  return d;
}

TEST(PoissonWeight, Examples) {
  EXPECT_EQ(fcs::poisson_weight(0.0, 0), 1.0);
  EXPECT_EQ(fcs::poisson_weight(0.0, 3), 0.0);
  EXPECT_NEAR(fcs::poisson_weight(4.0, 4), 0.195366815, 1e-9);
  const double tiny = fcs::poisson_weight(100.0, 0);
  EXPECT_GT(tiny, 0.0);
  EXPECT_NEAR(tiny / std::exp(-100.0), 1.0, 1e-13);
  EXPECT_NEAR(fcs::poisson_weight(1000.0, 1000), 0.012614611348721, 1e-12);
}

TEST(AutoTruncation, Formula) {
  EXPECT_EQ(fcs::auto_n_max(0.0), 25);
  EXPECT_EQ(fcs::auto_n_max(4.0), 49);
  EXPECT_EQ(fcs::auto_n_max(50.0), static_cast<int>(std::ceil(50.0 + 10.0 * std::sqrt(50.0) + 25.0)));
}

TEST(ChannelDistribution, UncoupledForwardIsPoisson) {
  const auto d = fcs::channel_distribution(ScatterParams(0.0, 1.0), 3.0, Channel::Forward);
  EXPECT_EQ(d.channel, Channel::Forward);
  EXPECT_LT(sup_diff(d.probs, poisson(3.0, d.n_max())), 1e-15);
  EXPECT_LT(d.norm_defect, 1e-14);
}

TEST(ChannelDistribution, UncoupledBackwardIsPointMass) {
  const auto d = fcs::channel_distribution(ScatterParams(0.0, 1.0), 3.0, Channel::Backward);
  EXPECT_EQ(d.probs[0], 1.0);
  for (int n = 1; n <= d.n_max(); ++n) EXPECT_EQ(d.probs[static_cast<std::size_t>(n)], 0.0);
  EXPECT_NEAR(d.raw[0], std::exp(-3.0), 1e-16);  // p(0)|s_00|^2
}

TEST(ChannelDistribution, ComposesOracleTable) {
  const ScatterParams p(2.0, 0.0);
  const double nbar = 4.0;
  const auto d = fcs::channel_distribution(p, nbar, Channel::Forward);
  const auto oracle = fcs::oracle_table(p, d.n_max());
  double tail = 0.0;
  for (int n = 1; n <= d.n_max(); ++n) {
    const double expected = fcs::poisson_weight(nbar, n) * std::norm(oracle(n, 0));
    EXPECT_NEAR(d.probs[static_cast<std::size_t>(n)], expected, 1e-13) << n;
    tail += expected;
  }
  EXPECT_NEAR(d.probs[0], 1.0 - tail, 1e-13);
  EXPECT_NEAR(d.zero_bucket_mass, d.probs[0], 0.0);
  EXPECT_NEAR(d.raw[0], std::exp(-nbar), 1e-16);
}

TEST(ChannelDistribution, ExplicitTruncationOverrides) {
  const auto d = fcs::channel_distribution(ScatterParams(1.0, 0.0), 2.0, Channel::Forward, 7);
  EXPECT_EQ(d.n_max(), 7);
  EXPECT_GT(d.truncation_bound, 0.0);
}

TEST(ChannelDistribution, NegativeZeroBucketSignals) {
  const ScatterParams p(1.0, 0.0);
  auto t = fcs::coeff_table(p, 40);
  for (int n = 1; n <= 40; ++n) t.set(n, 0, 1.05);
  EXPECT_THROW(fcs::channel_distribution(t, 10.0, Channel::Forward, 40), fcs::NumericalError);
}

TEST(ChannelDistribution, NormalizationUnderAutoTruncation) {
  for (double nbar : {0.0, 0.5, 5.0, 20.0, 50.0}) {
    for (double g : {0.05, 1.0, 5.0, 20.0}) {
      for (double d : {0.0, 1.5}) {
        for (Channel ch : {Channel::Forward, Channel::Backward}) {
          const auto dist = fcs::channel_distribution(ScatterParams(g, d), nbar, ch);
          EXPECT_LE(std::abs(dist.total() - 1.0), 1e-10);
          EXPECT_LE(dist.norm_defect, 1e-10);
          for (double p : dist.probs) EXPECT_GE(p, -1e-12);
        }
      }
    }
  }
}

TEST(ChannelDistribution, LimitRecovery) {
  const auto weak = fcs::channel_distribution(ScatterParams(1e-11, 1.0), 6.0, Channel::Forward);
  EXPECT_LE(sup_diff(weak.probs, poisson(6.0, weak.n_max())), 1e-10);
  const auto strong = fcs::channel_distribution(ScatterParams(1e6, 0.0), 6.0, Channel::Backward);
  EXPECT_LE(sup_diff(strong.probs, poisson(6.0, strong.n_max())), 1e-3);
}

TEST(JointDistribution, UncoupledIsProduct) {
  const auto j = fcs::joint_distribution(ScatterParams(0.0, 1.0), 2.0);
  const auto pois = poisson(2.0, j.n_max());
  for (int n = 0; n <= j.n_max(); ++n) {
    EXPECT_NEAR(j(n, 0), pois[static_cast<std::size_t>(n)], 1e-15);
    for (int m = 1; m <= j.n_max(); ++m) EXPECT_EQ(j(n, m), 0.0);
  }
}

TEST(JointDistribution, VacuumInput) {
  const auto j = fcs::joint_distribution(ScatterParams(1.3, 0.4), 0.0);
  EXPECT_EQ(j(0, 0), 1.0);
  EXPECT_EQ(j.total_mass(), 1.0);
  for (int n = 0; n <= j.n_max(); ++n) {
    for (int m = 0; m <= j.n_max(); ++m) {
      if (n || m) EXPECT_EQ(j(n, m), 0.0);
    }
  }
}

TEST(JointDistribution, MassAndMarginals) {
  for (auto [g, d, nbar] : {std::tuple{1.0, 1.0, 3.0}, std::tuple{2.0, 0.0, 4.0}, std::tuple{0.3, -1.0, 6.0}}) {
    const ScatterParams p(g, d);
    const auto j = fcs::joint_distribution(p, nbar);
    EXPECT_NEAR(j.total_mass(), 1.0, 1e-10);
    const auto fwd = fcs::channel_distribution(p, nbar, Channel::Forward, j.n_max());
    const auto bwd = fcs::channel_distribution(p, nbar, Channel::Backward, j.n_max());
    EXPECT_LE(sup_diff(j.forward_marginal(), fwd.probs), 1e-10);
    EXPECT_LE(sup_diff(j.backward_marginal(), bwd.probs), 1e-10);
  }
}

// The zero-row/column cells of the expansion are not sign-definite: they are
// what remains of each marginal after the cross terms. This is a property of
// F itself (its L -> infinity form gives 2 - e^{N R} < 0 for the same cell
// family), so it is reported through min_cell rather than clamped.
TEST(JointDistribution, EdgeCellsCanBeNegative) {
  const auto j = fcs::joint_distribution(ScatterParams(1.0, 1.0), 3.0);
  EXPECT_LT(j(3, 0), -1e-3);
  EXPECT_LT(j.min_cell(), 0.0);
  for (int n = 1; n <= j.n_max(); ++n) {
    for (int m = 1; m <= j.n_max(); ++m) EXPECT_GE(j(n, m), 0.0);
  }
}

TEST(GeneratingFunction, OriginIsOne) {
  for (double g : {0.0, 0.7, 4.0, 20.0}) {
    for (double nbar : {0.0, 2.0, 30.0}) {
      EXPECT_LT(std::abs(fcs::evaluate_F(ScatterParams(g, 1.0), nbar, 0.0, 0.0) - 1.0), 1e-12);
    }
  }
}

TEST(GeneratingFunction, UncoupledPoissonCharacteristic) {
  const ScatterParams p(0.0, 1.0);
  for (double lam : {0.0, 0.4, 2.0, -1.1}) {
    const Complex expected = std::exp(2.0 * (std::polar(1.0, lam) - 1.0));
    EXPECT_LT(std::abs(fcs::evaluate_F(p, 2.0, lam, 0.0) - expected), 1e-14) << lam;
  }
}

TEST(GeneratingFunction, MatchesJointDoubleSum) {
  const ScatterParams p(1.0, 1.0);
  const auto j = fcs::joint_distribution(p, 3.0);
  Complex acc{0.0, 0.0};
  for (int n = 0; n <= j.n_max(); ++n) {
    for (int m = 0; m <= j.n_max(); ++m) acc += std::polar(j(n, m), 0.7 * n + 0.3 * m);
  }
  EXPECT_LT(std::abs(fcs::evaluate_F(p, 3.0, 0.7, 0.3) - acc), 1e-12);
}

TEST(GeneratingFunction, RealFugacity) {
  const ScatterParams p(2.0, 0.5);
  const auto j = fcs::joint_distribution(p, 2.5);
  for (auto [zr, zl] : {std::pair{0.3, -0.6}, std::pair{1.0, 1.0}, std::pair{-1.0, 0.2}}) {
    double acc = 0.0;
    for (int n = 0; n <= j.n_max(); ++n) {
      for (int m = 0; m <= j.n_max(); ++m) acc += j(n, m) * std::pow(zr, n) * std::pow(zl, m);
    }
    EXPECT_NEAR(fcs::evaluate_F_real(p, 2.5, zr, zl), acc, 1e-12);
  }
  EXPECT_THROW(fcs::evaluate_F_real(p, 2.5, 1.5, 0.0), std::invalid_argument);
}

TEST(GeneratingFunction, Periodicity) {
  const fcs::GeneratingFunction F(ScatterParams(1.5, 0.5), 4.0);
  const double tau = 2.0 * std::numbers::pi;
  for (double lr : {0.2, 1.9, -2.7}) {
    for (double ll : {0.0, 0.8}) {
      EXPECT_LE(std::abs(F(lr, ll) - F(lr + tau, ll)), 1e-12);
      EXPECT_LE(std::abs(F(lr, ll) - F(lr, ll + tau)), 1e-12);
    }
  }
}

TEST(GeneratingFunction, FourierConsistency) {
  constexpr int kNodes = 64;
  for (auto [g, d, nbar] : {std::tuple{1.0, 1.0, 3.0}, std::tuple{3.0, 0.0, 5.0}}) {
    const ScatterParams p(g, d);
    const fcs::GeneratingFunction F(p, nbar);
    const auto dist = fcs::channel_distribution(p, nbar, Channel::Forward);
    std::vector<Complex> samples(kNodes);
    for (int k = 0; k < kNodes; ++k) samples[k] = F(2.0 * std::numbers::pi * k / kNodes, 0.0);
    for (int n = 0; n < kNodes; ++n) {
      Complex acc{0.0, 0.0};
      for (int k = 0; k < kNodes; ++k) acc += samples[k] * std::polar(1.0, -2.0 * std::numbers::pi * ((n * k) % kNodes) / kNodes);
      const double expected = n <= dist.n_max() ? dist.probs[static_cast<std::size_t>(n)] : 0.0;
      EXPECT_LE(std::abs(acc.real() / kNodes - expected), 1e-8) << n;
    }
  }
}

TEST(Moments, Poisson) {
  const auto m = fcs::moments(poisson(3.0, 80));
  EXPECT_NEAR(m.mean, 3.0, 1e-13);
  EXPECT_NEAR(m.variance, 3.0, 1e-12);
  EXPECT_NEAR(m.mandel_q, 0.0, 1e-12);
  EXPECT_TRUE(m.fano_defined);
  for (double k : m.cumulants) EXPECT_NEAR(k, 3.0, 1e-10);
}

TEST(Moments, PointMass) {
  const auto m = fcs::moments(std::vector<double>{1.0, 0.0, 0.0});
  EXPECT_EQ(m.mean, 0.0);
  EXPECT_EQ(m.variance, 0.0);
  EXPECT_FALSE(m.fano_defined);
  EXPECT_TRUE(std::isnan(m.fano));
  for (double k : m.cumulants) EXPECT_EQ(k, 0.0);
}

TEST(Moments, MeanByDirectSummation) {
  const ScatterParams p(1.0, 0.0);
  const auto dist = fcs::channel_distribution(p, 2.0, Channel::Forward);
  const auto t = fcs::coeff_table(p, dist.n_max());
  double mean = 0.0;
  for (int n = 1; n <= dist.n_max(); ++n) mean += n * fcs::poisson_weight(2.0, n) * std::norm(t(n, 0));
  EXPECT_NEAR(fcs::moments(dist).mean, mean, 1e-14);
}

TEST(Moments, FiniteDifferenceCrossCheck) {
  for (auto [g, d, nbar] : {std::tuple{1.0, 0.0, 2.0}, std::tuple{0.5, 0.0, 10.0}, std::tuple{10.0, 5.0, 8.0}}) {
    const ScatterParams p(g, d);
    const fcs::GeneratingFunction F(p, nbar);
    for (Channel ch : {Channel::Forward, Channel::Backward}) {
      const auto m = fcs::moments(fcs::channel_distribution(p, nbar, ch));
      const auto fd = fcs::cumulants_by_finite_difference([&](long double u) {
        return ch == Channel::Forward ? F.log_mgf(u, 0.0L) : F.log_mgf(0.0L, u);
      });
      for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_LE(std::abs(fd[k] - m.cumulants[k]), 1e-5 * std::abs(m.cumulants[k]))
            << "gamma=" << g << " kappa_" << k + 1;
      }
    }
  }
}

TEST(Moments, NonPoissonianAtIntermediateCoupling) {
  const auto m = fcs::moments(fcs::channel_distribution(ScatterParams(1.0, 0.0), 5.0, Channel::Forward));
  EXPECT_GT(std::abs(m.mandel_q), 1e-3);
  EXPECT_GE(m.variance, 0.0);
}

}  // namespace
