#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "alas/errors.hpp"
#include "alas/linalg.hpp"
#include "alas/step.hpp"
#include "properties.hpp"

using namespace alas;

namespace {

Matrix diag(std::initializer_list<double> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  int i = 0;
  for (double e : d) v(i++) = e;
  return v.asDiagonal();
}

Vector vec(std::initializer_list<double> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  int i = 0;
  for (double e : d) v(i++) = e;
  return v;
}

}  // namespace

TEST(MinEigenpair, Diagonal) {
  const auto e = min_eigenpair(diag({2, -3}));
  EXPECT_NEAR(e.value, -3.0, 1e-12);
  EXPECT_NEAR(e.vector(0), 0.0, 1e-12);
  EXPECT_NEAR(e.vector(1), 1.0, 1e-12);
}

TEST(MinEigenpair, OffDiagonalSignConvention) {
  Matrix h(2, 2);
  h << 0, 1, 1, 0;
  const auto e = min_eigenpair(h);
  EXPECT_NEAR(e.value, -1.0, 1e-12);
  EXPECT_NEAR(e.vector(0), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(e.vector(1), -1.0 / std::sqrt(2.0), 1e-12);
}

TEST(MinEigenpair, MatchesInertiaBisectionOracle) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix h = testing_helpers::random_symmetric(rng, 6);
    const auto e = min_eigenpair(h);
    const auto om = testing_helpers::to_oracle(h);
    const long double ref = oracle::min_eigenvalue(om);
    EXPECT_NEAR(e.value, static_cast<double>(ref), 1e-8);
    const auto v = oracle::eigenvector(om, ref, 1e-10L * std::max(1.0, spectral_norm(h)));
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(e.vector(i), static_cast<double>(v[i]), 1e-8);
    EXPECT_NEAR(e.vector.norm(), 1.0, 1e-12);
    EXPECT_LE((h * e.vector - e.value * e.vector).norm(), 1e-10 * std::max(1.0, spectral_norm(h)));
  }
}

TEST(MinEigenpair, RejectsNonSymmetric) {
  Matrix h(2, 2);
  h << 1, 2, 2.001, 1;
  EXPECT_THROW(min_eigenpair(h), InvalidInput);
  EXPECT_THROW(min_eigenpair(Matrix::Zero(2, 3)), InvalidInput);
}

TEST(RayleighQuotient, Examples) {
  EXPECT_DOUBLE_EQ(rayleigh_quotient(diag({2, -1}), vec({1, 1})), 0.5);
  EXPECT_DOUBLE_EQ(rayleigh_quotient(Matrix::Identity(3, 3), vec({0.3, -2, 7})), 1.0);
  EXPECT_DOUBLE_EQ(rayleigh_quotient(diag({-2, 5}), vec({1, 0})), -2.0);
  EXPECT_THROW(rayleigh_quotient(diag({1, 1}), vec({0, 0})), InvalidInput);
}

TEST(ComputeDirection, Newton) {
  const Vector d = compute_direction(StepKind::Newton, diag({4, 2}), vec({4, 2}), nullptr, std::nullopt, 1e-5);
  EXPECT_NEAR(d(0), -1.0, 1e-15);
  EXPECT_NEAR(d(1), -1.0, 1e-15);
}

TEST(ComputeDirection, RegularizedNewton) {
  const Vector d =
      compute_direction(StepKind::RegularizedNewton, diag({0.5, 1}), vec({1, 0}), nullptr, std::nullopt, 0.01);
  EXPECT_NEAR(d(0), -0.625, 1e-15);
  EXPECT_EQ(d(1), 0.0);
}

TEST(ComputeDirection, NegativeCurvatureTieKeepsConvention) {
  const EigenPair e{-2.0, vec({1, 0})};
  const Vector d = compute_direction(StepKind::NegativeCurvature, diag({-2, 1}), vec({0, 1}), &e, std::nullopt, 0.01);
  EXPECT_DOUBLE_EQ(d(0), 2.0);
  EXPECT_DOUBLE_EQ(d(1), 0.0);
}

TEST(ComputeDirection, NegativeCurvatureFlipsUphill) {
  const EigenPair e{-2.0, vec({1, 0})};
  const Vector d = compute_direction(StepKind::NegativeCurvature, diag({-2, 1}), vec({1, 1}), &e, std::nullopt, 0.01);
  EXPECT_DOUBLE_EQ(d(0), -2.0);
}

TEST(ComputeDirection, GradientNegativeCurvature) {
  const Vector d =
      compute_direction(StepKind::GradientNegativeCurvature, diag({-2, 5}), vec({1, 0}), nullptr, -2.0, 1e-5);
  EXPECT_DOUBLE_EQ(d(0), -2.0);
  EXPECT_DOUBLE_EQ(d(1), 0.0);
}

TEST(ComputeDirection, PreconditionViolations) {
  EXPECT_THROW(compute_direction(StepKind::NegativeCurvature, diag({1, 1}), vec({1, 0}), nullptr, std::nullopt, 0.01),
               InvalidInput);
  EXPECT_THROW(
      compute_direction(StepKind::GradientNegativeCurvature, diag({1, 1}), vec({1, 0}), nullptr, 0.5, 0.01),
      InvalidInput);
}

TEST(SelectTheoretical, Examples) {
  const double eps = 0.01;
  auto newton = select_step_theoretical(vec({1, 0}), diag({4, 2}), eps);
  EXPECT_EQ(newton.kind, StepKind::Newton);
  EXPECT_NEAR(newton.direction(0), -0.25, 1e-15);
  EXPECT_EQ(select_step_theoretical(vec({1, 0}), diag({-0.5, 1}), eps).kind, StepKind::NegativeCurvature);
  auto zero = select_step_theoretical(vec({0, 0}), diag({1, 1}), eps);
  EXPECT_EQ(zero.kind, StepKind::ZeroStep);
  EXPECT_EQ(zero.direction.norm(), 0.0);
  EXPECT_EQ(select_step_theoretical(vec({1, 0}), diag({0.5, 2}), eps).kind, StepKind::RegularizedNewton);
}

TEST(SelectPractical, Examples) {
  const double eps = 1e-5;
  auto gnc = select_step_practical(vec({1, 0}), diag({-2, 5}), eps);
  EXPECT_EQ(gnc.kind, StepKind::GradientNegativeCurvature);
  EXPECT_DOUBLE_EQ(gnc.direction(0), -2.0);
  EXPECT_FALSE(gnc.lambda_min.has_value());
  auto sg = select_step_practical(vec({1, 0}), diag({0.5, 5}), eps);
  EXPECT_EQ(sg.kind, StepKind::ScaledGradient);
  EXPECT_DOUBLE_EQ(sg.direction(0), -1.0);
  auto nt = select_step_practical(vec({1, 0}), diag({5, 5}), eps);
  EXPECT_EQ(nt.kind, StepKind::Newton);
  EXPECT_NEAR(nt.direction(0), -0.2, 1e-15);
}

TEST(SelectPractical, ZeroGradientSkipsRayleigh) {
  const auto d = select_step_practical(vec({0, 0}), diag({-1, 2}), 1e-5);
  EXPECT_FALSE(d.rayleigh.has_value());
  EXPECT_EQ(d.kind, StepKind::NegativeCurvature);
  EXPECT_EQ(select_step_practical(vec({0, 0}), diag({1, 2}), 1e-5).kind, StepKind::ZeroStep);
}

TEST(StepKindNames, RoundTrip) {
  for (auto k : {StepKind::ZeroStep, StepKind::NegativeCurvature, StepKind::Newton, StepKind::RegularizedNewton,
                 StepKind::GradientNegativeCurvature, StepKind::ScaledGradient})
    EXPECT_EQ(step_kind_from_string(to_string(k)), k);
  EXPECT_THROW(step_kind_from_string("bogus"), InvalidInput);
}

TEST(StepProperties, RandomInstancesBothPolicies) {
  std::mt19937_64 rng(2024);
  std::map<StepKind, int> seen_t, seen_p;
  for (int i = 0; i < 2000; ++i) {
    const auto s = properties::random_step_instance(rng);
    for (const auto& v : properties::check_step(s, properties::PolicyKind::Theoretical)) ADD_FAILURE() << i << " " << v;
    for (const auto& v : properties::check_step(s, properties::PolicyKind::Practical)) ADD_FAILURE() << i << " " << v;
    ++seen_t[select_step_theoretical(s.g, s.h, s.eps).kind];
    ++seen_p[select_step_practical(s.g, s.h, s.eps).kind];
  }
  EXPECT_EQ(seen_t.size(), 4u);
  EXPECT_EQ(seen_p.size(), 6u);
}
