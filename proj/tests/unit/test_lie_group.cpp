#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dconn/error.hpp"
#include "dconn/lie_group.hpp"
#include "oracles.hpp"

namespace dconn {
namespace {

using oracle::frobenius;

constexpr double kPi = std::numbers::pi;

GroupElement rz(double theta) {
  return exp(AlgebraElement(Group::so3(), Eigen::Vector3d(0.0, 0.0, theta)));
}

Eigen::Matrix3d rz_matrix(double theta) {
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  r.topLeftCorner<2, 2>() = oracle::rot2(theta);
  return r;
}

const Group kGroups[] = {Group::so2(), Group::so3(), Group::se3(), Group::rn(3)};

TEST(LieGroup, ParsesGroupNames) {
  EXPECT_EQ(Group::parse("SO3"), Group::so3());
  EXPECT_EQ(Group::parse("SE3"), Group::se3());
  EXPECT_EQ(Group::parse("R4"), Group::rn(4));
  EXPECT_EQ(Group::rn(4).algebra_dim(), 4);
  EXPECT_EQ(Group::se3().matrix_size(), 4);
  EXPECT_THROW(Group::parse("SU2"), Error);
  EXPECT_THROW(Group::parse("R"), Error);
}

TEST(LieGroup, ComposeOfPlanarRotationsAddsAngles) {
  const double a = 30.0 * kPi / 180.0;
  const double b = 50.0 * kPi / 180.0;
  EXPECT_LT(frobenius(compose(rz(a), rz(b)).matrix(), rz_matrix(a + b)), 1e-14);
}

TEST(LieGroup, ComposeWithIdentity) {
  oracle::Sampler s(1);
  for (const auto& g : kGroups) {
    const GroupElement x = s.group_element(g);
    EXPECT_LT(distance(compose(x, GroupElement::identity(g)), x), 1e-15);
    EXPECT_LT(distance(compose(GroupElement::identity(g), x), x), 1e-15);
  }
}

TEST(LieGroup, ComposeMatchesBruteForceProduct) {
  oracle::Sampler s(2);
  for (int i = 0; i < 50; ++i) {
    const GroupElement a = s.group_element(Group::so3(), 2.0);
    const GroupElement b = s.group_element(Group::so3(), 2.0);
    EXPECT_LT(frobenius(compose(a, b).matrix(), oracle::brute_matmul(a.matrix(), b.matrix())),
              1e-14);
  }
}

TEST(LieGroup, ComposeRejectsGroupMismatch) {
  try {
    (void)compose(GroupElement::identity(Group::so3()), GroupElement::identity(Group::se3()));
    FAIL() << "expected GroupMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::GroupMismatch);
  }
}

TEST(LieGroup, CompositionIsAssociative) {
  oracle::Sampler s(3);
  for (const auto& g : kGroups) {
    for (int i = 0; i < 100; ++i) {
      const GroupElement a = s.group_element(g), b = s.group_element(g), c = s.group_element(g);
      EXPECT_LT(distance(compose(compose(a, b), c), compose(a, compose(b, c))), 1e-12);
    }
  }
}

TEST(LieGroup, InverseOfPlanarRotation) {
  EXPECT_LT(frobenius(inverse(rz(0.7)).matrix(), rz_matrix(-0.7)), 1e-15);
  const GroupElement e = GroupElement::identity(Group::so3());
  EXPECT_EQ(distance(inverse(e), e), 0.0);
}

TEST(LieGroup, InverseOfRigidMotion) {
  oracle::Sampler s(4);
  for (int i = 0; i < 50; ++i) {
    const GroupElement g = s.group_element(Group::se3(), 2.0);
    const Eigen::Matrix3d r = g.matrix().topLeftCorner<3, 3>();
    const Eigen::Vector3d p = g.matrix().topRightCorner<3, 1>();
    const Eigen::MatrixXd inv = inverse(g).matrix();
    EXPECT_LT(frobenius(inv.topLeftCorner<3, 3>(), r.transpose()), 1e-15);
    EXPECT_LT((inv.topRightCorner<3, 1>() + r.transpose() * p).norm(), 1e-14);
    EXPECT_LT(frobenius(oracle::brute_matmul(g.matrix(), inv), Eigen::MatrixXd::Identity(4, 4)),
              1e-12);
  }
}

TEST(LieGroup, ExpOfZeroIsIdentity) {
  for (const auto& g : kGroups) {
    EXPECT_EQ(distance(exp(AlgebraElement::zero(g)), GroupElement::identity(g)), 0.0);
  }
}

TEST(LieGroup, ExpOfVerticalAxisIsPlanarRotation) {
  for (double theta : {-2.5, -0.3, 0.0, 1e-9, 0.4, 3.0}) {
    EXPECT_LT(frobenius(rz(theta).matrix(), rz_matrix(theta)), 1e-15);
  }
}

TEST(LieGroup, ExpMatchesSeries) {
  oracle::Sampler s(5);
  for (const auto& g : kGroups) {
    for (int i = 0; i < 50; ++i) {
      Eigen::VectorXd v = s.vector(g.algebra_dim(), 1.0);
      if (v.norm() > 1.0) v.normalize();
      const AlgebraElement xi(g, v);
      EXPECT_LT(frobenius(exp(xi).matrix(), oracle::series_exp(hat(xi), 20)), 1e-10)
          << g.name();
    }
  }
}

TEST(LieGroup, ExpSmallAngleBranch) {
  const AlgebraElement xi(Group::se3(), (Eigen::VectorXd(6) << 1e-9, -2e-9, 1e-9, 0.3, 0.1, -0.2)
                                            .finished());
  EXPECT_LT(frobenius(exp(xi).matrix(), oracle::series_exp(hat(xi))), 1e-14);
}

TEST(LieGroup, HatVeeRoundTrip) {
  oracle::Sampler s(6);
  for (const auto& g : kGroups) {
    const AlgebraElement xi(g, s.vector(g.algebra_dim(), 3.0));
    EXPECT_LT((vee(g, hat(xi)).coords() - xi.coords()).norm(), 1e-14);
  }
  const Eigen::Vector3d w(0.3, -1.2, 0.7);
  EXPECT_EQ(frobenius(hat(AlgebraElement(Group::so3(), w)), oracle::skew(w)), 0.0);
}

TEST(LieGroup, LogOfIdentityIsZero) {
  for (const auto& g : kGroups) {
    EXPECT_EQ(log(GroupElement::identity(g)).coords().norm(), 0.0);
  }
}

TEST(LieGroup, LogOfPlanarRotation) {
  for (double theta : {-3.0, -1.0, 0.2, 3.1}) {
    const Eigen::VectorXd w = log(GroupElement::from_matrix(Group::so3(), rz_matrix(theta))).coords();
    EXPECT_LT((w - Eigen::Vector3d(0.0, 0.0, theta)).norm(), 1e-12);
  }
}

TEST(LieGroup, ExpLogRoundTrip) {
  oracle::Sampler s(7);
  for (const auto& g : kGroups) {
    for (int i = 0; i < 100; ++i) {
      const GroupElement x = s.group_element(g, 0.1);
      EXPECT_LT(distance(exp(log(x)), x), 1e-12) << g.name();
    }
    for (int i = 0; i < 100; ++i) {
      const GroupElement x = s.group_element(g, 1.7);
      if (g.kind() == GroupKind::SO3 || g.kind() == GroupKind::SE3) {
        if (conj_invariant_norm(x) > kPi - 1e-3) continue;
      }
      EXPECT_LT(distance(exp(log(x)), x), 1e-10) << g.name();
    }
  }
}

TEST(LieGroup, LogNearPiIsCutLocus) {
  try {
    (void)log(rz(kPi - 1e-8));
    FAIL() << "expected CutLocus";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CutLocus);
  }
  EXPECT_NO_THROW((void)log(rz(kPi - 1e-3)));
  EXPECT_THROW((void)conj_invariant_norm(rz(kPi)), Error);
}

TEST(LieGroup, AdjointOfIdentity) {
  oracle::Sampler s(8);
  for (const auto& g : kGroups) {
    const AlgebraElement xi(g, s.vector(g.algebra_dim(), 1.0));
    EXPECT_LT((adjoint(GroupElement::identity(g), xi).coords() - xi.coords()).norm(), 1e-15);
  }
}

TEST(LieGroup, AdjointOnRotationsIsMatrixAction) {
  oracle::Sampler s(9);
  for (int i = 0; i < 50; ++i) {
    const GroupElement r = s.group_element(Group::so3(), 2.0);
    const Eigen::Vector3d w = s.vector(3, 1.0);
    const Eigen::Vector3d expected = oracle::brute_matmul(r.matrix(), w);
    EXPECT_LT((adjoint(r, AlgebraElement(Group::so3(), w)).coords() - expected).norm(), 1e-14);
    const Eigen::MatrixXd conj =
        oracle::brute_matmul(oracle::brute_matmul(r.matrix(), oracle::skew(w)), r.matrix().transpose());
    EXPECT_LT(frobenius(conj, oracle::skew(expected)), 1e-14);
  }
}

TEST(LieGroup, AdjointMatrixColumns) {
  oracle::Sampler s(10);
  const GroupElement g = s.group_element(Group::se3());
  const Eigen::MatrixXd ad = adjoint_matrix(g);
  for (int i = 0; i < 6; ++i) {
    EXPECT_LT((ad.col(i) - adjoint(g, AlgebraElement::basis(Group::se3(), i)).coords()).norm(),
              1e-14);
  }
}

TEST(LieGroup, AdjointPreservesBracket) {
  oracle::Sampler s(11);
  for (const auto& g : kGroups) {
    for (int i = 0; i < 100; ++i) {
      const GroupElement x = s.group_element(g, 1.5);
      const AlgebraElement a(g, s.vector(g.algebra_dim(), 1.0));
      const AlgebraElement b(g, s.vector(g.algebra_dim(), 1.0));
      const Eigen::VectorXd lhs = adjoint(x, bracket(a, b)).coords();
      const Eigen::VectorXd rhs = bracket(adjoint(x, a), adjoint(x, b)).coords();
      EXPECT_LT((lhs - rhs).norm(), 1e-11);
    }
  }
}

TEST(LieGroup, ConjInvariantNormExamples) {
  EXPECT_EQ(conj_invariant_norm(GroupElement::identity(Group::so3())), 0.0);
  for (double theta : {-2.0, -0.5, 0.25, 3.0}) {
    EXPECT_NEAR(conj_invariant_norm(rz(theta)), std::abs(theta), 1e-12);
  }
  const AlgebraElement pure_translation(
      Group::se3(), (Eigen::VectorXd(6) << 0.0, 0.0, 0.0, 0.3, -0.4, 1.2).finished());
  EXPECT_NEAR(conj_invariant_norm(exp(pure_translation)), 1.3, 1e-14);
}

TEST(LieGroup, ConjInvariantNormIsConjugationInvariant) {
  oracle::Sampler s(12);
  for (const auto& g : kGroups) {
    const GroupElement x = s.group_element(g, 1.0);
    const double n = conj_invariant_norm(x);
    for (int i = 0; i < 100; ++i) {
      const GroupElement h = s.group_element(g, 2.0);
      EXPECT_NEAR(conj_invariant_norm(compose(compose(h, x), inverse(h))), n, 1e-11) << g.name();
    }
  }
}

TEST(LieGroup, OrthonormalityHoldsAlongLongChains) {
  oracle::Sampler s(13);
  for (const auto& g : {Group::so3(), Group::se3()}) {
    GroupElement x = GroupElement::identity(g);
    for (int i = 0; i < 1000; ++i) x = compose(x, s.group_element(g, 1.0));
    EXPECT_LT(x.orthonormality_defect(), 1e-9);
  }
}

TEST(LieGroup, FromMatrixValidates) {
  Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
  bad(0, 1) = 1e-6;
  EXPECT_THROW((void)GroupElement::from_matrix(Group::so3(), bad), Error);
  Eigen::Matrix3d reflection = Eigen::Matrix3d::Identity();
  reflection(2, 2) = -1.0;
  EXPECT_THROW((void)GroupElement::from_matrix(Group::so3(), reflection), Error);
  EXPECT_THROW((void)GroupElement::from_matrix(Group::so3(), Eigen::Matrix2d::Identity()), Error);
  Eigen::Matrix4d se3 = Eigen::Matrix4d::Identity();
  se3(3, 0) = 1.0;
  EXPECT_THROW((void)GroupElement::from_matrix(Group::se3(), se3), Error);
}

TEST(LieGroup, AlgebraElementValidatesDimension) {
  EXPECT_THROW(AlgebraElement(Group::so3(), Eigen::VectorXd::Zero(6)), Error);
}

TEST(LieGroup, CayleyAgreesWithExpToSecondOrder) {
  oracle::Sampler s(14);
  const Eigen::Vector3d dir = s.vector(3, 1.0).normalized();
  double previous = 0.0;
  for (double t : {1e-1, 5e-2, 2.5e-2}) {
    const AlgebraElement xi(Group::so3(), t * dir);
    const double err = frobenius(cayley(xi).matrix(), exp(xi).matrix());
    if (previous > 0.0) EXPECT_NEAR(std::log2(previous / err), 3.0, 0.1);
    previous = err;
  }
}

TEST(LieGroup, CayleyInverseRoundTrip) {
  oracle::Sampler s(15);
  for (const auto& g : {Group::so3(), Group::se3()}) {
    for (int i = 0; i < 50; ++i) {
      const AlgebraElement xi(g, s.vector(g.algebra_dim(), 1.0));
      EXPECT_LT((cayley_inverse(cayley(xi)).coords() - xi.coords()).norm(), 1e-11);
    }
  }
  EXPECT_THROW((void)cayley_inverse(rz(kPi)), Error);
}

}  // namespace
}  // namespace dconn
