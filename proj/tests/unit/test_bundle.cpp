#include <gtest/gtest.h>

#include "dconn/bundle.hpp"
#include "dconn/error.hpp"
#include "oracles.hpp"

namespace dconn {
namespace {

const Bundle kBundles[] = {Bundle(2, Group::so3()), Bundle(2, Group::se3()),
                           Bundle(0, Group::so3()), Bundle(1, Group::rn(1))};

TEST(Bundle, ProjectReturnsShape) {
  oracle::Sampler s(20);
  for (const auto& b : kBundles) {
    const BundlePoint q = s.point(b);
    EXPECT_EQ(project(q).coords, q.shape.coords);
    const GroupElement h = s.group_element(b.group());
    EXPECT_EQ(project(act(h, q)).coords, q.shape.coords);
  }
}

TEST(Bundle, ProjectDiscardsFibersInBatch) {
  oracle::Sampler s(21);
  const Bundle b(3, Group::se3());
  for (int i = 0; i < 100; ++i) {
    const BundlePoint q = s.point(b);
    const ShapePoint x = project(q);
    ASSERT_EQ(x.dim(), 3);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(x.coords(j), q.shape.coords(j));
  }
}

TEST(Bundle, ActionByIdentity) {
  oracle::Sampler s(22);
  for (const auto& b : kBundles) {
    const BundlePoint q = s.point(b);
    EXPECT_EQ(distance(act(GroupElement::identity(b.group()), q), q), 0.0);
  }
}

TEST(Bundle, ActionComposes) {
  oracle::Sampler s(23);
  for (const auto& b : kBundles) {
    for (int i = 0; i < 100; ++i) {
      const BundlePoint q = s.point(b);
      const GroupElement h1 = s.group_element(b.group()), h2 = s.group_element(b.group());
      EXPECT_LT(distance(act(h1, act(h2, q)), act(compose(h1, h2), q)), 1e-12);
    }
  }
}

TEST(Bundle, InverseFiberActionReachesIdentity) {
  oracle::Sampler s(24);
  for (const auto& b : kBundles) {
    const BundlePoint q = s.point(b);
    const BundlePoint r = act(inverse(q.fiber), q);
    EXPECT_LT(distance(r.fiber, GroupElement::identity(b.group())), 1e-14);
    EXPECT_EQ(r.shape.coords, q.shape.coords);
  }
}

TEST(Bundle, ActionIsFree) {
  oracle::Sampler s(25);
  for (const auto& b : kBundles) {
    for (int i = 0; i < 100; ++i) {
      const BundlePoint q = s.point(b);
      const GroupElement h = s.group_element(b.group());
      if (conj_invariant_norm(h) <= 1e-6) continue;
      EXPECT_GT(distance(act(h, q), q), 0.0);
    }
  }
}

TEST(Bundle, GeneratorOfIdentityIsDiagonal) {
  oracle::Sampler s(26);
  const Bundle b(2, Group::so3());
  const BundlePoint q = s.point(b);
  const PairElement p = discrete_generator(q, GroupElement::identity(b.group()));
  EXPECT_EQ(distance(p.first, q), 0.0);
  EXPECT_EQ(distance(p.second, q), 0.0);
}

TEST(Bundle, GeneratorIsHomomorphism) {
  oracle::Sampler s(27);
  for (const auto& b : kBundles) {
    for (int i = 0; i < 100; ++i) {
      const BundlePoint q = s.point(b);
      const GroupElement g = s.group_element(b.group()), h = s.group_element(b.group());
      const PairElement lhs = vertical_compose(discrete_generator(q, g), discrete_generator(q, h));
      EXPECT_LT(distance(lhs, discrete_generator(q, compose(g, h))), 1e-12);
    }
  }
}

TEST(Bundle, GeneratorIsEquivariant) {
  oracle::Sampler s(28);
  for (const auto& b : kBundles) {
    for (int i = 0; i < 100; ++i) {
      const BundlePoint q = s.point(b);
      const GroupElement g = s.group_element(b.group()), h = s.group_element(b.group());
      const PairElement lhs = discrete_generator(act(h, q), compose(compose(h, g), inverse(h)));
      EXPECT_LT(distance(lhs, act(h, discrete_generator(q, g))), 1e-12);
    }
  }
}

TEST(Bundle, VerticalComposeWithIdentity) {
  oracle::Sampler s(29);
  const Bundle b(2, Group::se3());
  const BundlePoint q0 = s.point(b), q1 = s.point(b);
  const PairElement p{q0, q1};
  EXPECT_LT(distance(vertical_compose(discrete_generator(q0, GroupElement::identity(b.group())), p),
                     p),
            1e-15);
}

TEST(Bundle, VerticalComposeIsEquivariant) {
  oracle::Sampler s(30);
  for (const auto& b : kBundles) {
    for (int i = 0; i < 100; ++i) {
      const BundlePoint q0 = s.point(b), q1 = s.point(b);
      const GroupElement g = s.group_element(b.group()), h = s.group_element(b.group());
      const PairElement lhs =
          vertical_compose(discrete_generator(act(h, q0), compose(compose(h, g), inverse(h))),
                           act(h, PairElement{q0, q1}));
      const PairElement rhs = act(h, vertical_compose(discrete_generator(q0, g), PairElement{q0, q1}));
      EXPECT_LT(distance(lhs, rhs), 1e-12);
    }
  }
}

TEST(Bundle, SuccessiveVerticalCompositesCollapse) {
  oracle::Sampler s(31);
  const Bundle b(2, Group::so3());
  for (int i = 0; i < 50; ++i) {
    const BundlePoint q0 = s.point(b), q1 = s.point(b);
    const GroupElement g = s.group_element(b.group()), h = s.group_element(b.group());
    const PairElement p{q0, q1};
    const PairElement twice =
        vertical_compose(discrete_generator(q0, g), vertical_compose(discrete_generator(q0, h), p));
    EXPECT_LT(oracle::frobenius(twice.second.fiber.matrix(),
                                oracle::brute_matmul(oracle::brute_matmul(g.matrix(), h.matrix()),
                                                     q1.fiber.matrix())),
              1e-12);
    EXPECT_LT(distance(twice, vertical_compose(discrete_generator(q0, compose(g, h)), p)), 1e-12);
  }
}

TEST(Bundle, VerticalComposeErrors) {
  oracle::Sampler s(32);
  const Bundle b(2, Group::so3());
  const BundlePoint q0 = s.point(b), q1 = s.point(b);
  const PairElement not_vertical{q0, q1};
  try {
    (void)vertical_compose(not_vertical, PairElement{q0, q1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotVertical);
  }
  try {
    (void)vertical_compose(discrete_generator(q1, s.group_element(b.group())), PairElement{q0, q1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BasepointMismatch);
  }
}

TEST(Bundle, PointValidation) {
  const Bundle b(2, Group::so3());
  EXPECT_THROW((void)b.point(Eigen::VectorXd::Zero(3), GroupElement::identity(Group::so3())),
               Error);
  EXPECT_THROW((void)b.point(Eigen::VectorXd::Zero(2), GroupElement::identity(Group::se3())),
               Error);
  oracle::Sampler s(33);
  EXPECT_THROW((void)act(GroupElement::identity(Group::se3()), s.point(b)), Error);
}

}  // namespace
}  // namespace dconn
