#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace dconn {

enum class GroupKind { SO2, SO3, SE3, Rn };

/// Identifies a matrix Lie group together with its fixed Lie-algebra basis.
///
/// Matrix representations and algebra coordinates:
///   SO(2): 2x2 rotation; so(2) coordinate theta, hat(theta) = [0 -theta; theta 0].
///   SO(3): 3x3 rotation; so(3) = R^3 with the standard hat map (hat(w) v = w x v).
///   SE(3): 4x4 homogeneous [R p; 0 1]; se(3) coordinates ordered (omega, v).
///   R^n:   (n+1)x(n+1) homogeneous translation [I v; 0 1]; composition is addition.
class Group {
 public:
  static Group so2() { return Group(GroupKind::SO2, 0); }
  static Group so3() { return Group(GroupKind::SO3, 0); }
  static Group se3() { return Group(GroupKind::SE3, 0); }
  static Group rn(int n);

  /// Parses "SO2", "SO3", "SE3" or "R<n>" (e.g. "R1").
  static Group parse(std::string_view name);

  [[nodiscard]] GroupKind kind() const noexcept { return kind_; }
  [[nodiscard]] int matrix_size() const noexcept;
  [[nodiscard]] int algebra_dim() const noexcept;
  [[nodiscard]] bool is_abelian() const noexcept;
  [[nodiscard]] std::string name() const;

  friend bool operator==(const Group&, const Group&) = default;

 private:
  Group(GroupKind kind, int n) : kind_(kind), n_(n) {}

  GroupKind kind_;
  int n_;
};

/// Element of a matrix Lie group. Immutable value type.
class GroupElement {
 public:
  /// Validates shape and, for rotation blocks, orthonormality (tolerance 1e-10)
  /// and positive determinant.
  static GroupElement from_matrix(const Group& group, const Eigen::MatrixXd& matrix);
  static GroupElement identity(const Group& group);

  [[nodiscard]] const Group& group() const noexcept { return group_; }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

  /// Frobenius norm of (R^T R - I) over the rotation block; zero for R^n.
  [[nodiscard]] double orthonormality_defect() const;

 private:
  GroupElement(Group group, Eigen::MatrixXd matrix)
      : group_(group), matrix_(std::move(matrix)) {}

  friend GroupElement make_unchecked(const Group&, Eigen::MatrixXd);

  Group group_;
  Eigen::MatrixXd matrix_;
};

/// Element of the Lie algebra in the group's fixed coordinate basis.
class AlgebraElement {
 public:
  AlgebraElement(const Group& group, Eigen::VectorXd coords);
  static AlgebraElement zero(const Group& group);
  static AlgebraElement basis(const Group& group, int index);

  [[nodiscard]] const Group& group() const noexcept { return group_; }
  [[nodiscard]] const Eigen::VectorXd& coords() const noexcept { return coords_; }

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(double s, const AlgebraElement& a);

 private:
  Group group_;
  Eigen::VectorXd coords_;
};

GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
inline GroupElement operator*(const GroupElement& a, const GroupElement& b) { return compose(a, b); }

Eigen::MatrixXd hat(const AlgebraElement& xi);
AlgebraElement vee(const Group& group, const Eigen::MatrixXd& m);

/// Closed-form exponential (Rodrigues for SO(3), the V-matrix form for SE(3)).
GroupElement exp(const AlgebraElement& xi);

/// Principal logarithm. Throws Errc::CutLocus when the rotation angle is
/// within 1e-6 of pi.
AlgebraElement log(const GroupElement& g);

/// Ad_g xi = vee(g hat(xi) g^-1).
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& xi);

/// Matrix of Ad_g in the algebra basis (column i is Ad_g e_i).
Eigen::MatrixXd adjoint_matrix(const GroupElement& g);

/// [xi, chi] = vee(hat(xi) hat(chi) - hat(chi) hat(xi)).
AlgebraElement bracket(const AlgebraElement& xi, const AlgebraElement& chi);

/// Norm invariant under conjugation g -> h g h^-1.
///
/// SO(2), SO(3), R^n: |log g|_2. SE(3) has no conjugation-invariant Euclidean
/// norm on se(3), so the screw invariants are used instead:
/// sqrt(theta^2 + d^2) with theta the rotation angle and d the translation
/// along the screw axis; for pure translations this is |p|.
double conj_invariant_norm(const GroupElement& g);

/// Cayley map (I - X/2)^-1 (I + X/2) with X = hat(xi).
GroupElement cayley(const AlgebraElement& xi);

/// Inverse Cayley map 2 (g - I)(g + I)^-1. Throws Errc::CutLocus near
/// rotations by pi where g + I is singular.
AlgebraElement cayley_inverse(const GroupElement& g);

/// Frobenius distance between matrices of two elements of the same group.
double distance(const GroupElement& a, const GroupElement& b);

void require_same_group(const Group& a, const Group& b);

}  // namespace dconn
