#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "fresco/errors.hpp"

namespace fresco {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

/// Wraps an angle to [0, 2*pi).
inline double wrap_angle_2pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0) a += 2.0 * kPi;
  return a;
}

/// Plane in implicit form: normal . x + offset = 0, |normal| = 1.
struct Plane {
  Vec3 normal{0, 0, 1};
  double offset{0};

  Plane() = default;
  Plane(const Vec3& n, double d) : normal(n), offset(d) {
    double len = normal.norm();
    if (len < 1e-30)
      throw Error(ErrorKind::Configuration, "plane normal is zero");
    normal /= len;
    offset /= len;
  }

  static Plane through(const Vec3& n, const Vec3& point) {
    Vec3 u = n.normalized();
    return Plane(u, -u.dot(point));
  }

  double signed_distance(const Vec3& p) const { return normal.dot(p) + offset; }

  /// Plane shifted by +t along its own normal.
  Plane translated(double t) const { return Plane(normal, offset - t); }
};

/// Proper rigid motion: x -> R x + t.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static RigidTransform identity() { return {}; }

  static RigidTransform about_z(double theta) {
    RigidTransform T;
    double c = std::cos(theta), s = std::sin(theta);
    T.rotation << c, -s, 0, s, c, 0, 0, 0, 1;
    return T;
  }

  static RigidTransform from_axis_angle(const Vec3& axis, double angle) {
    RigidTransform T;
    double len = axis.norm();
    if (len < 1e-30) return T;
    T.rotation = Eigen::AngleAxisd(angle, axis / len).toRotationMatrix();
    return T;
  }

  static RigidTransform translate(const Vec3& t) {
    RigidTransform T;
    T.translation = t;
    return T;
  }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 apply_vector(const Vec3& v) const { return rotation * v; }

  RigidTransform inverse() const {
    RigidTransform T;
    T.rotation = rotation.transpose();
    T.translation = -(T.rotation * translation);
    return T;
  }

  /// Composition: (*this) after other, i.e. x -> this(other(x)).
  RigidTransform operator*(const RigidTransform& other) const {
    RigidTransform T;
    T.rotation = rotation * other.rotation;
    T.translation = rotation * other.translation + translation;
    return T;
  }

  Plane apply_to(const Plane& pl) const {
    Vec3 n = rotation * pl.normal;
    // point on plane: -offset * normal
    Vec3 p = apply(-pl.offset * pl.normal);
    return Plane::through(n, p);
  }

  bool is_rigid(double tol = 1e-9) const {
    Mat3 should_be_id = rotation.transpose() * rotation;
    return (should_be_id - Mat3::Identity()).norm() < tol &&
           std::abs(rotation.determinant() - 1.0) < tol;
  }
};

/// An infinite line (used for the central axis; direction normalized).
struct Line3 {
  Vec3 point = Vec3::Zero();
  Vec3 dir = Vec3(0, 0, 1);
};

struct Aabb {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = Vec3::Constant(std::numeric_limits<double>::lowest());

  void expand(const Vec3& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  bool empty() const { return lo.x() > hi.x(); }
  Vec3 center() const { return 0.5 * (lo + hi); }
  Vec3 extent() const { return hi - lo; }
  double diagonal() const { return empty() ? 0.0 : (hi - lo).norm(); }
  bool overlaps(const Aabb& o) const {
    return (lo.array() <= o.hi.array()).all() && (hi.array() >= o.lo.array()).all();
  }
};

}  // namespace fresco
