// Copyright 2026 The scan2sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scan2sim/geometry/plane.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "scan2sim/errors.hpp"

namespace scan2sim::geom {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kCosHorizontal = std::cos(15.0 * kPi / 180.0);
const double kCosVertical = std::cos(75.0 * kPi / 180.0);

// Sign-canonical form: horizontal planes point +z, otherwise the dominant
// component is made positive.
Eigen::Vector3d canonical_normal(const Eigen::Vector3d& n) {
  if (std::abs(n.z()) >= kCosHorizontal) return n.z() < 0 ? -n : n;
  int dom = 0;
  n.cwiseAbs().maxCoeff(&dom);
  return n[dom] < 0 ? -n : n;
}

struct Fit {
  Eigen::Vector3d normal;
  double offset;
};

// Least-squares plane through the given points: centroid + smallest
// principal direction of the covariance.
bool lsq_plane(const std::vector<Eigen::Vector3d>& pts, Fit& out) {
  if (pts.size() < 3) return false;
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) {
    Eigen::Vector3d d = p - mean;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  if (eig.info() != Eigen::Success) return false;
  Eigen::Vector3d n = eig.eigenvectors().col(0);  // smallest eigenvalue
  double len = n.norm();
  if (len < 1e-12) return false;
  out.normal = n / len;
  out.offset = out.normal.dot(mean);
  return true;
}

}  // namespace

Eigen::Vector3d PlaneSurface::centroid() const {
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& p : inlier_points) mean += p;
  return inlier_points.empty() ? mean
                               : Eigen::Vector3d(mean / static_cast<double>(
                                                            inlier_points.size()));
}

PlaneOrientation classify_orientation(const Eigen::Vector3d& n) {
  const double c = std::abs(n.z());
  if (c >= kCosHorizontal) return PlaneOrientation::Horizontal;
  if (c <= kCosVertical) return PlaneOrientation::Vertical;
  return PlaneOrientation::Oblique;
}

bool satisfies_constraint(const Eigen::Vector3d& n, PlaneConstraint c) {
  switch (c) {
    case PlaneConstraint::Any: return true;
    case PlaneConstraint::Horizontal:
      return classify_orientation(n) == PlaneOrientation::Horizontal;
    case PlaneConstraint::Vertical:
      return classify_orientation(n) == PlaneOrientation::Vertical;
  }
  return false;
}

PlaneSurface ransac_plane(std::span<const Eigen::Vector3d> points,
                          const RansacParams& params,
                          PlaneConstraint constraint) {
  const size_t n = points.size();
  if (n < 3)
    throw Error(ErrorKind::DegenerateInput, "plane fit needs >= 3 points");

  // Collinearity pre-check: the two largest principal extents must both be
  // nonzero for any plane hypothesis to exist.
  {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& p : points) mean += p;
    mean /= static_cast<double>(n);
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    double scale2 = 0;
    for (const auto& p : points) {
      Eigen::Vector3d d = p - mean;
      cov += d * d.transpose();
      scale2 = std::max(scale2, d.squaredNorm());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    if (eig.eigenvalues()(1) <= 1e-18 * std::max(scale2, 1e-30) *
                                    static_cast<double>(n))
      throw Error(ErrorKind::DegenerateInput, "points are collinear");
  }

  const size_t min_inliers =
      std::min(n, std::max<size_t>(10, n / 100));

  std::mt19937_64 rng(params.seed);
  auto draw = [&](size_t bound) { return static_cast<size_t>(rng() % bound); };

  long long best_count = -1;
  Fit best{};
  for (int iter = 0; iter < params.iters; ++iter) {
    size_t i = draw(n), j = draw(n), k = draw(n);
    if (i == j || j == k || i == k) continue;
    Eigen::Vector3d e1 = points[j] - points[i];
    Eigen::Vector3d e2 = points[k] - points[i];
    Eigen::Vector3d cross = e1.cross(e2);
    double len = cross.norm();
    if (len < 1e-12) continue;
    Eigen::Vector3d normal = cross / len;
    if (!satisfies_constraint(normal, constraint)) continue;
    double offset = normal.dot(points[i]);
    long long count = 0;
    for (const auto& p : points)
      if (std::abs(normal.dot(p) - offset) <= params.dist_thresh) ++count;
    if (count > best_count) {
      best_count = count;
      best = {normal, offset};
    }
  }

  if (best_count < static_cast<long long>(min_inliers))
    throw Error(ErrorKind::NoPlaneFound,
                "no constraint-satisfying plane with enough inliers (best " +
                    std::to_string(std::max<long long>(best_count, 0)) + " of " +
                    std::to_string(min_inliers) + " required)");

  // Refit on the winning hypothesis's inliers; keep the raw hypothesis if
  // the refit drifts out of the constraint band.
  std::vector<Eigen::Vector3d> inliers;
  for (const auto& p : points)
    if (std::abs(best.normal.dot(p) - best.offset) <= params.dist_thresh)
      inliers.push_back(p);

  Fit refit{};
  if (lsq_plane(inliers, refit) && satisfies_constraint(refit.normal, constraint))
    best = refit;

  best.normal = canonical_normal(best.normal);
  // Offset recomputed against the inlier centroid under the canonical sign.
  {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& p : inliers) mean += p;
    mean /= static_cast<double>(inliers.size());
    best.offset = best.normal.dot(mean);
  }

  PlaneSurface surface;
  surface.normal = best.normal;
  surface.offset = best.offset;
  for (const auto& p : points)
    if (std::abs(best.normal.dot(p) - best.offset) <= params.dist_thresh)
      surface.inlier_points.push_back(p);
  if (surface.inlier_points.size() < min_inliers)
    throw Error(ErrorKind::NoPlaneFound, "refit lost consensus");
  surface.orientation = classify_orientation(surface.normal);
  return surface;
}

}  // namespace scan2sim::geom
