#ifndef MMC_SPACE_HPP
#define MMC_SPACE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mmc/geometry.hpp"

namespace mmc {

struct Neighbor {
  PointId id;
  double dist;
};

/// A discretized metric measure space: sample points with per-point mass,
/// a smallest trusted spacing, and an optional region box.
///
/// The metric is Euclidean scaled by `metric_scale`; a custom oracle can be
/// plugged in for small spaces (neighbor queries then fall back to scans).
class MetricSpace {
 public:
  MetricSpace(std::vector<double> coords, int dim, std::vector<double> weights,
              double resolution, std::optional<Bounds> bounds = std::nullopt);

  /// Grid with spacing h on the box. With include_boundary the outermost
  /// nodes sit on the faces; otherwise all nodes are strictly interior.
  /// Weights are h^dim.
  static MetricSpace uniform_grid(const Bounds& box, double h, bool include_boundary = true);

  int dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> coord(PointId i) const {
    return {coords_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }
  double weight(PointId i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  double total_weight() const { return total_weight_; }
  double resolution() const { return resolution_; }
  /// Radii below this floor are discretization noise; asymptotic estimators refuse them.
  double min_trusted_radius() const { return 2.0 * resolution_; }
  const std::optional<Bounds>& bounds() const { return bounds_; }

  double metric_scale() const { return metric_scale_; }
  void set_metric_scale(double c) { metric_scale_ = c; }
  void set_distance_oracle(std::function<double(std::span<const double>, std::span<const double>)> f) {
    custom_metric_ = std::move(f);
  }
  bool has_custom_metric() const { return static_cast<bool>(custom_metric_); }

  double distance(PointId a, PointId b) const { return distance_to(a, coord(b)); }
  double distance_to(PointId a, std::span<const double> x) const { return metric(coord(a), x); }
  /// Metric applied to arbitrary coordinate pairs (used for image distances).
  double metric(std::span<const double> a, std::span<const double> b) const {
    if (custom_metric_) return custom_metric_(a, b);
    return metric_scale_ * euclid(a, b);
  }

  /// All points with distance(p, center) <= radius * (1 + slack); callers
  /// apply their own open/closed predicate on the returned distances.
  void neighbors_within(std::span<const double> center, double radius, std::vector<Neighbor>& out) const;

  /// Sum of weights over the ball around an arbitrary center.
  double ball_mass(std::span<const double> center, double radius, bool closed) const;

 private:
  void build_index();

  int dim_ = 0;
  std::vector<double> coords_;
  std::vector<double> weights_;
  double total_weight_ = 0.0;
  double resolution_ = 0.0;
  std::optional<Bounds> bounds_;
  double metric_scale_ = 1.0;
  std::function<double(std::span<const double>, std::span<const double>)> custom_metric_;

  // uniform bucket index over the coordinate box
  double cell_ = 0.0;
  std::vector<double> index_lo_;
  std::vector<int> index_dims_;
  std::vector<int> cell_offsets_;   // CSR
  std::vector<PointId> cell_items_;
};

/// Resolved ball: membership per the flagged inequality.
struct Ball {
  PointId center;
  double radius;
  bool closed;
  std::vector<PointId> members;
};

Ball ball(const MetricSpace& space, PointId center, double radius, bool closed = false);

double measure_of_ball(const MetricSpace& space, const Ball& b);

struct DoublingEstimate {
  double c_d_hat = 1.0;
  // per schedule radius: worst ratio mu(B(x,2r))/mu(B(x,r)) over tested points
  std::vector<std::pair<double, double>> per_radius;
  std::size_t tested_points = 0;
};

/// Empirical doubling constant over a radius schedule. Large spaces are
/// subsampled deterministically (max_points, stride order).
DoublingEstimate doubling_constant_estimate(const MetricSpace& space,
                                            std::span<const double> radii,
                                            std::size_t max_points = 20000);

struct AhlforsReport {
  double c_a_hat = 1.0;
  bool pass = false;
  // per radius: worst of max(mu(B)/r^Q, r^Q/mu(B))
  std::vector<std::pair<double, double>> per_radius;
  std::string note;
};

/// Empirical Ahlfors regularity check: c_a_hat bounds both sides of
/// C^-1 r^Q <= mu(B(x,r)) <= C r^Q on the tested pairs. pass requires the
/// per-radius constants to be stable across the schedule (no systematic
/// drift as r shrinks).
AhlforsReport ahlfors_check(const MetricSpace& space, double Q,
                            std::span<const double> radii,
                            std::size_t max_points = 20000);

struct InnerRegion {
  double delta;
  std::vector<PointId> members;
};

/// Points whose distance to the complement of the region box exceeds delta.
InnerRegion inner_region(const MetricSpace& space, double delta);

/// Graph-connectivity diagnostic: number of components when points within
/// 2*resolution are adjacent. Not enforced anywhere.
int connectivity_components(const MetricSpace& space);

/// sup over tested (x, r) of mu(B(x,r)) / r^Q, floored at 1.
double upper_regularity_estimate(const MetricSpace& space, double Q,
                                 std::span<const double> radii,
                                 std::size_t max_points = 20000);

}  // namespace mmc

#endif
