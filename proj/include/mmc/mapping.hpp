#ifndef MMC_MAPPING_HPP
#define MMC_MAPPING_HPP

#include <memory>
#include <vector>

#include "mmc/space.hpp"

namespace mmc {

/// Sampled mapping f: domain -> target. Values are target coordinates per
/// domain point; f is data, never interpolated between samples.
class SampledMapping {
 public:
  SampledMapping(const MetricSpace* domain, const MetricSpace* target,
                 std::vector<double> values, bool injective = false);

  const MetricSpace& domain() const { return *domain_; }
  const MetricSpace& target() const { return *target_; }
  int target_dim() const { return tdim_; }
  bool injective() const { return injective_; }

  std::span<const double> value(PointId i) const {
    return {values_.data() + static_cast<std::size_t>(i) * tdim_, static_cast<std::size_t>(tdim_)};
  }

  /// d_Y(f(a), f(b)); uses the target's metric (scale included).
  double image_distance(PointId a, PointId b) const { return target_->metric(value(a), value(b)); }

  /// sup{ d_Y(f(y), f(x)) : d(y,x) <= r, y sampled }. Always >= 0 (x itself
  /// is a candidate).
  double sup_image_distance(PointId x, double r) const;

  /// inf{ d_Y(f(y), f(x)) : d(y,x) >= r, y sampled }. Returns +inf when no
  /// sampled point lies that far out (sampling artifact, flagged upstream).
  double inf_image_distance_outside(PointId x, double r) const;

  /// L/l with the zero-denominator-to-infinity convention.
  double distortion_ratio(PointId x, double r) const;

 private:
  double image_distance_custom(PointId a, PointId b) const;
  void verify_injectivity() const;
  void build_image_index();

  const MetricSpace* domain_;
  const MetricSpace* target_;
  int tdim_;
  std::vector<double> values_;
  bool injective_ = false;

  // bucket index over image points, for the far-set infimum search
  double icell_ = 0.0;
  std::vector<double> ilo_;
  std::vector<int> idims_;
  std::vector<int> ioffsets_;
  std::vector<PointId> iitems_;
};

}  // namespace mmc

#endif
