#ifndef MMC_WEIGHT_HPP
#define MMC_WEIGHT_HPP

#include <optional>
#include <vector>

#include "mmc/space.hpp"

namespace mmc {

struct SingularMass {
  std::vector<double> point;
  double mass;
};

/// Auxiliary Radon measure on the sample set: an absolutely continuous part
/// (per-point density multiplying the base weights) plus optional extra
/// point/surface masses at arbitrary locations.
class RadonWeight {
 public:
  explicit RadonWeight(const MetricSpace* base) : base_(base) {}
  RadonWeight(const MetricSpace* base, std::vector<double> density,
              std::vector<SingularMass> singular, bool density_ge_one = false);

  const MetricSpace& base() const { return *base_; }
  bool has_density() const { return !density_.empty(); }
  double density_at(PointId i) const { return density_.empty() ? 1.0 : density_[i]; }
  std::span<const double> density() const { return density_; }
  std::span<const SingularMass> singular() const { return singular_; }
  bool density_ge_one() const { return density_ge_one_; }

  /// Point mass carried by sample i (density * base weight).
  double point_mass(PointId i) const { return density_at(i) * base_->weight(i); }

  double total() const;

  /// kappa(B(center, radius)), singular masses included per the same
  /// membership predicate.
  double mass_in_ball(std::span<const double> center, double radius, bool closed) const;

  /// Checks kappa(B) >= mu(B) on a deterministic sample of balls; only
  /// meaningful when the density-ge-one flag was declared.
  bool verify_dominates_mu(std::span<const double> radii, std::size_t max_points = 2000) const;

 private:
  const MetricSpace* base_;
  std::vector<double> density_;       // empty means identically 1
  std::vector<SingularMass> singular_;
  bool density_ge_one_ = false;
};

}  // namespace mmc

#endif
