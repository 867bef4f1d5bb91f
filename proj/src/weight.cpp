#include "mmc/weight.hpp"

#include <cmath>
#include <stdexcept>

namespace mmc {

RadonWeight::RadonWeight(const MetricSpace* base, std::vector<double> density,
                         std::vector<SingularMass> singular, bool density_ge_one)
    : base_(base),
      density_(std::move(density)),
      singular_(std::move(singular)),
      density_ge_one_(density_ge_one) {
  if (!density_.empty() && density_.size() != base_->size())
    throw std::invalid_argument("density size mismatch");
  for (double a : density_)
    if (a < 0.0 || !std::isfinite(a)) throw std::invalid_argument("density must be nonnegative");
  for (const auto& s : singular_) {
    if (s.mass < 0.0) throw std::invalid_argument("singular mass must be nonnegative");
    if (static_cast<int>(s.point.size()) != base_->dim())
      throw std::invalid_argument("singular mass dimension mismatch");
  }
}

double RadonWeight::total() const {
  double t = 0.0;
  for (std::size_t i = 0; i < base_->size(); ++i) t += point_mass(static_cast<PointId>(i));
  for (const auto& s : singular_) t += s.mass;
  return t;
}

double RadonWeight::mass_in_ball(std::span<const double> center, double radius, bool closed) const {
  std::vector<Neighbor> nb;
  base_->neighbors_within(center, radius, nb);
  double m = 0.0;
  for (const auto& x : nb) {
    if (closed ? in_closed_ball(x.dist, radius) : in_open_ball(x.dist, radius))
      m += point_mass(x.id);
  }
  const double scale = base_->metric_scale();
  for (const auto& s : singular_) {
    const double d = scale * euclid(s.point, center);
    if (closed ? in_closed_ball(d, radius) : in_open_ball(d, radius)) m += s.mass;
  }
  return m;
}

bool RadonWeight::verify_dominates_mu(std::span<const double> radii, std::size_t max_points) const {
  const std::size_t n = base_->size();
  const std::size_t stride = std::max<std::size_t>(1, n / std::max<std::size_t>(1, max_points));
  for (double r : radii) {
    for (std::size_t p = 0; p < n; p += stride) {
      const auto c = base_->coord(static_cast<PointId>(p));
      const double mu = base_->ball_mass(c, r, false);
      const double ka = mass_in_ball(c, r, false);
      if (ka < mu * (1.0 - 1e-12)) return false;
    }
  }
  return true;
}

}  // namespace mmc
