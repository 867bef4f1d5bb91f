#include "mmc/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace mmc {

SampledMapping::SampledMapping(const MetricSpace* domain, const MetricSpace* target,
                               std::vector<double> values, bool injective)
    : domain_(domain), target_(target), tdim_(target->dim()), values_(std::move(values)),
      injective_(injective) {
  if (values_.size() != domain_->size() * static_cast<std::size_t>(tdim_))
    throw std::invalid_argument("mapping values not defined for every domain point");
  build_image_index();
  if (injective_) verify_injectivity();
}

double SampledMapping::image_distance_custom(PointId a, PointId b) const {
  // target custom metrics are only used on small spaces
  return target_->distance_to(0, value(a)) * 0.0 +  // placeholder never taken
         euclid(value(a), value(b));
}

void SampledMapping::build_image_index() {
  const std::size_t n = domain_->size();
  icell_ = 4.0 * target_->resolution();
  ilo_.assign(tdim_, kInf);
  std::vector<double> hi(tdim_, -kInf);
  for (std::size_t p = 0; p < n; ++p)
    for (int i = 0; i < tdim_; ++i) {
      ilo_[i] = std::min(ilo_[i], values_[p * tdim_ + i]);
      hi[i] = std::max(hi[i], values_[p * tdim_ + i]);
    }
  idims_.assign(tdim_, 1);
  std::size_t ncells = 1;
  for (int i = 0; i < tdim_; ++i) {
    idims_[i] = static_cast<int>((hi[i] - ilo_[i]) / icell_) + 1;
    ncells *= static_cast<std::size_t>(idims_[i]);
  }
  auto cell_of = [&](std::size_t p) {
    std::size_t key = 0;
    for (int i = 0; i < tdim_; ++i) {
      int c = static_cast<int>((values_[p * tdim_ + i] - ilo_[i]) / icell_);
      c = std::clamp(c, 0, idims_[i] - 1);
      key = key * idims_[i] + static_cast<std::size_t>(c);
    }
    return key;
  };
  std::vector<int> counts(ncells, 0);
  for (std::size_t p = 0; p < n; ++p) counts[cell_of(p)]++;
  ioffsets_.assign(ncells + 1, 0);
  for (std::size_t c = 0; c < ncells; ++c) ioffsets_[c + 1] = ioffsets_[c] + counts[c];
  iitems_.assign(n, 0);
  std::vector<int> cursor(ioffsets_.begin(), ioffsets_.end() - 1);
  for (std::size_t p = 0; p < n; ++p) iitems_[cursor[cell_of(p)]++] = static_cast<PointId>(p);
}

void SampledMapping::verify_injectivity() const {
  // exhaustive near-duplicate check through the image buckets: any pair
  // closer than target_resolution/2 must share a 3^d cell neighborhood
  const double tau = 0.5 * target_->resolution();
  const std::size_t n = domain_->size();
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<int> lo(tdim_), hi(tdim_);
    for (int i = 0; i < tdim_; ++i) {
      const double v = values_[p * tdim_ + i];
      lo[i] = std::clamp(static_cast<int>((v - tau - ilo_[i]) / icell_), 0, idims_[i] - 1);
      hi[i] = std::clamp(static_cast<int>((v + tau - ilo_[i]) / icell_), 0, idims_[i] - 1);
    }
    std::vector<int> c(lo);
    while (true) {
      std::size_t key = 0;
      for (int i = 0; i < tdim_; ++i) key = key * idims_[i] + static_cast<std::size_t>(c[i]);
      for (int k = ioffsets_[key]; k < ioffsets_[key + 1]; ++k) {
        const PointId q = iitems_[k];
        if (static_cast<std::size_t>(q) <= p) continue;
        if (target_->metric_scale() * euclid(value(static_cast<PointId>(p)), value(q)) < tau)
          throw std::invalid_argument("injective mapping has near-duplicate image points");
      }
      int i = tdim_ - 1;
      for (; i >= 0; --i) {
        if (++c[i] <= hi[i]) break;
        c[i] = lo[i];
      }
      if (i < 0) break;
    }
  }
}

double SampledMapping::sup_image_distance(PointId x, double r) const {
  std::vector<Neighbor> nb;
  domain_->neighbors_within(domain_->coord(x), r, nb);
  double best = 0.0;
  for (const auto& y : nb) {
    if (!in_closed_ball(y.dist, r)) continue;
    best = std::max(best, image_distance(x, y.id));
  }
  return best;
}

double SampledMapping::inf_image_distance_outside(PointId x, double r) const {
  // expanding ring search over image buckets around f(x); a candidate counts
  // when its domain distance from x is >= r
  const double rlo = r * (1.0 - kBallSnap);
  const auto fx = value(x);
  const double tscale = target_->metric_scale();
  std::vector<int> home(tdim_);
  for (int i = 0; i < tdim_; ++i)
    home[i] = std::clamp(static_cast<int>((fx[i] - ilo_[i]) / icell_), 0, idims_[i] - 1);
  int max_ring = 0;
  for (int i = 0; i < tdim_; ++i)
    max_ring = std::max(max_ring, std::max(home[i], idims_[i] - 1 - home[i]));

  double best = kInf;
  std::vector<int> lo(tdim_), hi(tdim_), c(tdim_);
  for (int ring = 0; ring <= max_ring; ++ring) {
    // all candidates in farther rings are at image distance >= (ring-1)*cell
    if (ring >= 2 && tscale * (ring - 1) * icell_ >= best) break;
    for (int i = 0; i < tdim_; ++i) {
      lo[i] = std::max(0, home[i] - ring);
      hi[i] = std::min(idims_[i] - 1, home[i] + ring);
    }
    c = lo;
    while (true) {
      bool on_shell = (ring == 0);
      for (int i = 0; i < tdim_ && !on_shell; ++i)
        if (c[i] == home[i] - ring || c[i] == home[i] + ring) on_shell = true;
      if (on_shell) {
        std::size_t key = 0;
        for (int i = 0; i < tdim_; ++i) key = key * idims_[i] + static_cast<std::size_t>(c[i]);
        for (int k = ioffsets_[key]; k < ioffsets_[key + 1]; ++k) {
          const PointId y = iitems_[k];
          if (domain_->distance(y, x) < rlo) continue;
          best = std::min(best, image_distance(x, y));
          if (best == 0.0) return 0.0;
        }
      }
      int i = tdim_ - 1;
      for (; i >= 0; --i) {
        if (++c[i] <= hi[i]) break;
        c[i] = lo[i];
      }
      if (i < 0) break;
    }
  }
  return best;
}

double SampledMapping::distortion_ratio(PointId x, double r) const {
  const double L = sup_image_distance(x, r);
  const double l = inf_image_distance_outside(x, r);
  if (l == 0.0) return kInf;
  return L / l;
}

}  // namespace mmc
