#include "mmc/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mmc {

MetricSpace::MetricSpace(std::vector<double> coords, int dim, std::vector<double> weights,
                         double resolution, std::optional<Bounds> bounds)
    : dim_(dim),
      coords_(std::move(coords)),
      weights_(std::move(weights)),
      resolution_(resolution),
      bounds_(std::move(bounds)) {
  if (dim_ < 1) throw std::invalid_argument("space dimension must be >= 1");
  if (coords_.size() != weights_.size() * static_cast<std::size_t>(dim_))
    throw std::invalid_argument("coords/weights size mismatch");
  if (weights_.empty()) throw std::invalid_argument("empty point set");
  if (!(resolution_ > 0.0)) throw std::invalid_argument("resolution must be > 0");
  for (double w : weights_) {
    if (w < 0.0 || !std::isfinite(w)) throw std::invalid_argument("weights must be nonnegative");
  }
  total_weight_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (!(total_weight_ > 0.0)) throw std::invalid_argument("total weight must be positive");
  build_index();
}

MetricSpace MetricSpace::uniform_grid(const Bounds& box, double h, bool include_boundary) {
  const int d = box.dim();
  std::vector<int> counts(d);
  std::vector<double> starts(d);
  for (int i = 0; i < d; ++i) {
    const double span = box.hi[i] - box.lo[i];
    const int steps = static_cast<int>(std::round(span / h));
    if (include_boundary) {
      counts[i] = steps + 1;
      starts[i] = box.lo[i];
    } else {
      counts[i] = steps - 1;
      starts[i] = box.lo[i] + h;
    }
    if (counts[i] < 1) throw std::invalid_argument("grid too coarse for box");
  }
  std::size_t n = 1;
  for (int c : counts) n *= static_cast<std::size_t>(c);
  std::vector<double> coords(n * d);
  std::vector<int> idx(d, 0);
  for (std::size_t p = 0; p < n; ++p) {
    for (int i = 0; i < d; ++i) coords[p * d + i] = starts[i] + idx[i] * h;
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[i] < counts[i]) break;
      idx[i] = 0;
    }
  }
  const double w = std::pow(h, d);
  return MetricSpace(std::move(coords), d, std::vector<double>(n, w), h, box);
}

void MetricSpace::build_index() {
  cell_ = 4.0 * resolution_;
  index_lo_.assign(dim_, kInf);
  std::vector<double> hi(dim_, -kInf);
  const std::size_t n = size();
  for (std::size_t p = 0; p < n; ++p) {
    for (int i = 0; i < dim_; ++i) {
      index_lo_[i] = std::min(index_lo_[i], coords_[p * dim_ + i]);
      hi[i] = std::max(hi[i], coords_[p * dim_ + i]);
    }
  }
  index_dims_.assign(dim_, 1);
  std::size_t ncells = 1;
  for (int i = 0; i < dim_; ++i) {
    index_dims_[i] = static_cast<int>((hi[i] - index_lo_[i]) / cell_) + 1;
    ncells *= static_cast<std::size_t>(index_dims_[i]);
  }
  std::vector<int> counts(ncells, 0);
  auto cell_of = [&](std::size_t p) {
    std::size_t key = 0;
    for (int i = 0; i < dim_; ++i) {
      int c = static_cast<int>((coords_[p * dim_ + i] - index_lo_[i]) / cell_);
      c = std::clamp(c, 0, index_dims_[i] - 1);
      key = key * index_dims_[i] + static_cast<std::size_t>(c);
    }
    return key;
  };
  for (std::size_t p = 0; p < n; ++p) counts[cell_of(p)]++;
  cell_offsets_.assign(ncells + 1, 0);
  for (std::size_t c = 0; c < ncells; ++c) cell_offsets_[c + 1] = cell_offsets_[c] + counts[c];
  cell_items_.assign(n, 0);
  std::vector<int> cursor(cell_offsets_.begin(), cell_offsets_.end() - 1);
  for (std::size_t p = 0; p < n; ++p) cell_items_[cursor[cell_of(p)]++] = static_cast<PointId>(p);
}

void MetricSpace::neighbors_within(std::span<const double> center, double radius,
                                   std::vector<Neighbor>& out) const {
  out.clear();
  const double rq = radius * (1.0 + kBallSnap);
  if (custom_metric_) {
    for (std::size_t p = 0; p < size(); ++p) {
      const double d = custom_metric_(coord(static_cast<PointId>(p)), center);
      if (d <= rq) out.push_back({static_cast<PointId>(p), d});
    }
    return;
  }
  const double r_geo = rq / metric_scale_;
  std::vector<int> lo(dim_), hi(dim_);
  for (int i = 0; i < dim_; ++i) {
    lo[i] = std::clamp(static_cast<int>((center[i] - r_geo - index_lo_[i]) / cell_), 0, index_dims_[i] - 1);
    hi[i] = std::clamp(static_cast<int>((center[i] + r_geo - index_lo_[i]) / cell_), 0, index_dims_[i] - 1);
  }
  std::vector<int> c(lo);
  while (true) {
    std::size_t key = 0;
    for (int i = 0; i < dim_; ++i) key = key * index_dims_[i] + static_cast<std::size_t>(c[i]);
    for (int k = cell_offsets_[key]; k < cell_offsets_[key + 1]; ++k) {
      const PointId p = cell_items_[k];
      const double d = metric_scale_ * euclid(coord(p), center);
      if (d <= rq) out.push_back({p, d});
    }
    int i = dim_ - 1;
    for (; i >= 0; --i) {
      if (++c[i] <= hi[i]) break;
      c[i] = lo[i];
    }
    if (i < 0) break;
  }
}

double MetricSpace::ball_mass(std::span<const double> center, double radius, bool closed) const {
  std::vector<Neighbor> nb;
  neighbors_within(center, radius, nb);
  double s = 0.0;
  for (const auto& n : nb) {
    if (closed ? in_closed_ball(n.dist, radius) : in_open_ball(n.dist, radius)) s += weights_[n.id];
  }
  return s;
}

Ball ball(const MetricSpace& space, PointId center, double radius, bool closed) {
  if (center < 0 || static_cast<std::size_t>(center) >= space.size())
    throw std::out_of_range("unknown point identifier");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
  Ball b{center, radius, closed, {}};
  std::vector<Neighbor> nb;
  space.neighbors_within(space.coord(center), radius, nb);
  for (const auto& n : nb) {
    if (closed ? in_closed_ball(n.dist, radius) : in_open_ball(n.dist, radius))
      b.members.push_back(n.id);
  }
  std::sort(b.members.begin(), b.members.end());
  return b;
}

double measure_of_ball(const MetricSpace& space, const Ball& b) {
  double s = 0.0;
  for (PointId p : b.members) s += space.weight(p);
  return s;
}

namespace {

std::vector<PointId> test_points(const MetricSpace& space, std::size_t max_points) {
  const std::size_t n = space.size();
  std::vector<PointId> pts;
  if (n <= max_points) {
    pts.resize(n);
    std::iota(pts.begin(), pts.end(), 0);
  } else {
    const std::size_t stride = (n + max_points - 1) / max_points;
    for (std::size_t p = 0; p < n; p += stride) pts.push_back(static_cast<PointId>(p));
  }
  return pts;
}

}  // namespace

DoublingEstimate doubling_constant_estimate(const MetricSpace& space,
                                            std::span<const double> radii,
                                            std::size_t max_points) {
  if (radii.empty()) throw std::invalid_argument("empty radius schedule");
  const double floor = space.min_trusted_radius();
  for (double r : radii)
    if (r < floor * (1.0 - kBallSnap))
      throw std::invalid_argument("doubling schedule below trusted radius floor");
  DoublingEstimate est;
  const auto pts = test_points(space, max_points);
  est.tested_points = pts.size();
  std::vector<Neighbor> nb;
  for (double r : radii) {
    double worst = 1.0;
    for (PointId p : pts) {
      space.neighbors_within(space.coord(p), 2.0 * r, nb);
      double m1 = 0.0, m2 = 0.0;
      for (const auto& x : nb) {
        if (in_open_ball(x.dist, r)) m1 += space.weight(x.id);
        if (in_open_ball(x.dist, 2.0 * r)) m2 += space.weight(x.id);
      }
      if (m1 > 0.0) worst = std::max(worst, m2 / m1);
    }
    est.per_radius.emplace_back(r, worst);
    est.c_d_hat = std::max(est.c_d_hat, worst);
  }
  return est;
}

AhlforsReport ahlfors_check(const MetricSpace& space, double Q,
                            std::span<const double> radii, std::size_t max_points) {
  if (!(Q > 1.0)) throw std::invalid_argument("Ahlfors check requires Q > 1");
  if (radii.empty()) throw std::invalid_argument("empty radius schedule");
  AhlforsReport rep;
  const auto pts = test_points(space, max_points);
  std::vector<Neighbor> nb;
  for (double r : radii) {
    const double rQ = std::pow(r, Q);
    double worst = 1.0;
    for (PointId p : pts) {
      const double m = space.ball_mass(space.coord(p), r, /*closed=*/false);
      if (m <= 0.0) {
        rep.note = "degenerate ball with zero mass (under-resolution)";
        rep.pass = false;
        continue;
      }
      worst = std::max(worst, std::max(m / rQ, rQ / m));
    }
    rep.per_radius.emplace_back(r, worst);
    rep.c_a_hat = std::max(rep.c_a_hat, worst);
  }
  // stability: constants at the two smallest radii must not drift by more
  // than 2x against the largest-radius constant
  double c_small = 0.0, c_large = 0.0;
  double r_min = kInf, r_max = 0.0;
  for (const auto& [r, c] : rep.per_radius) {
    if (r < r_min) { r_min = r; c_small = c; }
    if (r > r_max) { r_max = r; c_large = c; }
  }
  rep.pass = rep.note.empty() && std::isfinite(rep.c_a_hat) && c_small <= 2.0 * c_large;
  return rep;
}

InnerRegion inner_region(const MetricSpace& space, double delta) {
  if (!space.bounds()) throw std::invalid_argument("space has no region descriptor");
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  InnerRegion reg{delta, {}};
  const auto& b = *space.bounds();
  for (std::size_t p = 0; p < space.size(); ++p) {
    if (b.dist_to_complement(space.coord(static_cast<PointId>(p))) > delta)
      reg.members.push_back(static_cast<PointId>(p));
  }
  return reg;
}

int connectivity_components(const MetricSpace& space) {
  const std::size_t n = space.size();
  std::vector<int> comp(n, -1);
  std::vector<PointId> stack;
  std::vector<Neighbor> nb;
  int ncomp = 0;
  const double link = 2.0 * space.resolution();
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    stack.push_back(static_cast<PointId>(s));
    while (!stack.empty()) {
      const PointId p = stack.back();
      stack.pop_back();
      space.neighbors_within(space.coord(p), link, nb);
      for (const auto& x : nb) {
        if (comp[x.id] < 0 && in_closed_ball(x.dist, link)) {
          comp[x.id] = ncomp;
          stack.push_back(x.id);
        }
      }
    }
    ++ncomp;
  }
  return ncomp;
}

double upper_regularity_estimate(const MetricSpace& space, double Q,
                                 std::span<const double> radii, std::size_t max_points) {
  const auto pts = test_points(space, max_points);
  double c = 1.0;
  for (double r : radii) {
    const double rQ = std::pow(r, Q);
    for (PointId p : pts) c = std::max(c, space.ball_mass(space.coord(p), r, false) / rQ);
  }
  return c;
}

}  // namespace mmc
