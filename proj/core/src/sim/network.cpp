#include "cellaoi/sim/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cellaoi/error.hpp"
#include "cellaoi/sim/rng.hpp"

namespace cellaoi::sim {

namespace {

double wrap(double x, double side) noexcept {
  double r = std::fmod(x, side);
  if (r < 0.0) r += side;
  if (r >= side) r = 0.0;
  return r;
}

double torus_delta(double d, double side) noexcept {
  d = std::abs(d);
  return std::min(d, side - d);
}

// Uniform bucket grid over the torus for nearest-BS queries.
class BsGrid {
 public:
  BsGrid(const std::vector<Point>& pts, double side, double lambda_b) : pts_(pts), side_(side) {
    cells_ = std::max(1, static_cast<int>(side * std::sqrt(lambda_b)));
    cell_ = side / cells_;
    buckets_.resize(static_cast<std::size_t>(cells_) * cells_);
    for (std::size_t i = 0; i < pts.size(); ++i) buckets_[bucket(pts[i])].push_back(static_cast<int>(i));
  }

  // Nearest BS within radius `limit`, or -1.
  int nearest(Point p, double limit, double& dist2) const {
    const int cx = index(p.x), cy = index(p.y);
    int best = -1;
    dist2 = std::numeric_limits<double>::infinity();
    const int max_ring = cells_ / 2 + 1;
    for (int ring = 0; ring <= max_ring; ++ring) {
      // points of ring k are at least (k - 1) cells away from p
      const double reach = std::max(0, ring - 1) * cell_;
      if (reach > limit || (best >= 0 && reach * reach >= dist2)) break;
      for (int dx = -ring; dx <= ring; ++dx) {
        for (int dy = -ring; dy <= ring; ++dy) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          for (int i : buckets_[flat(cx + dx, cy + dy)]) {
            const double d2 = torus_distance2(p, pts_[static_cast<std::size_t>(i)], side_);
            if (d2 < dist2 || (d2 == dist2 && i < best)) {
              dist2 = d2;
              best = i;
            }
          }
        }
      }
      if (2 * ring + 1 >= cells_) break;  // the whole torus has been scanned
    }
    if (best >= 0 && dist2 > limit * limit) best = -1;
    return best;
  }

 private:
  int index(double c) const { return std::min(cells_ - 1, static_cast<int>(c / cell_)); }
  std::size_t flat(int x, int y) const {
    x = ((x % cells_) + cells_) % cells_;
    y = ((y % cells_) + cells_) % cells_;
    return static_cast<std::size_t>(y) * cells_ + x;
  }
  std::size_t bucket(Point p) const { return flat(index(p.x), index(p.y)); }

  const std::vector<Point>& pts_;
  double side_;
  int cells_;
  double cell_;
  std::vector<std::vector<int>> buckets_;
};

bool draw_once(const NetworkParams& params, double side, Rng& rng, Realization& r) {
  const double area = side * side;
  std::uniform_real_distribution<double> coord(0.0, side);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  std::poisson_distribution<long> n_bs(params.lambda_b * area);
  std::poisson_distribution<long> n_dev(params.lambda_d * area);
  const long nb = n_bs(rng);
  const long nd = params.lambda_d > 0.0 ? n_dev(rng) : 0;

  r.bs_points.resize(static_cast<std::size_t>(nb));
  for (auto& p : r.bs_points) p = {coord(rng), coord(rng)};
  r.device_tx_points.resize(static_cast<std::size_t>(nd));
  r.d2d_rx_offsets.resize(static_cast<std::size_t>(nd));
  for (std::size_t i = 0; i < r.device_tx_points.size(); ++i) {
    r.device_tx_points[i] = {coord(rng), coord(rng)};
    const double phi = angle(rng);
    r.d2d_rx_offsets[i] = {params.r_d * std::cos(phi), params.r_d * std::sin(phi)};
  }
  r.typical_d2d_rx = {coord(rng), coord(rng)};
  const double phi = angle(rng);
  r.typical_d2d_tx = {wrap(r.typical_d2d_rx.x + params.r_d * std::cos(phi), side),
                      wrap(r.typical_d2d_rx.y + params.r_d * std::sin(phi), side)};

  r.serving_bs.assign(static_cast<std::size_t>(nd), -1);
  r.serving_distance.assign(static_cast<std::size_t>(nd), std::numeric_limits<double>::quiet_NaN());
  r.cell_members.assign(static_cast<std::size_t>(nb), {});
  if (nb == 0) return false;

  BsGrid grid(r.bs_points, side, params.lambda_b);
  for (std::size_t i = 0; i < r.device_tx_points.size(); ++i) {
    double d2;
    const int b = grid.nearest(r.device_tx_points[i], params.jm_radius, d2);
    if (b < 0) continue;
    r.serving_bs[i] = b;
    r.serving_distance[i] = std::sqrt(d2);
    r.cell_members[static_cast<std::size_t>(b)].push_back(static_cast<int>(i));
  }

  std::vector<int> occupied;
  for (std::size_t b = 0; b < r.cell_members.size(); ++b)
    if (!r.cell_members[b].empty()) occupied.push_back(static_cast<int>(b));
  if (occupied.empty()) return false;
  std::uniform_int_distribution<std::size_t> pick(0, occupied.size() - 1);
  r.typical_bs = occupied[pick(rng)];
  const auto& members = r.cell_members[static_cast<std::size_t>(r.typical_bs)];
  std::uniform_int_distribution<std::size_t> pick_dev(0, members.size() - 1);
  r.typical_device = members[pick_dev(rng)];
  return true;
}

}  // namespace

double torus_distance2(Point a, Point b, double side) noexcept {
  const double dx = torus_delta(a.x - b.x, side);
  const double dy = torus_delta(a.y - b.y, side);
  return dx * dx + dy * dy;
}

double default_window_side(double lambda_b) noexcept { return 50.0 / std::sqrt(lambda_b); }

double Realization::assigned_fraction() const {
  if (serving_bs.empty()) return 0.0;
  const auto n = std::count_if(serving_bs.begin(), serving_bs.end(), [](int b) { return b >= 0; });
  return static_cast<double>(n) / static_cast<double>(serving_bs.size());
}

Realization shifted(const Realization& r, double dx, double dy) {
  Realization s = r;
  const double side = r.window_side;
  auto mv = [&](Point& p) { p = {wrap(p.x + dx, side), wrap(p.y + dy, side)}; };
  for (auto& p : s.bs_points) mv(p);
  for (auto& p : s.device_tx_points) mv(p);
  mv(s.typical_d2d_rx);
  mv(s.typical_d2d_tx);
  return s;
}

Realization sample_network(const NetworkParams& params, double window_side, std::uint64_t seed) {
  if (!(window_side > 0.0) || !std::isfinite(window_side))
    throw Error(ErrorCode::DomainError, "sample_network: window_side must be positive and finite");
  for (int attempt = 0; attempt < 100; ++attempt) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    Realization r;
    r.window_side = window_side;
    r.seed = seed;
    r.draws = attempt + 1;
    if (!draw_once(params, window_side, rng, r)) continue;
    // move the typical BS to the window center
    const Point c = r.bs_points[static_cast<std::size_t>(r.typical_bs)];
    Realization centered = shifted(r, window_side / 2.0 - c.x, window_side / 2.0 - c.y);
    centered.bs_points[static_cast<std::size_t>(r.typical_bs)] = {window_side / 2.0, window_side / 2.0};
    return centered;
  }
  throw Error(ErrorCode::EmptyTypicalCell, "sample_network: no BS with a non-empty JM cell after 100 draws");
}

}  // namespace cellaoi::sim
