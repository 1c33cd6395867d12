#include "cellaoi/sim/slots.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/random/exponential_distribution.hpp>

#include "cellaoi/error.hpp"
#include "cellaoi/sim/rng.hpp"

namespace cellaoi::sim {

namespace {

class SlotEngine {
 public:
  SlotEngine(const Realization& r, const NetworkParams& p, std::uint64_t seed)
      : r_(r), p_(p), rng_(make_rng(seed)), cochannel_(p.access_mode == AccessMode::CoChannel) {
    const std::size_t nd = r.device_tx_points.size();
    const double half_alpha = p.alpha / 2.0;
    const Point bs = r.bs_points[static_cast<std::size_t>(r.typical_bs)];
    gain_bs_.resize(nd);
    gain_rx_.resize(nd);
    tx_power_.resize(nd);
    for (std::size_t i = 0; i < nd; ++i) {
      const Point x = r.device_tx_points[i];
      gain_bs_[i] = std::pow(std::max(torus_distance2(x, bs, r.window_side), 1e-18), -half_alpha);
      gain_rx_[i] = std::pow(std::max(torus_distance2(x, r.typical_d2d_rx, r.window_side), 1e-18), -half_alpha);
      // update power relative to p_d; irrelevant for devices outside every JM cell
      tx_power_[i] = r.serving_bs[i] >= 0
                         ? p.power_ratio() * std::pow(r.serving_distance[i], p.alpha * p.epsilon)
                         : 0.0;
    }
    d2d_signal_ = std::pow(p.r_d, -p.alpha);
    stamp_.assign(nd, 0);
    for (std::size_t b = 0; b < r.cell_members.size(); ++b)
      if (!r.cell_members[b].empty() && static_cast<int>(b) != r.typical_bs) occupied_.push_back(static_cast<int>(b));
    if (p.q_d > 0.0 && p.q_d < 1.0) inv_rate_ = -1.0 / std::log1p(-p.q_d);
  }

  Rng& rng() { return rng_; }

  struct Field {
    double interference_bs = 0.0;
    double interference_rx = 0.0;
    std::int64_t d2d_active = 0;
  };

  // Draws one slot of the transmitter field given the typical BS's choice.
  // Fading of the links into the typical BS is drawn only when `at_bs`.
  Field draw(int typical_choice, bool at_bs, bool at_rx, SlotOutcome* out) {
    ++slot_stamp_;
    Field f;
    if (out) {
      out->scheduled_device.assign(r_.bs_points.size(), -1);
      out->d2d_active.assign(r_.device_tx_points.size(), 0);
    }
    auto schedule = [&](int b, int dev) {
      stamp_[static_cast<std::size_t>(dev)] = slot_stamp_;
      if (out) out->scheduled_device[static_cast<std::size_t>(b)] = dev;
      const auto i = static_cast<std::size_t>(dev);
      if (at_rx && cochannel_) f.interference_rx += fade() * tx_power_[i] * gain_rx_[i];
    };
    schedule(r_.typical_bs, typical_choice);
    for (int b : occupied_) {
      const auto& m = r_.cell_members[static_cast<std::size_t>(b)];
      const int dev = m[pick(m.size())];
      schedule(b, dev);
      const auto i = static_cast<std::size_t>(dev);
      if (at_bs) f.interference_bs += fade() * tx_power_[i] * gain_bs_[i];
    }

    const std::size_t nd = r_.device_tx_points.size();
    auto d2d = [&](std::size_t i) {
      if (stamp_[i] == slot_stamp_) return;  // scheduled devices send updates only
      ++f.d2d_active;
      if (out) out->d2d_active[i] = 1;
      if (at_bs && cochannel_) f.interference_bs += fade() * gain_bs_[i];
      if (at_rx) f.interference_rx += fade() * gain_rx_[i];
    };
    if (p_.q_d >= 1.0) {
      for (std::size_t i = 0; i < nd; ++i) d2d(i);
    } else if (p_.q_d > 0.0) {
      // geometric skipping over the Bernoulli(q_d) trials
      std::size_t i = skip();
      while (i < nd) {
        d2d(i);
        i += 1 + skip();
      }
    }
    return f;
  }

  double fade() { return exp1_(rng_); }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  double update_signal() const {
    return tx_power_[static_cast<std::size_t>(r_.typical_device)] * gain_bs_[static_cast<std::size_t>(r_.typical_device)];
  }
  double d2d_signal() const { return d2d_signal_; }

 private:
  // Geom(q_d) failures before the next success, as floor(E / -log(1 - q_d)).
  std::size_t skip() {
    const double s = std::floor(exp1_(rng_) * inv_rate_);
    return s > 1e15 ? static_cast<std::size_t>(1e15) : static_cast<std::size_t>(s);
  }

  const Realization& r_;
  const NetworkParams& p_;
  Rng rng_;
  bool cochannel_;
  std::vector<double> gain_bs_, gain_rx_, tx_power_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t slot_stamp_ = 0;
  std::vector<int> occupied_;
  double d2d_signal_ = 0.0;
  double inv_rate_ = 1.0;
  boost::random::exponential_distribution<double> exp1_{1.0};  // ziggurat
};

double sir(double signal, double interference) {
  return interference > 0.0 ? signal / interference : std::numeric_limits<double>::infinity();
}

}  // namespace

double SlotRun::update_success_rate() const {
  return scheduled_slots > 0 ? static_cast<double>(update_successes) / static_cast<double>(scheduled_slots)
                             : std::numeric_limits<double>::quiet_NaN();
}

double SlotRun::d2d_success_rate() const {
  return d2d_slots > 0 ? static_cast<double>(d2d_successes) / static_cast<double>(d2d_slots)
                       : std::numeric_limits<double>::quiet_NaN();
}

SlotRun run_slots(const Realization& realization, const NetworkParams& params, int n_slots, std::uint64_t seed,
                  const SlotOptions& options) {
  if (n_slots < 1) throw Error(ErrorCode::DomainError, "run_slots: n_slots must be >= 1");
  if (realization.typical_bs < 0 || realization.typical_device < 0)
    throw Error(ErrorCode::EmptyTypicalCell, "run_slots: realization has no typical cell");

  SlotEngine engine(realization, params, seed);
  const auto& members = realization.cell_members[static_cast<std::size_t>(realization.typical_bs)];
  const auto typical_pos = static_cast<std::size_t>(
      std::find(members.begin(), members.end(), realization.typical_device) - members.begin());

  SlotRun run;
  run.n_slots = n_slots;
  run.typical_load = static_cast<int>(members.size());
  run.typical_cell_schedules.assign(members.size(), 0);
  run.burn_in = options.burn_in >= 0 ? std::min(options.burn_in, n_slots - 1)
                                     : std::min(10 * run.typical_load, n_slots / 2);
  if (options.record_aoi_path) run.aoi_path.reserve(static_cast<std::size_t>(n_slots) + 1);
  if (options.record_outcomes) run.outcomes.reserve(static_cast<std::size_t>(n_slots));

  const std::size_t nd = realization.device_tx_points.size();
  long aoi = 1;
  double aoi_sum = 0.0;
  if (options.record_aoi_path) run.aoi_path.push_back(1);

  for (int k = 0; k < n_slots; ++k) {
    const std::size_t choice = engine.pick(members.size());
    ++run.typical_cell_schedules[choice];
    const bool scheduled = choice == typical_pos;
    const bool at_bs = scheduled;
    const bool at_rx = options.evaluate_d2d;

    SlotOutcome outcome;
    outcome.typical_scheduled = scheduled;
    bool success = false;
    if (at_bs || at_rx || options.record_outcomes) {
      const auto field = engine.draw(members[choice], at_bs, at_rx, options.record_outcomes ? &outcome : nullptr);
      run.d2d_active_total += field.d2d_active;
      run.device_slot_total += static_cast<std::int64_t>(nd);
      if (at_bs) {
        outcome.sir_at_typical_bs = sir(engine.fade() * engine.update_signal(), field.interference_bs);
        success = outcome.sir_at_typical_bs > params.beta_b;
        outcome.update_success = success;
        ++run.scheduled_slots;
        if (success) ++run.update_successes;
      }
      if (at_rx) {
        outcome.sir_at_typical_d2d_rx = sir(engine.fade() * engine.d2d_signal(), field.interference_rx);
        outcome.d2d_success = outcome.sir_at_typical_d2d_rx > params.beta_d;
        ++run.d2d_slots;
        if (outcome.d2d_success) ++run.d2d_successes;
      }
    }
    aoi = success ? 1 : aoi + 1;
    if (k + 1 > run.burn_in) aoi_sum += static_cast<double>(aoi);
    if (options.record_aoi_path) run.aoi_path.push_back(static_cast<int>(std::min<long>(aoi, INT32_MAX)));
    if (options.record_outcomes) run.outcomes.push_back(std::move(outcome));
  }
  run.mean_aoi = aoi_sum / static_cast<double>(n_slots - run.burn_in);
  return run;
}

}  // namespace cellaoi::sim
