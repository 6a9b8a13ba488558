#pragma once

// Slotted acoustic link between operator and vehicle. One byte leaves the
// surface modem per slot; whatever the operator submitted last before the
// slot boundary is what goes out. Each transmission is independently lost
// with probability loss_prob, otherwise it arrives after a truncated-normal
// delay.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "teleop/time.hpp"

namespace teleop::link {

struct LinkConfig {
  double slot_interval = 1.6;  ///< seconds; slot k fires at k * slot_interval, k >= 1
  double loss_prob = 0.15;
  double delay_mean = 1.90;  ///< seconds
  double delay_var = 0.13;   ///< seconds^2
  double delay_min = 0.1;    ///< truncation floor, seconds
  std::uint64_t rng_seed = 1;
  /// Re-send the previous byte in slots where the operator submitted nothing.
  /// When false a slot only carries a freshly submitted byte that differs
  /// from the last one sent.
  bool repeat_last = true;

  /// Throws ContractViolation.
  void validate() const;
  friend bool operator==(const LinkConfig&, const LinkConfig&) = default;
};

/// Ground truth for one slot firing.
struct Transmission {
  std::uint64_t seq = 0;
  SimTime t_sent{};
  std::uint8_t byte = 0;
  bool lost = false;
  SimTime t_arrive{};  ///< meaningless when lost

  friend bool operator==(const Transmission&, const Transmission&) = default;
};

struct Delivery {
  std::uint64_t seq = 0;
  std::uint8_t byte = 0;
  SimTime t_sent{};
  SimTime t_arrive{};

  friend bool operator==(const Delivery&, const Delivery&) = default;
};

struct AdvanceResult {
  std::vector<Transmission> transmitted;  ///< in slot order
  std::vector<Delivery> delivered;        ///< in arrival order, ties by seq
};

class Link {
 public:
  explicit Link(LinkConfig cfg);

  /// Replaces the pending byte; the previous one is dropped untransmitted.
  /// Requires t < next_slot_time(), i.e. advance() has already fired every
  /// slot up to t.
  void submit(std::uint8_t byte, SimTime t);

  /// Fires every slot boundary <= t_now and returns transmissions plus all
  /// arrivals with t_arrive <= t_now. t_now must not decrease between calls.
  AdvanceResult advance(SimTime t_now);

  SimTime next_slot_time() const { return slot_interval_ * static_cast<std::int64_t>(next_slot_index_); }
  SimTime slot_interval() const { return slot_interval_; }
  std::optional<std::uint8_t> pending() const { return pending_; }
  std::optional<std::uint8_t> last_transmitted() const { return last_sent_; }
  std::size_t in_flight() const { return in_flight_.size(); }
  const LinkConfig& config() const { return cfg_; }

 private:
  SimTime draw_delay();

  LinkConfig cfg_;
  SimTime slot_interval_;
  SimTime delay_floor_;
  std::uint64_t next_slot_index_ = 1;
  std::uint64_t next_seq_ = 1;
  std::optional<SimTime> last_advance_;
  std::optional<std::uint8_t> pending_;
  bool fresh_submission_ = false;
  std::optional<std::uint8_t> last_sent_;
  std::map<std::pair<SimTime, std::uint64_t>, Delivery> in_flight_;

  std::mt19937_64 rng_;
  std::bernoulli_distribution loss_;
  std::normal_distribution<double> delay_;
};

/// Receiver-side reordering policy: a delivery older (by seq) than one
/// already accepted is stale and dropped.
class StaleFilter {
 public:
  bool accept(std::uint64_t seq);
  std::vector<Delivery> filter(std::span<const Delivery> arrivals);
  std::optional<std::uint64_t> highest() const { return highest_; }

 private:
  std::optional<std::uint64_t> highest_;
};

/// CSV export: seq,t_sent,byte,lost,t_arrive (t_arrive empty when lost).
void write_transmissions_csv(std::ostream& os, std::span<const Transmission> rows);
std::vector<Transmission> read_transmissions_csv(std::istream& is, const std::string& source);

}  // namespace teleop::link
