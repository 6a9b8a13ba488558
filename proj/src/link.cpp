#include "teleop/link.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "teleop/errors.hpp"

namespace teleop::link {

void LinkConfig::validate() const {
  if (!(slot_interval > 0.0)) throw ContractViolation("link.slot_interval must be > 0");
  if (!(loss_prob >= 0.0 && loss_prob <= 1.0)) throw ContractViolation("link.loss_prob must be in [0,1]");
  if (!(delay_min > 0.0)) throw ContractViolation("link.delay_min must be > 0");
  if (!(delay_mean >= delay_min)) throw ContractViolation("link.delay_mean must be >= delay_min");
  if (!(delay_var >= 0.0)) throw ContractViolation("link.delay_var must be >= 0");
  if (from_seconds(slot_interval).count() <= 0) throw ContractViolation("link.slot_interval below clock resolution");
}

Link::Link(LinkConfig cfg)
    : cfg_((cfg.validate(), cfg)),
      slot_interval_(from_seconds(cfg.slot_interval)),
      delay_floor_(SimTime{static_cast<std::int64_t>(std::ceil(cfg.delay_min * 1e6))}),
      rng_(cfg.rng_seed),
      loss_(cfg.loss_prob),
      delay_(cfg.delay_mean, cfg.delay_var > 0.0 ? std::sqrt(cfg.delay_var) : 1.0) {}

void Link::submit(std::uint8_t byte, SimTime t) {
  if (t >= next_slot_time())
    throw ContractViolation("submit at t=" + format_seconds(t) + " but slot at " + format_seconds(next_slot_time()) +
                            " has not fired");
  pending_ = byte;
  fresh_submission_ = true;
}

SimTime Link::draw_delay() {
  if (cfg_.delay_var == 0.0) return std::max(from_seconds(cfg_.delay_mean), delay_floor_);
  // Rejection sampling; the floor sits several sigma below the mean for any
  // realistic config, so the fallback only guards pathological settings.
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double d = delay_(rng_);
    if (d >= cfg_.delay_min) return std::max(from_seconds(d), delay_floor_);
  }
  return delay_floor_;
}

AdvanceResult Link::advance(SimTime t_now) {
  if (last_advance_ && t_now < *last_advance_)
    throw ContractViolation("link time went backwards: " + format_seconds(t_now) + " < " +
                            format_seconds(*last_advance_));
  last_advance_ = t_now;

  AdvanceResult out;
  while (next_slot_time() <= t_now) {
    const SimTime t_slot = next_slot_time();
    ++next_slot_index_;

    bool send = pending_.has_value();
    if (send && !cfg_.repeat_last) send = fresh_submission_ && pending_ != last_sent_;
    fresh_submission_ = false;
    if (!send) continue;

    Transmission tx;
    tx.seq = next_seq_++;
    tx.t_sent = t_slot;
    tx.byte = *pending_;
    // Delay is drawn for lost slots too, keeping the loss and delay streams aligned.
    tx.lost = loss_(rng_);
    const SimTime delay = draw_delay();
    last_sent_ = tx.byte;
    if (!tx.lost) {
      tx.t_arrive = t_slot + delay;
      in_flight_.emplace(std::pair{tx.t_arrive, tx.seq}, Delivery{tx.seq, tx.byte, tx.t_sent, tx.t_arrive});
    }
    out.transmitted.push_back(tx);
  }

  while (!in_flight_.empty() && in_flight_.begin()->first.first <= t_now) {
    out.delivered.push_back(in_flight_.begin()->second);
    in_flight_.erase(in_flight_.begin());
  }
  return out;
}

bool StaleFilter::accept(std::uint64_t seq) {
  if (highest_ && seq <= *highest_) return false;
  highest_ = seq;
  return true;
}

std::vector<Delivery> StaleFilter::filter(std::span<const Delivery> arrivals) {
  std::vector<Delivery> kept;
  for (const auto& d : arrivals)
    if (accept(d.seq)) kept.push_back(d);
  return kept;
}

void write_transmissions_csv(std::ostream& os, std::span<const Transmission> rows) {
  os << "seq,t_sent,byte,lost,t_arrive\n";
  for (const auto& tx : rows) {
    os << tx.seq << ',' << format_seconds(tx.t_sent) << ',' << static_cast<int>(tx.byte) << ',' << (tx.lost ? 1 : 0)
       << ',';
    if (!tx.lost) os << format_seconds(tx.t_arrive);
    os << '\n';
  }
}

std::vector<Transmission> read_transmissions_csv(std::istream& is, const std::string& source) {
  std::vector<Transmission> rows;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(is, line)) return rows;
  ++line_no;
  if (line != "seq,t_sent,byte,lost,t_arrive") throw ParseError(source + ":1", "unexpected header");

  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    if (cols.size() == 4 && line.back() == ',') cols.emplace_back();
    if (cols.size() != 5) throw ParseError(where, "expected 5 columns");
    try {
      Transmission tx;
      tx.seq = std::stoull(cols[0]);
      tx.t_sent = parse_seconds(cols[1]);
      const int byte = std::stoi(cols[2]);
      if (byte < 0 || byte > 255) throw ParseError(where, "byte out of range");
      tx.byte = static_cast<std::uint8_t>(byte);
      if (cols[3] != "0" && cols[3] != "1") throw ParseError(where, "lost must be 0 or 1");
      tx.lost = cols[3] == "1";
      if (!tx.lost) tx.t_arrive = parse_seconds(cols[4]);
      rows.push_back(tx);
    } catch (const ParseError& e) {
      if (e.location().empty()) throw ParseError(where, e.message());
      throw;
    } catch (const std::exception& e) {
      throw ParseError(where, e.what());
    }
  }
  return rows;
}

}  // namespace teleop::link
