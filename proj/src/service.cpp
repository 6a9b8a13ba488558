#include "teleop/service.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <map>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "teleop/arbiter.hpp"
#include "teleop/errors.hpp"
#include "teleop/headless.hpp"
#include "teleop/simulation.hpp"
#include "teleop/wire.hpp"

namespace teleop::gateway {

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using Clock = std::chrono::steady_clock;

void ServiceOptions::validate() const {
  scenario.validate();
  if (!(time_scale >= 0.0) || !std::isfinite(time_scale)) throw ContractViolation("time scale must be >= 0");
  if (!(feedback_delay >= 0.0) || !std::isfinite(feedback_delay)) throw ContractViolation("feedback delay must be >= 0");
  if (!(telemetry_rate > 0.0) || !std::isfinite(telemetry_rate)) throw ContractViolation("telemetry rate must be > 0");
}

namespace {

struct Inbound {
  enum class Kind { Connect, Disconnect, Text } kind;
  ClientId id;
  std::string text;
};

tcp::endpoint parse_bind(const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw ContractViolation("bind address must be host:port, got '" + bind + "'");
  boost::system::error_code ec;
  const auto addr = net::ip::make_address(bind.substr(0, colon), ec);
  if (ec) throw ContractViolation("bad bind host '" + bind.substr(0, colon) + "'");
  int port = 0;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw ContractViolation("bad bind port in '" + bind + "'");
  }
  if (port < 0 || port > 65535) throw ContractViolation("bad bind port in '" + bind + "'");
  return {addr, static_cast<unsigned short>(port)};
}

class Session;

}  // namespace

struct Service::Impl {
  explicit Impl(ServiceOptions o) : opt(std::move(o)) {}

  ServiceOptions opt;
  net::io_context ioc{1};
  tcp::acceptor acceptor{ioc};
  std::thread io_thread;
  std::thread sim_thread;
  bool running = false;

  // Network thread only.
  std::map<ClientId, std::weak_ptr<Session>> sessions;
  ClientId next_id = 1;

  std::mutex qm;
  std::condition_variable qcv;
  std::deque<Inbound> inbound;
  bool stopping = false;

  mutable std::mutex sm;
  std::condition_variable fin_cv;
  std::vector<SlotTiming> slots;
  std::optional<Clock::time_point> t0;
  std::atomic<bool> done{false};

  void push(Inbound in) {
    {
      std::lock_guard lk(qm);
      inbound.push_back(std::move(in));
    }
    qcv.notify_one();
  }

  void mark_done() {
    {
      std::lock_guard lk(sm);
      done = true;
    }
    fin_cv.notify_all();
  }

  void do_accept();
  void broadcast(std::string text);
  void send_to(ClientId id, std::string text);
  void sim_loop();
};

namespace {

class Session : public std::enable_shared_from_this<Session> {
 public:
  Session(tcp::socket s, ClientId id, Service::Impl* impl) : ws_(std::move(s)), id_(id), impl_(impl) {}

  void run() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(beast::bind_front_handler(&Session::on_accept, shared_from_this()));
  }

  void send(std::shared_ptr<const std::string> msg) {
    if (outq_.size() > 1024) return;  // slow reader: drop rather than grow without bound
    outq_.push_back(std::move(msg));
    if (outq_.size() == 1) do_write();
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    impl_->sessions[id_] = weak_from_this();
    impl_->push({Inbound::Kind::Connect, id_, {}});
    do_read();
  }

  void do_read() { ws_.async_read(buf_, beast::bind_front_handler(&Session::on_read, shared_from_this())); }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      impl_->sessions.erase(id_);
      impl_->push({Inbound::Kind::Disconnect, id_, {}});
      return;
    }
    impl_->push({Inbound::Kind::Text, id_, beast::buffers_to_string(buf_.data())});
    buf_.consume(buf_.size());
    do_read();
  }

  void do_write() {
    ws_.text(true);
    ws_.async_write(net::buffer(*outq_.front()), beast::bind_front_handler(&Session::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) return;
    outq_.pop_front();
    if (!outq_.empty()) do_write();
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buf_;
  std::deque<std::shared_ptr<const std::string>> outq_;
  ClientId id_;
  Service::Impl* impl_;
};

}  // namespace

void Service::Impl::do_accept() {
  acceptor.async_accept(ioc, [this](beast::error_code ec, tcp::socket s) {
    if (ec) return;
    std::make_shared<Session>(std::move(s), next_id++, this)->run();
    do_accept();
  });
}

void Service::Impl::broadcast(std::string text) {
  net::post(ioc, [this, msg = std::make_shared<const std::string>(std::move(text))] {
    for (auto& [id, w] : sessions)
      if (auto s = w.lock()) s->send(msg);
  });
}

void Service::Impl::send_to(ClientId id, std::string text) {
  net::post(ioc, [this, id, msg = std::make_shared<const std::string>(std::move(text))] {
    const auto it = sessions.find(id);
    if (it == sessions.end()) return;
    if (auto s = it->second.lock()) s->send(msg);
  });
}

void Service::Impl::sim_loop() {
  const mission::Scenario& sc = opt.scenario;
  mission::Simulation sim(sc, opt.scripted ? mission::CommandSource::Scripted : mission::CommandSource::External,
                          mission::seeds_for(sc, opt.seed, 0));
  Arbiter arbiter(opt.scripted);
  std::size_t events_sent = 0;
  bool summary_sent = false;
  std::deque<wire::Telemetry> history;

  const auto telemetry_period =
      std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(1.0 / opt.telemetry_rate));
  Clock::time_point next_telemetry = Clock::now();
  std::optional<Clock::time_point> start;

  auto snapshot = [&] {
    wire::Telemetry t;
    const auto& s = sim.state();
    t.t = to_seconds(sim.now());
    t.x = s.x;
    t.y = s.y;
    t.z = s.z;
    t.psi = s.psi;
    t.depth_set = sim.setpoints().depth;
    t.heading_set = sim.setpoints().heading;
    t.next_slot_in = to_seconds(sim.link().next_slot_time() - sim.now());
    t.last_byte = sim.link().last_transmitted();
    t.pending = sim.link().pending();
    return t;
  };

  auto step_once = [&] {
    sim.step();
    const auto& events = sim.log().events;
    const auto wall = Clock::now();
    for (; events_sent < events.size(); ++events_sent) {
      const auto& e = events[events_sent];
      if (e.kind == mission::EventKind::Transmit) {
        std::lock_guard lk(sm);
        slots.push_back({e.t, wall});
      }
      broadcast(wire::encode(wire::EventFrame{to_seconds(e.t), mission::to_string(e.kind), e.ref, e.detail}));
    }
    if (opt.feedback_delay > 0.0) history.push_back(snapshot());
  };

  for (;;) {
    std::deque<Inbound> batch;
    {
      std::lock_guard lk(qm);
      if (stopping) break;
      batch.swap(inbound);
    }
    for (auto& in : batch) {
      switch (in.kind) {
        case Inbound::Kind::Connect: arbiter.connect(in.id); break;
        case Inbound::Kind::Disconnect: arbiter.disconnect(in.id); break;
        case Inbound::Kind::Text: {
          auto msg = wire::decode_client(in.text);
          if (auto* err = std::get_if<wire::ErrorFrame>(&msg)) {
            send_to(in.id, wire::encode(*err));
            break;
          }
          if (sim.finished()) {
            send_to(in.id, wire::encode(wire::ErrorFrame{"the run has finished"}));
            break;
          }
          const Verdict v = arbiter.command(in.id);
          if (v == Verdict::Accepted)
            sim.submit_external(std::get<wire::CommandFrame>(msg).command);
          else
            send_to(in.id, wire::encode(wire::ErrorFrame{std::string("command rejected: ") + to_string(v)}));
          break;
        }
      }
    }

    if (!start && (opt.scripted || arbiter.ever_connected())) {
      start = Clock::now();
      std::lock_guard lk(sm);
      t0 = start;
    }

    if (start && !sim.finished()) {
      if (opt.time_scale > 0.0) {
        const double elapsed = std::chrono::duration<double>(Clock::now() - *start).count();
        const SimTime target = from_seconds(elapsed * opt.time_scale);
        while (!sim.finished() && sim.now() <= target) step_once();
      } else {
        for (int i = 0; i < 1000 && !sim.finished(); ++i) step_once();
      }
    }

    if (sim.finished() && !summary_sent) {
      summary_sent = true;
      mission::RunSummary summary;
      summary.run = 1;
      summary.link_seed = sim.seeds().link;
      summary.sensor_seed = sim.seeds().sensors;
      summary.mission = sim.result();
      summary.comm = sim.stats();
      if (opt.out_dir) {
        try {
          summary = write_run(sim, 1, *opt.out_dir / "run_001");
        } catch (const std::exception& e) {
          std::cerr << "error: writing logs: " << e.what() << '\n';
        }
      }
      broadcast(wire::encode(wire::SummaryFrame{summary}));
      mark_done();
    }

    const auto now = Clock::now();
    if (now >= next_telemetry) {
      wire::Telemetry t = snapshot();
      if (opt.feedback_delay > 0.0) {
        const double shown = to_seconds(sim.now()) - opt.feedback_delay;
        while (history.size() > 1 && history[1].t <= shown) history.pop_front();
        if (!history.empty()) t = history.front();
      }
      broadcast(wire::encode(t));
      next_telemetry += telemetry_period;
      if (next_telemetry < now) next_telemetry = now + telemetry_period;
    }

    Clock::time_point wake = next_telemetry;
    if (start && !sim.finished()) {
      if (opt.time_scale > 0.0) {
        const auto due = *start + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(to_seconds(sim.now()) / opt.time_scale));
        wake = std::min(wake, due);
      } else {
        wake = Clock::now();
      }
    }
    std::unique_lock lk(qm);
    qcv.wait_until(lk, wake, [&] { return stopping || !inbound.empty(); });
  }
}

Service::Service(ServiceOptions opt) : impl_(std::make_unique<Impl>(std::move(opt))) { impl_->opt.validate(); }

Service::~Service() { stop(); }

void Service::start() {
  if (impl_->running) return;
  const tcp::endpoint ep = parse_bind(impl_->opt.bind);
  auto& acc = impl_->acceptor;
  acc.open(ep.protocol());
  acc.set_option(net::socket_base::reuse_address(true));
  acc.bind(ep);
  acc.listen(net::socket_base::max_listen_connections);
  impl_->do_accept();
  impl_->running = true;
  impl_->io_thread = std::thread([this] { impl_->ioc.run(); });
  impl_->sim_thread = std::thread([this] {
    try {
      impl_->sim_loop();
    } catch (const std::exception& e) {
      std::cerr << "error: simulation stopped: " << e.what() << '\n';
      impl_->mark_done();
    }
  });
}

void Service::stop() {
  if (!impl_->running) return;
  {
    std::lock_guard lk(impl_->qm);
    impl_->stopping = true;
  }
  impl_->qcv.notify_all();
  impl_->sim_thread.join();
  // Let queued frames (the summary in particular) drain before tearing down.
  net::post(impl_->ioc, [this] {
    boost::system::error_code ec;
    impl_->acceptor.close(ec);
    impl_->ioc.stop();
  });
  impl_->io_thread.join();
  impl_->running = false;
}

bool Service::wait_finished(std::chrono::milliseconds timeout) {
  std::unique_lock lk(impl_->sm);
  return impl_->fin_cv.wait_for(lk, timeout, [&] { return impl_->done.load(); });
}

unsigned short Service::port() const { return impl_->acceptor.local_endpoint().port(); }

bool Service::finished() const { return impl_->done; }

std::optional<Clock::time_point> Service::started_at() const {
  std::lock_guard lk(impl_->sm);
  return impl_->t0;
}

std::vector<SlotTiming> Service::slot_timings() const {
  std::lock_guard lk(impl_->sm);
  return impl_->slots;
}

}  // namespace teleop::gateway
