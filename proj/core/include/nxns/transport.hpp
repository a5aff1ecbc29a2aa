#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "nxns/authoritative.hpp"
#include "nxns/engine.hpp"
#include "nxns/size_model.hpp"

namespace nxns {

enum class Proto { Udp, Tcp };

/// Which leg of the resolver an exchange belongs to. Authoritative traffic
/// is Upstream on both sides; the client<->resolver leg is ClientFacing.
enum class Role { ClientFacing, Upstream };

struct LinkModel {
    double latency_ms = 1.0;
    /// Max concurrent in-flight exchanges per destination endpoint;
    /// overflow drops the request (drop-newest). Unset means lossless.
    std::optional<int> capacity;
};

/// One request/response pair between two endpoints.
struct Exchange {
    Endpoint src;
    Endpoint dst;
    DnsMessage request;
    DnsMessage response;
    Proto proto = Proto::Udp;
    SimTime timestamp = 0;
};

struct Counters {
    std::uint64_t packets_sent = 0;
    std::uint64_t packets_received = 0;
    std::uint64_t bytes_sent = 0;
    std::uint64_t bytes_received = 0;
    std::uint64_t udp_packets = 0;
    std::uint64_t tcp_packets = 0;

    std::uint64_t packets_total() const { return packets_sent + packets_received; }
    std::uint64_t bytes_total() const { return bytes_sent + bytes_received; }
    void merge(const Counters& other);
};

/// Per-endpoint packet and byte accounting, split by role, plus per-pair
/// rollups so one leg (e.g. resolver<->attacker) can be isolated.
class PacketLedger {
public:
    void record_packet(const Endpoint& src, const Endpoint& dst, Role role, Proto proto,
                       std::uint64_t bytes);
    /// A dropped request: leaves the sender, never reaches the receiver.
    void record_lost_packet(const Endpoint& src, Role role, std::uint64_t bytes);
    void record_loss() { ++losses_; }

    enum class Scope { All, Upstream, ClientFacing };

    /// Throws std::out_of_range for an endpoint the ledger never saw.
    Counters report(const Endpoint& endpoint, Scope scope) const;
    bool knows(const Endpoint& endpoint) const { return per_endpoint_.contains(endpoint); }

    /// Total packets/bytes moved between two endpoints, both directions.
    Counters pair_total(const Endpoint& a, const Endpoint& b) const;

    std::uint64_t losses() const { return losses_; }
    std::uint64_t global_sent() const;
    std::uint64_t global_received() const;

    std::string to_json() const;
    std::string to_csv() const;

private:
    static std::size_t role_index(Role role) { return role == Role::ClientFacing ? 0 : 1; }

    std::map<Endpoint, std::array<Counters, 2>> per_endpoint_;
    std::map<std::pair<Endpoint, Endpoint>, Counters> per_pair_;
    std::uint64_t losses_ = 0;
};

/// Simulated transport between the resolver and authoritative servers.
/// A UDP exchange moves 2 packets; a truncated response triggers a full
/// TCP retry of the same question for 10 more (request, response, and 8
/// control packets), after which the TCP response is the authoritative one.
class Network {
public:
    Network(SimEngine& engine, SizeModel size_model, LinkModel link)
        : engine_(engine), size_model_(std::move(size_model)), link_(link) {}

    void register_server(AuthoritativeServer* server);

    using ExchangeCallback = std::function<void(std::optional<DnsMessage>)>;

    /// Runs one exchange asynchronously; the callback gets the final
    /// response, or nullopt when the request was dropped (timeout).
    void exchange(const Endpoint& src, const Endpoint& dst, DnsMessage request, Role role,
                  ExchangeCallback callback);

    /// Observer invoked once per completed exchange (after the TCP retry,
    /// if any); used by tests and report hooks.
    void set_observer(std::function<void(const Exchange&)> observer) {
        observer_ = std::move(observer);
    }

    PacketLedger& ledger() { return ledger_; }
    const PacketLedger& ledger() const { return ledger_; }
    const SizeModel& size_model() const { return size_model_; }
    SimEngine& engine() { return engine_; }

private:
    SimEngine& engine_;
    SizeModel size_model_;
    LinkModel link_;
    PacketLedger ledger_;
    std::map<Endpoint, AuthoritativeServer*> servers_;
    std::map<Endpoint, int> inflight_;
    std::function<void(const Exchange&)> observer_;
};

}  // namespace nxns
