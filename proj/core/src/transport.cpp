#include "nxns/transport.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nxns {

void Counters::merge(const Counters& other) {
    packets_sent += other.packets_sent;
    packets_received += other.packets_received;
    bytes_sent += other.bytes_sent;
    bytes_received += other.bytes_received;
    udp_packets += other.udp_packets;
    tcp_packets += other.tcp_packets;
}

void PacketLedger::record_packet(const Endpoint& src, const Endpoint& dst, Role role, Proto proto,
                                 std::uint64_t bytes) {
    auto& sender = per_endpoint_[src][role_index(role)];
    sender.packets_sent += 1;
    sender.bytes_sent += bytes;
    (proto == Proto::Udp ? sender.udp_packets : sender.tcp_packets) += 1;

    auto& receiver = per_endpoint_[dst][role_index(role)];
    receiver.packets_received += 1;
    receiver.bytes_received += bytes;
    (proto == Proto::Udp ? receiver.udp_packets : receiver.tcp_packets) += 1;

    auto key = src < dst ? std::make_pair(src, dst) : std::make_pair(dst, src);
    auto& pair = per_pair_[key];
    pair.packets_sent += 1;
    pair.bytes_sent += bytes;
    (proto == Proto::Udp ? pair.udp_packets : pair.tcp_packets) += 1;
}

void PacketLedger::record_lost_packet(const Endpoint& src, Role role, std::uint64_t bytes) {
    auto& sender = per_endpoint_[src][role_index(role)];
    sender.packets_sent += 1;
    sender.bytes_sent += bytes;
    sender.udp_packets += 1;
}

Counters PacketLedger::report(const Endpoint& endpoint, Scope scope) const {
    auto it = per_endpoint_.find(endpoint);
    if (it == per_endpoint_.end()) {
        throw std::out_of_range("ledger knows no endpoint " + endpoint);
    }
    Counters out;
    if (scope == Scope::All || scope == Scope::ClientFacing) {
        out.merge(it->second[role_index(Role::ClientFacing)]);
    }
    if (scope == Scope::All || scope == Scope::Upstream) {
        out.merge(it->second[role_index(Role::Upstream)]);
    }
    return out;
}

Counters PacketLedger::pair_total(const Endpoint& a, const Endpoint& b) const {
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto it = per_pair_.find(key);
    if (it == per_pair_.end()) {
        return {};
    }
    // Pair counters track each packet once; expose as totals.
    Counters out = it->second;
    out.packets_received = 0;
    out.bytes_received = 0;
    return out;
}

std::uint64_t PacketLedger::global_sent() const {
    std::uint64_t total = 0;
    for (const auto& [endpoint, roles] : per_endpoint_) {
        total += roles[0].packets_sent + roles[1].packets_sent;
    }
    return total;
}

std::uint64_t PacketLedger::global_received() const {
    std::uint64_t total = 0;
    for (const auto& [endpoint, roles] : per_endpoint_) {
        total += roles[0].packets_received + roles[1].packets_received;
    }
    return total;
}

namespace {

const char* scope_name(PacketLedger::Scope scope) {
    switch (scope) {
        case PacketLedger::Scope::All: return "all";
        case PacketLedger::Scope::Upstream: return "upstream";
        case PacketLedger::Scope::ClientFacing: return "client";
    }
    return "?";
}

}  // namespace

std::string PacketLedger::to_json() const {
    nlohmann::ordered_json doc;
    doc["losses"] = losses_;
    auto& endpoints = doc["endpoints"];
    for (const auto& [endpoint, roles] : per_endpoint_) {
        for (auto scope : {Scope::All, Scope::Upstream, Scope::ClientFacing}) {
            Counters c = report(endpoint, scope);
            nlohmann::ordered_json row;
            row["packets_sent"] = c.packets_sent;
            row["packets_received"] = c.packets_received;
            row["bytes_sent"] = c.bytes_sent;
            row["bytes_received"] = c.bytes_received;
            row["udp_packets"] = c.udp_packets;
            row["tcp_packets"] = c.tcp_packets;
            endpoints[endpoint][scope_name(scope)] = std::move(row);
        }
    }
    return doc.dump(2);
}

std::string PacketLedger::to_csv() const {
    std::ostringstream out;
    out << "endpoint,scope,packets_sent,packets_received,bytes_sent,bytes_received\n";
    for (const auto& [endpoint, roles] : per_endpoint_) {
        for (auto scope : {Scope::All, Scope::Upstream, Scope::ClientFacing}) {
            Counters c = report(endpoint, scope);
            out << endpoint << ',' << scope_name(scope) << ',' << c.packets_sent << ','
                << c.packets_received << ',' << c.bytes_sent << ',' << c.bytes_received << '\n';
        }
    }
    return out.str();
}

void Network::register_server(AuthoritativeServer* server) {
    servers_[server->address()] = server;
}

void Network::exchange(const Endpoint& src, const Endpoint& dst, DnsMessage request, Role role,
                       ExchangeCallback callback) {
    auto server_it = servers_.find(dst);
    if (server_it == servers_.end()) {
        throw std::out_of_range("no server registered at " + dst);
    }
    AuthoritativeServer* server = server_it->second;
    const SimTime latency = static_cast<SimTime>(link_.latency_ms * kMicrosPerMilli);

    if (link_.capacity && inflight_[dst] >= *link_.capacity) {
        // Drop-newest: the request leaves the source but never arrives, so
        // only the sender's counters move and the caller sees a timeout.
        ledger_.record_loss();
        ledger_.record_lost_packet(src, role, message_size(request, size_model_));
        engine_.schedule_in(2 * latency, [cb = std::move(callback)]() { cb(std::nullopt); });
        return;
    }

    inflight_[dst] += 1;
    const std::uint64_t request_bytes = message_size(request, size_model_);
    ledger_.record_packet(src, dst, role, Proto::Udp, request_bytes);

    engine_.schedule_in(latency, [this, src, dst, role, server, latency,
                                  request = std::move(request), request_bytes,
                                  cb = std::move(callback)]() mutable {
        DnsMessage response = server->answer(request, size_model_, size_model_.udp_limit_bytes);
        const std::uint64_t response_bytes = message_size(response, size_model_);
        ledger_.record_packet(dst, src, role, Proto::Udp, response_bytes);

        Proto final_proto = Proto::Udp;
        SimTime remaining = latency;  // response still travels back to src
        if (response.tc) {
            // Full TCP retry: request and response again plus 8 control
            // packets, 4 sent by each side.
            final_proto = Proto::Tcp;
            ledger_.record_packet(src, dst, role, Proto::Tcp, request_bytes);
            ledger_.record_packet(dst, src, role, Proto::Tcp, response_bytes);
            for (int i = 0; i < 4; ++i) {
                ledger_.record_packet(src, dst, role, Proto::Tcp, size_model_.tcp_control_bytes);
                ledger_.record_packet(dst, src, role, Proto::Tcp, size_model_.tcp_control_bytes);
            }
            remaining += 2 * latency;  // one more round trip
        }

        engine_.schedule_in(remaining, [this, src, dst, final_proto, request = std::move(request),
                                        response = std::move(response), cb = std::move(cb)]() mutable {
            inflight_[dst] -= 1;
            if (observer_) {
                observer_(Exchange{src, dst, request, response, final_proto, engine_.now()});
            }
            cb(std::move(response));
        });
    });
}

}  // namespace nxns
