#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "nxns/cache.hpp"
#include "nxns/nsset.hpp"
#include "nxns/transport.hpp"

namespace nxns {

/// Iterative-query budget for one client request. Queries directed at the
/// root or a TLD zone are exempt; every other query charges one unit and is
/// allowed while the total stays within max_rq.
struct RecursionBudget {
    int used = 0;
    int max_rq = 75;
};
bool budget_charge(RecursionBudget& budget, const DomainName& target_zone);

struct SelectorConfig {
    enum class Kind { RoundRobin, Srtt };
    Kind kind = Kind::RoundRobin;
    double srtt_decay = 0.3;
};

/// Smoothed-RTT estimates per server. Selection is argmin over the
/// candidates; servers without a sample start at zero so new delegates get
/// tried first. Updates decay exponentially: est = decay*rtt + (1-decay)*est.
class SrttState {
public:
    explicit SrttState(double decay = 0.3) : decay_(decay) {}

    void set_estimate(const Endpoint& server, double ms) { estimates_[server] = ms; }
    double estimate(const Endpoint& server) const;
    void update(const Endpoint& server, double rtt_ms);

    /// Argmin over the candidate list; earlier candidates win ties.
    const Endpoint* pick(const std::vector<const NsSet::Server*>& candidates) const;

private:
    double decay_;
    std::map<Endpoint, double> estimates_;
};

/// What the client gets back, plus the per-request accounting the reports
/// consume.
struct TaskResult {
    DnsMessage response;
    int budget_used = 0;
    /// NXDOMAIN answers received by fetches of NS names from referrals;
    /// zero in every honest scenario.
    int nx_on_ns_fetch = 0;
    /// Exchanges on the client answer's own chain (proactive fetches are
    /// off-path).
    int critical_path_exchanges = 0;
};

struct FetchRecord {
    DomainName name;
    RecordType type;
    DomainName zone;
};

struct ResolverMetrics {
    std::uint64_t ns_fetch_queries = 0;   // (name, type) fetches spawned
    std::uint64_t ns_names_fetched = 0;   // delegate names whose fetches started
    std::uint64_t nx_on_ns_fetch = 0;
    std::uint64_t glue_accepted = 0;
    std::uint64_t glue_discarded = 0;
    std::uint64_t client_noerror = 0;
    std::uint64_t client_nxdomain = 0;
    std::uint64_t client_servfail = 0;
    std::vector<FetchRecord> fetch_log;   // populated only when configured
};

/// BIND-style recursive resolver driven by the simulation engine: iterative
/// resolution from static hints, bailiwick-filtered glue acceptance,
/// proactive NS fetches per FetchPolicy, a per-request recursion budget with
/// root/TLD exemption, MaxBreadth capping, and the NX-reply detector counter.
///
/// The resolver is confined to one simulation run and one thread; separate
/// runs use separate instances.
class Resolver {
public:
    struct Config {
        FetchPolicy policy = FetchPolicy::fetch_all();
        std::optional<int> breadth_cap;
        SelectorConfig selector;
        int max_rq = 75;
        std::uint32_t negative_ttl_seconds = 900;
        bool record_fetch_log = false;
        int max_fetch_depth = 8;
    };

    Resolver(Network& net, Endpoint address, Config config);
    ~Resolver();

    Resolver(const Resolver&) = delete;
    Resolver& operator=(const Resolver&) = delete;

    /// Static zone -> server knowledge (root hints and, in attack scenarios,
    /// the steady-state authoritative addresses). Lives outside the cache.
    void add_hint(const DomainName& zone, const Endpoint& address);

    /// Text list of `<server-name> <address>` pairs for the root zone.
    void load_root_hints(std::istream& input);

    using Completion = std::function<void(const TaskResult&)>;
    void submit(const DomainName& name, RecordType type, Completion on_done);

    Cache& cache() { return cache_; }
    const Cache& cache() const { return cache_; }
    const ResolverMetrics& metrics() const { return metrics_; }
    const Endpoint& address() const { return address_; }
    const Config& config() const { return config_; }

    /// Test access to per-zone delegation state.
    const NsSet* nsset(const DomainName& zone) const;

private:
    struct Task;
    struct ZoneState;

    Task* root_of(Task& t);
    void step(Task& t);
    void on_response(Task& t, const DomainName& queried_zone, const Endpoint& server,
                     SimTime issued_at, std::optional<DnsMessage> response);
    void process_referral(Task& t, const DomainName& queried_zone, const DnsMessage& response);
    void spawn_fetches_for_zone(Task& root, ZoneState& zs);
    void spawn_ns_fetch(Task& root, const DomainName& zone, const Question& q, int depth);
    void deliver_fetch_outcome(const DomainName& zone, Task& fetch);
    void wake_or_fail_waiters(ZoneState& zs);
    Endpoint select_server(ZoneState& zs);
    void complete(Task& t, Rcode rcode, std::vector<ResourceRecord> records);
    void fail_request(Task& root);
    void maybe_destroy(Task& t);

    Network& net_;
    Endpoint address_;
    Config config_;
    Cache cache_;
    ResolverMetrics metrics_;
    SrttState srtt_;

    std::map<DomainName, ZoneState> zones_;
    std::map<DomainName, std::vector<Endpoint>> hints_;

    struct QKeyHash {
        std::size_t operator()(const Question& q) const {
            return DomainNameHash{}(q.name) * 31 + static_cast<std::size_t>(q.rtype);
        }
    };
    std::unordered_map<Question, Task*, QKeyHash> inflight_;
    std::unordered_map<Task*, std::unique_ptr<Task>> live_;
    std::uint64_t next_msg_id_ = 1;
};

}  // namespace nxns
