#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "nxns/size_model.hpp"
#include "nxns/zone.hpp"

namespace nxns {

using Endpoint = std::string;

enum class AttackVariant { A, B, C };

/// Parameters for the attacker-controlled server. One monotone counter
/// drives every generated name, so no delegation name ever repeats within
/// a run — the property that defeats the resolver cache.
struct AttackVariantConfig {
    AttackVariant variant = AttackVariant::B;
    int n = 37;                       // delegations per referral (variants a, b)
    DomainName victim_suffix;         // variant b target zone, e.g. victim.com
    std::vector<std::string> target_tld_pool = {"com"};  // variant a
    int n1 = 37;                      // variant c stage-1 self-delegations
    int n2 = 135;                     // variant c stage-2 delegations per referral
    DomainName self_zone;             // the attacker's own zone, e.g. attacker.com
    std::uint64_t counter = 0;
    bool stage1_issued = false;       // variant c sequencing state
};

/// Variant a: n fresh names ns1.fakens{counter+i}.{tld}, TLDs drawn
/// round-robin from the pool.
std::vector<DomainName> gen_referral_a(AttackVariantConfig& cfg, const DomainName& query_name);

/// Variant b: n fresh names fakens{counter+i}.{victim_suffix}.
std::vector<DomainName> gen_referral_b(AttackVariantConfig& cfg, const DomainName& query_name);

/// Variant c. Stage 1 answers the client-driven query with self-delegations
/// sd{counter+1}..sd{counter+n1} inside the attacker's own zone; stage 2
/// answers queries for those names with n2 names under fresh nonexistent
/// TLDs (ns.fake{counter+i}), steering every follow-up fetch to the root.
/// Calling stage 2 before any stage-1 referral is a sequencing error.
std::vector<DomainName> gen_referral_c(AttackVariantConfig& cfg, const DomainName& query_name,
                                       int stage);

struct HonestBehavior {};

struct AttackerBehavior {
    AttackVariantConfig config;
    /// Stage-1 names already handed out (variant c); queries for them get
    /// stage-2 referrals.
    std::unordered_set<DomainName, DomainNameHash> stage1_names;
};

/// Fully scripted responder, for tests that need responses no honest server
/// would produce (poisoned glue, malformed referrals, ...).
struct ScriptedBehavior {
    std::function<DnsMessage(const DnsMessage& query, const SizeModel& size_model,
                             std::size_t udp_limit)>
        respond;
};

using ServerBehavior = std::variant<HonestBehavior, AttackerBehavior, ScriptedBehavior>;

/// A simulated authoritative name server. Honest servers answer
/// deterministically from zone contents; attacker servers wrap the variant
/// generators as glueless referrals and never set TC.
class AuthoritativeServer {
public:
    AuthoritativeServer(Endpoint address, ServerBehavior behavior)
        : address_(std::move(address)), behavior_(std::move(behavior)) {}

    const Endpoint& address() const { return address_; }
    void add_zone(Zone zone) { zones_.push_back(std::move(zone)); }
    const std::vector<Zone>& zones() const { return zones_; }

    bool is_attacker() const { return std::holds_alternative<AttackerBehavior>(behavior_); }
    AttackerBehavior& attacker() { return std::get<AttackerBehavior>(behavior_); }

    /// For variant c runs: allocates the next fresh client query name from
    /// the same counter the stage-1 generator uses.
    DomainName allocate_client_name();

    DnsMessage answer(const DnsMessage& query, const SizeModel& size_model, std::size_t udp_limit);

    /// Overrides the honest TC computation: forced-0 never truncates,
    /// forced-1 truncates every negative answer.
    enum class TcOverride { Auto, Force0, Force1 };
    void set_tc_override(TcOverride mode) { tc_override_ = mode; }

private:
    DnsMessage answer_honest(const DnsMessage& query, const SizeModel& size_model,
                             std::size_t udp_limit);
    DnsMessage answer_attacker(const DnsMessage& query);
    void apply_tc(DnsMessage& response, const Zone& zone, const SizeModel& size_model,
                  std::size_t udp_limit) const;

    Endpoint address_;
    std::vector<Zone> zones_;
    ServerBehavior behavior_;
    TcOverride tc_override_ = TcOverride::Auto;
};

/// Extra modeled bytes attached to negative answers from dnssec_like zones
/// (signature bulk); large enough to push any negative answer past a
/// 512-byte UDP limit.
inline constexpr std::size_t kDnssecNegativeInflationBytes = 600;

}  // namespace nxns
