#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "nxns/authoritative.hpp"
#include "nxns/message.hpp"

namespace nxns {

/// Fetch policy applied to a referral's unresolved delegation names.
/// FetchAll resolves every name as soon as the referral arrives; MaxFetch(k)
/// resolves at most k names' worth (A plus AAAA each) per client request.
struct FetchPolicy {
    enum class Kind { FetchAll, MaxFetch };
    Kind kind = Kind::FetchAll;
    int k = 1;

    static FetchPolicy fetch_all() { return {Kind::FetchAll, 0}; }
    static FetchPolicy max_fetch(int k) { return {Kind::MaxFetch, k}; }
    bool operator==(const FetchPolicy&) const = default;
};

/// Per-zone delegation state at the resolver: delegate names in referral
/// order, their resolved addresses, and a FIFO queue of names still lacking
/// addresses. The queue is the thing MaxFetch(k) amortizes: each name is
/// popped exactly once, when its fetch is first spawned.
class NsSet {
public:
    struct Server {
        DomainName name;
        std::optional<Endpoint> address;
        bool failed = false;
    };

    explicit NsSet(DomainName zone) : zone_(std::move(zone)) {}

    const DomainName& zone() const { return zone_; }
    const std::vector<Server>& servers() const { return servers_; }
    std::size_t unresolved_count() const { return unresolved_.size(); }

    /// Adds delegate names (deduplicated), honoring an optional breadth cap
    /// on the total server list. New names without a cached address join the
    /// unresolved queue.
    void merge_names(const std::vector<DomainName>& names, std::optional<int> breadth_cap);

    /// Attaches an address learned from glue or a completed fetch; removes
    /// the name from the unresolved queue if still there.
    void attach_address(const DomainName& name, const Endpoint& address);

    /// Marks a delegate as failed (its fetches all came back negative).
    void mark_failed(const DomainName& name);

    bool has_address() const;
    bool all_failed() const;

    /// Pops up to `max_names` names from the unresolved queue (all of them
    /// if unset). Popped names are never re-queued.
    std::vector<DomainName> take_unresolved(std::optional<std::size_t> max_names);

    /// Addressed servers in list order; used by the selectors.
    std::vector<const Server*> addressed() const;

private:
    DomainName zone_;
    std::vector<Server> servers_;
    std::deque<DomainName> unresolved_;
};

/// MaxBreadth: keeps the first `cap` names in referral order; identity when
/// the cap is unset.
std::vector<DomainName> apply_max_breadth(std::vector<DomainName> ns_names,
                                          std::optional<int> cap);

/// The proactive-fetch schedule for one zone use: FetchAll drains the whole
/// unresolved queue, MaxFetch(k) takes the first min(k, queued) names; each
/// selected name expands to one A and one AAAA fetch. Selected names leave
/// the queue exactly once, so concurrent tasks never double-fetch.
std::vector<Question> proactive_fetch_set(NsSet& nsset, const FetchPolicy& policy);

}  // namespace nxns
