#include "nxns/nsset.hpp"

#include <algorithm>

namespace nxns {

void NsSet::merge_names(const std::vector<DomainName>& names, std::optional<int> breadth_cap) {
    for (const auto& name : names) {
        if (breadth_cap && servers_.size() >= static_cast<std::size_t>(*breadth_cap)) {
            break;
        }
        bool known = std::any_of(servers_.begin(), servers_.end(),
                                 [&](const Server& s) { return s.name == name; });
        if (known) {
            continue;
        }
        servers_.push_back(Server{name, std::nullopt, false});
        unresolved_.push_back(name);
    }
}

void NsSet::attach_address(const DomainName& name, const Endpoint& address) {
    for (auto& server : servers_) {
        if (server.name == name) {
            server.address = address;
            server.failed = false;
        }
    }
    std::erase(unresolved_, name);
}

void NsSet::mark_failed(const DomainName& name) {
    for (auto& server : servers_) {
        if (server.name == name && !server.address) {
            server.failed = true;
        }
    }
}

bool NsSet::has_address() const {
    return std::any_of(servers_.begin(), servers_.end(),
                       [](const Server& s) { return s.address.has_value(); });
}

bool NsSet::all_failed() const {
    return std::all_of(servers_.begin(), servers_.end(),
                       [](const Server& s) { return s.failed && !s.address; });
}

std::vector<DomainName> NsSet::take_unresolved(std::optional<std::size_t> max_names) {
    std::size_t count = max_names ? std::min(*max_names, unresolved_.size()) : unresolved_.size();
    std::vector<DomainName> taken;
    taken.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        taken.push_back(std::move(unresolved_.front()));
        unresolved_.pop_front();
    }
    return taken;
}

std::vector<const NsSet::Server*> NsSet::addressed() const {
    std::vector<const Server*> out;
    for (const auto& server : servers_) {
        if (server.address) {
            out.push_back(&server);
        }
    }
    return out;
}

std::vector<DomainName> apply_max_breadth(std::vector<DomainName> ns_names,
                                          std::optional<int> cap) {
    if (cap && ns_names.size() > static_cast<std::size_t>(*cap)) {
        ns_names.resize(static_cast<std::size_t>(*cap));
    }
    return ns_names;
}

std::vector<Question> proactive_fetch_set(NsSet& nsset, const FetchPolicy& policy) {
    std::optional<std::size_t> max_names;
    if (policy.kind == FetchPolicy::Kind::MaxFetch) {
        max_names = policy.k < 0 ? 0 : static_cast<std::size_t>(policy.k);
    }
    std::vector<Question> fetches;
    for (auto& name : nsset.take_unresolved(max_names)) {
        fetches.push_back(Question{name, RecordType::A});
        fetches.push_back(Question{std::move(name), RecordType::AAAA});
    }
    return fetches;
}

}  // namespace nxns
