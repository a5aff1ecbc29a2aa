#include "nxns/resolver.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <limits>
#include <sstream>

namespace nxns {

bool budget_charge(RecursionBudget& budget, const DomainName& target_zone) {
    if (target_zone.is_root() || target_zone.is_tld()) {
        return true;
    }
    budget.used += 1;
    return budget.used <= budget.max_rq;
}

double SrttState::estimate(const Endpoint& server) const {
    auto it = estimates_.find(server);
    return it == estimates_.end() ? 0.0 : it->second;
}

void SrttState::update(const Endpoint& server, double rtt_ms) {
    auto it = estimates_.find(server);
    if (it == estimates_.end()) {
        estimates_[server] = rtt_ms;
        return;
    }
    it->second = decay_ * rtt_ms + (1.0 - decay_) * it->second;
}

const Endpoint* SrttState::pick(const std::vector<const NsSet::Server*>& candidates) const {
    const Endpoint* best = nullptr;
    double best_estimate = std::numeric_limits<double>::infinity();
    for (const auto* server : candidates) {
        double est = estimate(*server->address);
        if (est < best_estimate) {
            best_estimate = est;
            best = &*server->address;
        }
    }
    return best;
}

struct Resolver::ZoneState {
    explicit ZoneState(DomainName zone) : set(std::move(zone)) {}
    NsSet set;
    std::map<DomainName, int> outstanding;  // per delegate name, in-flight fetches
    int total_outstanding = 0;
    std::vector<Task*> waiters;
    std::size_t rr_cursor = 0;
};

struct Resolver::Task {
    Question q;
    Task* root = nullptr;  // nullptr: this is a client task
    bool is_ns_fetch = false;
    int depth = 0;

    // Client-task state (unused on fetch subtasks).
    Completion on_done;
    RecursionBudget budget;
    int nx_on_ns_fetch = 0;
    int critical_exchanges = 0;
    std::map<DomainName, int> names_spawned;  // MaxFetch allowance per zone
    int live_children = 0;

    std::vector<std::function<void(Task&)>> completion_hooks;
    std::optional<DomainName> waiting_zone;
    bool pending_exchange = false;
    bool finished = false;
    bool destroy_scheduled = false;
    Rcode outcome = Rcode::ServFail;
    std::vector<ResourceRecord> records;
};

Resolver::Resolver(Network& net, Endpoint address, Config config)
    : net_(net), address_(std::move(address)), config_(config), srtt_(config.selector.srtt_decay) {}

Resolver::~Resolver() = default;

void Resolver::add_hint(const DomainName& zone, const Endpoint& address) {
    hints_[zone].push_back(address);
}

void Resolver::load_root_hints(std::istream& input) {
    std::string line;
    while (std::getline(input, line)) {
        if (auto comment = line.find(';'); comment != std::string::npos) {
            line.erase(comment);
        }
        std::istringstream fields(line);
        std::string name, addr;
        if (!(fields >> name >> addr)) {
            continue;
        }
        add_hint(DomainName{}, addr);
    }
    if (!hints_.contains(DomainName{})) {
        throw std::runtime_error("root hints input holds no (name, address) pair");
    }
}

const NsSet* Resolver::nsset(const DomainName& zone) const {
    auto it = zones_.find(zone);
    return it == zones_.end() ? nullptr : &it->second.set;
}

Resolver::Task* Resolver::root_of(Task& t) { return t.root == nullptr ? &t : t.root; }

void Resolver::submit(const DomainName& name, RecordType type, Completion on_done) {
    auto task = std::make_unique<Task>();
    task->q = Question{name, type};
    task->on_done = std::move(on_done);
    task->budget.max_rq = config_.max_rq;
    Task* raw = task.get();
    live_.emplace(raw, std::move(task));
    step(*raw);
}

void Resolver::step(Task& t) {
    if (t.finished) {
        return;
    }
    Task& root = *root_of(t);
    while (true) {
        auto hit = cache_.lookup(t.q.name, t.q.rtype, net_.engine().now());
        if (hit.outcome == Cache::Outcome::Hit) {
            complete(t, Rcode::NoError, *hit.records);
            return;
        }
        if (hit.outcome == Cache::Outcome::NegativeHit) {
            complete(t, Rcode::NxDomain, {});
            return;
        }

        // Deepest enclosing zone the resolver knows servers for, either as
        // live delegation state or as a static hint.
        ZoneState* zs = nullptr;
        const std::vector<Endpoint>* hint = nullptr;
        DomainName zone;
        for (DomainName cur = t.q.name;; cur = cur.parent()) {
            if (auto it = zones_.find(cur); it != zones_.end()) {
                zs = &it->second;
                zone = cur;
                break;
            }
            if (auto it = hints_.find(cur); it != hints_.end()) {
                hint = &it->second;
                zone = cur;
                break;
            }
            if (cur.is_root()) {
                break;
            }
        }
        if (zs == nullptr && hint == nullptr) {
            complete(t, Rcode::ServFail, {});
            return;
        }

        Endpoint server;
        if (zs != nullptr && !zs->set.has_address()) {
            // The zone is known only by delegate names. A fetch for one of
            // the zone's own delegates can never resolve through it.
            bool self_dependent =
                t.is_ns_fetch &&
                std::any_of(zs->set.servers().begin(), zs->set.servers().end(),
                            [&](const NsSet::Server& s) { return s.name == t.q.name; });
            if (self_dependent) {
                complete(t, Rcode::ServFail, {});
                return;
            }
            if (zs->total_outstanding == 0) {
                spawn_fetches_for_zone(root, *zs);
                if (t.finished) {
                    return;  // a cache-satisfied spawn can cascade back into t
                }
                if (zs->set.has_address()) {
                    continue;
                }
                if (zs->total_outstanding == 0) {
                    complete(t, Rcode::ServFail, {});
                    return;
                }
            }
            zs->waiters.push_back(&t);
            t.waiting_zone = zone;
            return;
        }

        if (zs != nullptr) {
            // Zone-use trigger: keep amortizing unresolved delegates.
            spawn_fetches_for_zone(root, *zs);
            if (t.finished) {
                return;
            }
            server = select_server(*zs);
        } else {
            server = hint->front();
        }

        if (!budget_charge(root.budget, zone)) {
            // Budget exhausted: the whole client request terminates.
            fail_request(root);
            if (!t.finished) {
                complete(t, Rcode::ServFail, {});
            }
            return;
        }
        if (&t == &root) {
            root.critical_exchanges += 1;
        }

        t.pending_exchange = true;
        DnsMessage query = DnsMessage::query(next_msg_id_++, t.q.name, t.q.rtype);
        SimTime issued_at = net_.engine().now();
        net_.exchange(address_, server, std::move(query), Role::Upstream,
                      [this, task = &t, zone, server, issued_at](std::optional<DnsMessage> resp) {
                          task->pending_exchange = false;
                          if (task->finished) {
                              maybe_destroy(*task);
                              return;
                          }
                          on_response(*task, zone, server, issued_at, std::move(resp));
                      });
        return;
    }
}

void Resolver::on_response(Task& t, const DomainName& queried_zone, const Endpoint& server,
                           SimTime issued_at, std::optional<DnsMessage> response) {
    if (config_.selector.kind == SelectorConfig::Kind::Srtt) {
        double rtt_ms =
            static_cast<double>(net_.engine().now() - issued_at) / static_cast<double>(kMicrosPerMilli);
        srtt_.update(server, rtt_ms);
    }
    if (!response) {
        // Dropped request; no retry in the model.
        complete(t, Rcode::ServFail, {});
        return;
    }
    SimTime now = net_.engine().now();
    if (response->rcode == Rcode::NxDomain) {
        cache_.put_negative(t.q.name, t.q.rtype, now, config_.negative_ttl_seconds);
        if (t.is_ns_fetch) {
            root_of(t)->nx_on_ns_fetch += 1;
            metrics_.nx_on_ns_fetch += 1;
        }
        complete(t, Rcode::NxDomain, {});
        return;
    }
    if (response->is_referral()) {
        process_referral(t, queried_zone, *response);
        if (!t.finished) {
            step(t);
        }
        return;
    }
    if (!response->answer.empty()) {
        cache_.put_positive(t.q.name, t.q.rtype, response->answer, now,
                            response->answer.front().ttl);
        complete(t, Rcode::NoError, response->answer);
        return;
    }
    // NODATA: the name exists without the asked type; cached negatively for
    // this (name, type) but reported as NOERROR.
    cache_.put_negative(t.q.name, t.q.rtype, now, config_.negative_ttl_seconds);
    complete(t, Rcode::NoError, {});
}

void Resolver::process_referral(Task& t, const DomainName& queried_zone,
                                const DnsMessage& response) {
    const DomainName& cut = response.zone_cut();
    // A usable referral delegates a zone strictly below the responder that
    // still encloses the question; anything else is progress-free or
    // poisonous and fails the task.
    if (!is_subordinate(cut, queried_zone) || cut == queried_zone ||
        !is_subordinate(t.q.name, cut)) {
        complete(t, Rcode::ServFail, {});
        return;
    }
    SimTime now = net_.engine().now();

    std::vector<DomainName> names;
    names.reserve(response.authority.size());
    for (const auto& ns : response.authority) {
        names.push_back(ns.target());
    }
    names = apply_max_breadth(std::move(names), config_.breadth_cap);

    auto [it, created] = zones_.try_emplace(cut, ZoneState{cut});
    ZoneState& zs = it->second;
    zs.set.merge_names(names, config_.breadth_cap);

    // Cache the NS RRset the resolver actually kept.
    std::vector<ResourceRecord> kept;
    for (const auto& ns : response.authority) {
        if (std::find(names.begin(), names.end(), ns.target()) != names.end()) {
            kept.push_back(ns);
        }
    }
    cache_.put_positive(cut, RecordType::NS, kept, now, kept.front().ttl);

    for (const auto& glue : response.additional) {
        bool kept_name = std::any_of(zs.set.servers().begin(), zs.set.servers().end(),
                                     [&](const NsSet::Server& s) { return s.name == glue.owner; });
        if (!kept_name) {
            continue;
        }
        if (in_bailiwick(classify_bailiwick(glue.owner, cut, queried_zone))) {
            cache_.put_positive(glue.owner, glue.rtype, {glue}, now, glue.ttl);
            zs.set.attach_address(glue.owner, glue.address());
            metrics_.glue_accepted += 1;
        } else {
            metrics_.glue_discarded += 1;
        }
    }

    spawn_fetches_for_zone(*root_of(t), zs);
}

void Resolver::spawn_fetches_for_zone(Task& root, ZoneState& zs, int spawner_depth) {
    if (root.finished) {
        return;
    }
    FetchPolicy policy = config_.policy;
    if (policy.kind == FetchPolicy::Kind::MaxFetch) {
        int remaining = policy.k - root.names_spawned[zs.set.zone()];
        if (remaining <= 0) {
            return;
        }
        policy.k = remaining;
    }
    std::vector<Question> fetches = proactive_fetch_set(zs.set, policy);
    if (fetches.empty()) {
        return;
    }
    int names = static_cast<int>(fetches.size() / 2);
    root.names_spawned[zs.set.zone()] += names;
    metrics_.ns_names_fetched += static_cast<std::uint64_t>(names);
    for (const auto& q : fetches) {
        spawn_ns_fetch(root, zs.set.zone(), q, spawner_depth);
    }
}

void Resolver::spawn_ns_fetch(Task& root, const DomainName& zone, const Question& q, int depth) {
    ZoneState& zs = zones_.at(zone);
    zs.outstanding[q.name] += 1;
    zs.total_outstanding += 1;

    auto hook = [this, zone](Task& fetch) { deliver_fetch_outcome(zone, fetch); };

    if (auto it = inflight_.find(q); it != inflight_.end()) {
        // Same (name, type) already resolving: join it instead of re-issuing.
        it->second->completion_hooks.push_back(std::move(hook));
        metrics_.fetch_joins += 1;
        return;
    }
    metrics_.ns_fetch_queries += 1;
    if (config_.record_fetch_log) {
        metrics_.fetch_log.push_back(FetchRecord{q.name, q.rtype, zone});
    }

    auto task = std::make_unique<Task>();
    task->q = q;
    task->root = &root;
    task->is_ns_fetch = true;
    task->depth = depth + 1;
    task->completion_hooks.push_back(std::move(hook));
    Task* raw = task.get();
    live_.emplace(raw, std::move(task));
    root.live_children += 1;
    inflight_.emplace(q, raw);

    if (raw->depth > config_.max_fetch_depth) {
        complete(*raw, Rcode::ServFail, {});
        return;
    }
    step(*raw);
}

void Resolver::deliver_fetch_outcome(const DomainName& zone, Task& fetch) {
    auto it = zones_.find(zone);
    if (it == zones_.end()) {
        return;
    }
    ZoneState& zs = it->second;
    zs.outstanding[fetch.q.name] -= 1;
    zs.total_outstanding -= 1;

    if (fetch.outcome == Rcode::NoError && !fetch.records.empty()) {
        zs.set.attach_address(fetch.q.name, fetch.records.front().address());
    } else if (zs.outstanding[fetch.q.name] == 0) {
        zs.set.mark_failed(fetch.q.name);
    }
    wake_or_fail_waiters(zs);
}

void Resolver::wake_or_fail_waiters(ZoneState& zs) {
    if (zs.waiters.empty()) {
        return;
    }
    if (zs.set.has_address()) {
        std::vector<Task*> ready;
        ready.swap(zs.waiters);
        for (Task* t : ready) {
            t->waiting_zone.reset();
            if (!t->finished) {
                step(*t);
            }
        }
        return;
    }
    if (zs.total_outstanding == 0) {
        // Nothing in flight can give this zone an address anymore.
        std::vector<Task*> doomed;
        doomed.swap(zs.waiters);
        for (Task* t : doomed) {
            t->waiting_zone.reset();
            if (!t->finished) {
                complete(*t, Rcode::ServFail, {});
            }
        }
    }
}

Endpoint Resolver::select_server(ZoneState& zs) {
    auto candidates = zs.set.addressed();
    assert(!candidates.empty());
    if (config_.selector.kind == SelectorConfig::Kind::Srtt) {
        const Endpoint* best = srtt_.pick(candidates);
        return *best;
    }
    const NsSet::Server* chosen = candidates[zs.rr_cursor % candidates.size()];
    zs.rr_cursor += 1;
    return *chosen->address;
}

void Resolver::complete(Task& t, Rcode rcode, std::vector<ResourceRecord> records) {
    if (t.finished) {
        return;
    }
    t.finished = true;
    t.outcome = rcode;
    t.records = std::move(records);

    if (t.waiting_zone) {
        if (auto it = zones_.find(*t.waiting_zone); it != zones_.end()) {
            std::erase(it->second.waiters, &t);
        }
        t.waiting_zone.reset();
    }
    if (t.root != nullptr) {
        if (auto it = inflight_.find(t.q); it != inflight_.end() && it->second == &t) {
            inflight_.erase(it);
        }
    }

    auto hooks = std::move(t.completion_hooks);
    t.completion_hooks.clear();
    for (auto& hook : hooks) {
        hook(t);
    }

    if (t.root == nullptr) {
        switch (rcode) {
            case Rcode::NoError: metrics_.client_noerror += 1; break;
            case Rcode::NxDomain: metrics_.client_nxdomain += 1; break;
            case Rcode::ServFail: metrics_.client_servfail += 1; break;
        }
        DnsMessage query = DnsMessage::query(0, t.q.name, t.q.rtype);
        TaskResult result;
        if (rcode == Rcode::NoError) {
            result.response = DnsMessage::answer_response(query, t.records);
        } else {
            result.response = DnsMessage::negative_response(query, std::nullopt);
            result.response.rcode = rcode;
        }
        result.budget_used = t.budget.used;
        result.nx_on_ns_fetch = t.nx_on_ns_fetch;
        result.critical_path_exchanges = t.critical_exchanges;
        if (t.on_done) {
            auto cb = std::move(t.on_done);
            cb(result);
        }
    } else {
        Task* root = t.root;
        root->live_children -= 1;
        maybe_destroy(*root);
    }
    maybe_destroy(t);
}

void Resolver::fail_request(Task& root) {
    if (!root.finished) {
        complete(root, Rcode::ServFail, {});
    }
}

void Resolver::maybe_destroy(Task& t) {
    if (!t.finished || t.pending_exchange || t.live_children > 0 || t.destroy_scheduled) {
        return;
    }
    // Deferred so stack frames in the current completion cascade can still
    // inspect the task; nothing else references it once the flags clear.
    t.destroy_scheduled = true;
    net_.engine().schedule_in(0, [this, task = &t]() { live_.erase(task); });
}

}  // namespace nxns
