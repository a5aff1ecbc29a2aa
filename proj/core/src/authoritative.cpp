#include "nxns/authoritative.hpp"

#include <algorithm>

namespace nxns {

std::vector<DomainName> gen_referral_a(AttackVariantConfig& cfg, const DomainName&) {
    std::vector<DomainName> names;
    names.reserve(static_cast<std::size_t>(std::max(cfg.n, 0)));
    for (int i = 0; i < cfg.n; ++i) {
        const std::string& tld = cfg.target_tld_pool[(cfg.counter + static_cast<std::uint64_t>(i)) %
                                                     cfg.target_tld_pool.size()];
        DomainName name = DomainName::parse("ns1.fakens" +
                                            std::to_string(cfg.counter + static_cast<std::uint64_t>(i)) +
                                            "." + tld);
        names.push_back(std::move(name));
    }
    cfg.counter += static_cast<std::uint64_t>(std::max(cfg.n, 0));
    return names;
}

std::vector<DomainName> gen_referral_b(AttackVariantConfig& cfg, const DomainName&) {
    std::vector<DomainName> names;
    names.reserve(static_cast<std::size_t>(std::max(cfg.n, 0)));
    for (int i = 0; i < cfg.n; ++i) {
        names.push_back(DomainName::prepend(
            "fakens" + std::to_string(cfg.counter + static_cast<std::uint64_t>(i)), cfg.victim_suffix));
    }
    cfg.counter += static_cast<std::uint64_t>(std::max(cfg.n, 0));
    return names;
}

std::vector<DomainName> gen_referral_c(AttackVariantConfig& cfg, const DomainName&, int stage) {
    std::vector<DomainName> names;
    if (stage == 1) {
        names.reserve(static_cast<std::size_t>(std::max(cfg.n1, 0)));
        for (int i = 1; i <= cfg.n1; ++i) {
            names.push_back(DomainName::prepend(
                "sd" + std::to_string(cfg.counter + static_cast<std::uint64_t>(i)), cfg.self_zone));
        }
        cfg.counter += static_cast<std::uint64_t>(std::max(cfg.n1, 0));
        cfg.stage1_issued = true;
        return names;
    }
    if (stage == 2) {
        if (!cfg.stage1_issued) {
            throw std::logic_error("gen_referral_c: stage-2 referral before any stage-1 referral");
        }
        names.reserve(static_cast<std::size_t>(std::max(cfg.n2, 0)));
        for (int i = 0; i < cfg.n2; ++i) {
            names.push_back(DomainName::parse(
                "ns.fake" + std::to_string(cfg.counter + static_cast<std::uint64_t>(i))));
        }
        cfg.counter += static_cast<std::uint64_t>(std::max(cfg.n2, 0));
        return names;
    }
    throw std::logic_error("gen_referral_c: stage must be 1 or 2");
}

DomainName AuthoritativeServer::allocate_client_name() {
    auto& atk = attacker();
    atk.config.counter += 1;
    return DomainName::prepend("sd" + std::to_string(atk.config.counter), atk.config.self_zone);
}

DnsMessage AuthoritativeServer::answer(const DnsMessage& query, const SizeModel& size_model,
                                       std::size_t udp_limit) {
    if (auto* scripted = std::get_if<ScriptedBehavior>(&behavior_)) {
        return scripted->respond(query, size_model, udp_limit);
    }
    if (is_attacker()) {
        return answer_attacker(query);
    }
    return answer_honest(query, size_model, udp_limit);
}

void AuthoritativeServer::apply_tc(DnsMessage& response, const Zone& zone,
                                   const SizeModel& size_model, std::size_t udp_limit) const {
    if (zone.dnssec_like() && response.rcode == Rcode::NxDomain) {
        response.extra_payload_bytes = kDnssecNegativeInflationBytes;
    }
    switch (tc_override_) {
        case TcOverride::Force0:
            response.tc = false;
            return;
        case TcOverride::Force1:
            response.tc = response.rcode == Rcode::NxDomain;
            return;
        case TcOverride::Auto:
            response.tc = message_size(response, size_model) > udp_limit;
            return;
    }
}

DnsMessage AuthoritativeServer::answer_honest(const DnsMessage& query, const SizeModel& size_model,
                                              std::size_t udp_limit) {
    const Question& q = *query.question;
    // Deepest owned zone enclosing the question name.
    const Zone* zone = nullptr;
    for (const auto& z : zones_) {
        if (z.contains(q.name) && (zone == nullptr || z.origin().label_count() > zone->origin().label_count())) {
            zone = &z;
        }
    }
    if (zone == nullptr) {
        // Outside every owned zone. Real servers answer REFUSED; the model
        // returns NXDOMAIN with a diagnostic flag and no SOA.
        return DnsMessage::negative_response(query, std::nullopt, /*refused_equivalent=*/true);
    }

    // A delegated child cut takes precedence over the zone's own records.
    if (auto cut = zone->find_cut(q.name)) {
        const auto& ns_records = *zone->lookup(*cut, RecordType::NS);
        std::vector<ResourceRecord> glue;
        for (const auto& ns : ns_records) {
            if (!in_bailiwick(classify_bailiwick(ns.target(), *cut, zone->origin()))) {
                continue;
            }
            for (RecordType type : {RecordType::A, RecordType::AAAA}) {
                if (const auto* addrs = zone->lookup(ns.target(), type)) {
                    glue.insert(glue.end(), addrs->begin(), addrs->end());
                }
            }
        }
        DnsMessage response = DnsMessage::referral(query, ns_records, std::move(glue));
        apply_tc(response, *zone, size_model, udp_limit);
        return response;
    }

    if (const auto* records = zone->lookup(q.name, q.rtype)) {
        DnsMessage response = DnsMessage::answer_response(query, *records);
        apply_tc(response, *zone, size_model, udp_limit);
        return response;
    }

    if (zone->has_records_for(q.name)) {
        // Name exists but not with the asked type: NOERROR and an empty
        // answer, SOA in authority (the NODATA shape).
        DnsMessage response = DnsMessage::answer_response(query, {});
        response.authority.push_back(ResourceRecord::soa(zone->origin(), 900));
        apply_tc(response, *zone, size_model, udp_limit);
        return response;
    }

    DnsMessage response =
        DnsMessage::negative_response(query, ResourceRecord::soa(zone->origin(), 900));
    apply_tc(response, *zone, size_model, udp_limit);
    return response;
}

DnsMessage AuthoritativeServer::answer_attacker(const DnsMessage& query) {
    auto& atk = attacker();
    const Question& q = *query.question;
    std::vector<DomainName> targets;
    switch (atk.config.variant) {
        case AttackVariant::A:
            targets = gen_referral_a(atk.config, q.name);
            break;
        case AttackVariant::B:
            targets = gen_referral_b(atk.config, q.name);
            break;
        case AttackVariant::C:
            if (atk.stage1_names.contains(q.name)) {
                targets = gen_referral_c(atk.config, q.name, 2);
            } else {
                targets = gen_referral_c(atk.config, q.name, 1);
                for (const auto& name : targets) {
                    atk.stage1_names.insert(name);
                }
            }
            break;
    }
    // Glueless referral delegating the queried name's own zone; the
    // attacker never sets TC (a TCP retry would only cost it packets).
    std::vector<ResourceRecord> ns_records;
    ns_records.reserve(targets.size());
    for (auto& target : targets) {
        ns_records.push_back(ResourceRecord::ns(q.name, 60, std::move(target)));
    }
    if (ns_records.empty()) {
        return DnsMessage::negative_response(query, std::nullopt);
    }
    return DnsMessage::referral(query, std::move(ns_records), {});
}

}  // namespace nxns
