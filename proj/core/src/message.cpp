#include "nxns/message.hpp"

#include <algorithm>

namespace nxns {

std::string to_string(RecordType type) {
    switch (type) {
        case RecordType::A: return "A";
        case RecordType::AAAA: return "AAAA";
        case RecordType::NS: return "NS";
        case RecordType::SOA: return "SOA";
    }
    return "?";
}

std::string to_string(Rcode rcode) {
    switch (rcode) {
        case Rcode::NoError: return "NOERROR";
        case Rcode::NxDomain: return "NXDOMAIN";
        case Rcode::ServFail: return "SERVFAIL";
    }
    return "?";
}

std::optional<RecordType> record_type_from_string(std::string_view text) {
    if (text == "A") return RecordType::A;
    if (text == "AAAA") return RecordType::AAAA;
    if (text == "NS") return RecordType::NS;
    if (text == "SOA") return RecordType::SOA;
    return std::nullopt;
}

std::optional<Rcode> rcode_from_string(std::string_view text) {
    if (text == "NOERROR") return Rcode::NoError;
    if (text == "NXDOMAIN") return Rcode::NxDomain;
    if (text == "SERVFAIL") return Rcode::ServFail;
    return std::nullopt;
}

ResourceRecord ResourceRecord::a(DomainName owner, std::uint32_t ttl, std::string address) {
    return {std::move(owner), RecordType::A, ttl, Rdata(std::move(address))};
}

ResourceRecord ResourceRecord::aaaa(DomainName owner, std::uint32_t ttl, std::string address) {
    return {std::move(owner), RecordType::AAAA, ttl, Rdata(std::move(address))};
}

ResourceRecord ResourceRecord::ns(DomainName owner, std::uint32_t ttl, DomainName target) {
    return {std::move(owner), RecordType::NS, ttl, Rdata(std::move(target))};
}

ResourceRecord ResourceRecord::soa(DomainName owner, std::uint32_t ttl) {
    return {std::move(owner), RecordType::SOA, ttl, Rdata(SoaMarker{})};
}

DnsMessage DnsMessage::query(std::uint64_t id, DomainName name, RecordType rtype) {
    DnsMessage msg;
    msg.id = id;
    msg.question = Question{std::move(name), rtype};
    return msg;
}

DnsMessage DnsMessage::answer_response(const DnsMessage& query, std::vector<ResourceRecord> records) {
    DnsMessage msg;
    msg.id = query.id;
    msg.is_response = true;
    msg.question = query.question;
    msg.rcode = Rcode::NoError;
    msg.answer = std::move(records);
    return msg;
}

DnsMessage DnsMessage::negative_response(const DnsMessage& query,
                                         std::optional<ResourceRecord> soa_record,
                                         bool refused_equivalent) {
    DnsMessage msg;
    msg.id = query.id;
    msg.is_response = true;
    msg.question = query.question;
    msg.rcode = Rcode::NxDomain;
    msg.refused_equivalent = refused_equivalent;
    if (soa_record) {
        msg.authority.push_back(std::move(*soa_record));
    }
    return msg;
}

DnsMessage DnsMessage::referral(const DnsMessage& query, std::vector<ResourceRecord> ns_records,
                                std::vector<ResourceRecord> glue) {
    if (ns_records.empty()) {
        throw MessageError("referral needs at least one NS record");
    }
    const DomainName& cut = ns_records.front().owner;
    for (const auto& rec : ns_records) {
        if (rec.rtype != RecordType::NS) {
            throw MessageError("referral authority section must hold NS records");
        }
        if (rec.owner != cut) {
            throw MessageError("referral NS records must share one owner");
        }
    }
    for (const auto& rec : glue) {
        if (!rec.is_address()) {
            throw MessageError("referral glue must be A/AAAA");
        }
        bool matches_target = std::any_of(ns_records.begin(), ns_records.end(),
                                          [&](const ResourceRecord& ns) { return ns.target() == rec.owner; });
        if (!matches_target) {
            throw MessageError("glue owner " + rec.owner.to_string() +
                               " is not a delegation target of the referral");
        }
    }
    DnsMessage msg;
    msg.id = query.id;
    msg.is_response = true;
    msg.question = query.question;
    msg.rcode = Rcode::NoError;
    msg.authority = std::move(ns_records);
    msg.additional = std::move(glue);
    return msg;
}

bool DnsMessage::is_referral() const {
    return is_response && rcode == Rcode::NoError && answer.empty() && !authority.empty() &&
           authority.front().rtype == RecordType::NS;
}

const DomainName& DnsMessage::zone_cut() const {
    return authority.front().owner;
}

std::string to_string(BailiwickClass cls) {
    switch (cls) {
        case BailiwickClass::InBailiwickStrict: return "in-bailiwick-strict";
        case BailiwickClass::InBailiwickWider: return "in-bailiwick-wider";
        case BailiwickClass::OutOfBailiwick: return "out-of-bailiwick";
    }
    return "?";
}

BailiwickClass classify_bailiwick(const DomainName& ns_name, const DomainName& rrset_owner,
                                  const DomainName& zone_origin) {
    if (!is_subordinate(rrset_owner, zone_origin)) {
        throw std::invalid_argument("rrset owner " + rrset_owner.to_string() +
                                    " is not subordinate to zone origin " + zone_origin.to_string());
    }
    if (is_subordinate(ns_name, rrset_owner)) {
        return BailiwickClass::InBailiwickStrict;
    }
    if (is_subordinate(ns_name, zone_origin)) {
        return BailiwickClass::InBailiwickWider;
    }
    return BailiwickClass::OutOfBailiwick;
}

}  // namespace nxns
