#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nxns/names.hpp"

namespace nxns {

enum class RecordType { A, AAAA, NS, SOA };

enum class Rcode { NoError, NxDomain, ServFail };

std::string to_string(RecordType type);
std::string to_string(Rcode rcode);
std::optional<RecordType> record_type_from_string(std::string_view text);
std::optional<Rcode> rcode_from_string(std::string_view text);

/// Marker rdata for the SOA record attached to negative answers. Only its
/// modeled size matters; none of the SOA timer fields are carried.
struct SoaMarker {
    bool operator==(const SoaMarker&) const = default;
};

/// Address rdata is an opaque endpoint string (e.g. "192.0.2.1"); no octet
/// semantics are attached to it anywhere in the model.
using Rdata = std::variant<std::string, DomainName, SoaMarker>;

struct ResourceRecord {
    DomainName owner;
    RecordType rtype = RecordType::A;
    std::uint32_t ttl = 0;
    Rdata rdata;

    static ResourceRecord a(DomainName owner, std::uint32_t ttl, std::string address);
    static ResourceRecord aaaa(DomainName owner, std::uint32_t ttl, std::string address);
    static ResourceRecord ns(DomainName owner, std::uint32_t ttl, DomainName target);
    static ResourceRecord soa(DomainName owner, std::uint32_t ttl);

    bool is_address() const { return rtype == RecordType::A || rtype == RecordType::AAAA; }
    const std::string& address() const { return std::get<std::string>(rdata); }
    const DomainName& target() const { return std::get<DomainName>(rdata); }

    bool operator==(const ResourceRecord&) const = default;
};

class MessageError : public std::runtime_error {
public:
    explicit MessageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Question {
    DomainName name;
    RecordType rtype = RecordType::A;
    bool operator==(const Question&) const = default;
};

/// A query or response. Referral responses are validated at construction:
/// NOERROR, empty answer, a single-owner NS RRset in authority, and
/// additional-section glue restricted to A/AAAA records whose owners are
/// NS targets from the authority section.
struct DnsMessage {
    std::uint64_t id = 0;
    bool is_response = false;
    std::optional<Question> question;
    Rcode rcode = Rcode::NoError;
    bool tc = false;
    /// Diagnostic stand-in for REFUSED: set on negative answers to names
    /// outside every zone the server owns.
    bool refused_equivalent = false;
    std::vector<ResourceRecord> answer;
    std::vector<ResourceRecord> authority;
    std::vector<ResourceRecord> additional;
    /// Modeled bulk of records not represented individually (DNSSEC
    /// signature payload on negative answers); counted by message_size.
    std::size_t extra_payload_bytes = 0;

    static DnsMessage query(std::uint64_t id, DomainName name, RecordType rtype);
    static DnsMessage answer_response(const DnsMessage& query, std::vector<ResourceRecord> records);
    static DnsMessage negative_response(const DnsMessage& query,
                                        std::optional<ResourceRecord> soa_record,
                                        bool refused_equivalent = false);
    /// Throws MessageError if the referral invariants do not hold.
    static DnsMessage referral(const DnsMessage& query, std::vector<ResourceRecord> ns_records,
                               std::vector<ResourceRecord> glue);

    bool is_referral() const;
    /// Owner shared by the authority NS RRset; only valid for referrals.
    const DomainName& zone_cut() const;
};

enum class BailiwickClass { InBailiwickStrict, InBailiwickWider, OutOfBailiwick };

std::string to_string(BailiwickClass cls);

/// Classifies an NS target name against the RRset owner and the zone origin.
/// Strict: subordinate to the RRset owner. Wider: subordinate to the zone
/// origin (but not the owner). Everything else is out of bailiwick.
/// Throws std::invalid_argument unless rrset_owner is subordinate to
/// zone_origin.
BailiwickClass classify_bailiwick(const DomainName& ns_name, const DomainName& rrset_owner,
                                  const DomainName& zone_origin);

inline bool in_bailiwick(BailiwickClass cls) { return cls != BailiwickClass::OutOfBailiwick; }

}  // namespace nxns
