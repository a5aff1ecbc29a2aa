#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "nxns/message.hpp"

namespace nxns {

class ZoneError : public std::runtime_error {
public:
    explicit ZoneError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Authoritative data for one zone. Delegations are NS RRsets owned by
/// names strictly below the origin; a query under such a cut is answered
/// with a referral rather than from the zone's own records.
class Zone {
public:
    explicit Zone(DomainName origin, bool dnssec_like = false)
        : origin_(std::move(origin)), dnssec_like_(dnssec_like) {}

    const DomainName& origin() const { return origin_; }
    bool dnssec_like() const { return dnssec_like_; }
    void set_dnssec_like(bool value) { dnssec_like_ = value; }

    /// Throws ZoneError unless the owner is subordinate to the origin.
    void add(ResourceRecord record);

    bool contains(const DomainName& name) const { return is_subordinate(name, origin_); }
    bool has_records_for(const DomainName& name) const;

    const std::vector<ResourceRecord>* lookup(const DomainName& name, RecordType type) const;

    /// Shallowest delegation cut strictly below the origin that encloses
    /// the name, if any.
    std::optional<DomainName> find_cut(const DomainName& name) const;

    std::size_t record_count() const;

private:
    DomainName origin_;
    bool dnssec_like_ = false;
    std::map<DomainName, std::map<RecordType, std::vector<ResourceRecord>>> records_;
};

/// Parses the minimal zone-file format: one `owner TTL TYPE rdata` record
/// per line, `$ORIGIN <name>` directives, `;` comments, and `@` for the
/// current origin. Owners without a trailing dot are relative to the origin.
Zone load_zone(std::istream& input, bool dnssec_like = false);
Zone load_zone_file(const std::string& path, bool dnssec_like = false);

}  // namespace nxns
