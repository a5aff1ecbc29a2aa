#include "nxns/zone.hpp"

#include <fstream>
#include <sstream>

namespace nxns {

void Zone::add(ResourceRecord record) {
    if (!contains(record.owner)) {
        throw ZoneError("record owner " + record.owner.to_string() + " outside zone " +
                        origin_.to_string());
    }
    records_[record.owner][record.rtype].push_back(std::move(record));
}

bool Zone::has_records_for(const DomainName& name) const {
    return records_.contains(name);
}

const std::vector<ResourceRecord>* Zone::lookup(const DomainName& name, RecordType type) const {
    auto by_owner = records_.find(name);
    if (by_owner == records_.end()) {
        return nullptr;
    }
    auto by_type = by_owner->second.find(type);
    if (by_type == by_owner->second.end()) {
        return nullptr;
    }
    return &by_type->second;
}

std::optional<DomainName> Zone::find_cut(const DomainName& name) const {
    if (!contains(name) || name == origin_) {
        return std::nullopt;
    }
    // Collect ancestors of `name` strictly below the origin, shallowest first.
    std::vector<DomainName> chain;
    for (DomainName cur = name; cur != origin_; cur = cur.parent()) {
        chain.push_back(cur);
        if (cur.is_root()) {
            break;
        }
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        if (lookup(*it, RecordType::NS) != nullptr) {
            return *it;
        }
    }
    return std::nullopt;
}

std::size_t Zone::record_count() const {
    std::size_t n = 0;
    for (const auto& [owner, by_type] : records_) {
        for (const auto& [type, recs] : by_type) {
            n += recs.size();
        }
    }
    return n;
}

namespace {

DomainName parse_owner(const std::string& token, const DomainName& origin, int line_no) {
    if (token == "@") {
        return origin;
    }
    try {
        if (!token.empty() && token.back() == '.') {
            return DomainName::parse(token);
        }
        DomainName name = DomainName::parse(token);
        // Relative owner: append the origin labels.
        DomainName absolute = origin;
        for (auto it = name.labels().rbegin(); it != name.labels().rend(); ++it) {
            absolute = DomainName::prepend(*it, absolute);
        }
        return absolute;
    } catch (const NameError& err) {
        throw ZoneError("line " + std::to_string(line_no) + ": " + err.what());
    }
}

}  // namespace

Zone load_zone(std::istream& input, bool dnssec_like) {
    std::optional<Zone> zone;
    DomainName origin;
    bool have_origin = false;
    std::string line;
    int line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        if (auto comment = line.find(';'); comment != std::string::npos) {
            line.erase(comment);
        }
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) {
            continue;
        }
        if (first == "$ORIGIN") {
            std::string name;
            if (!(fields >> name)) {
                throw ZoneError("line " + std::to_string(line_no) + ": $ORIGIN needs a name");
            }
            origin = DomainName::parse(name);
            have_origin = true;
            if (!zone) {
                zone.emplace(origin, dnssec_like);
            }
            continue;
        }
        if (!have_origin) {
            throw ZoneError("line " + std::to_string(line_no) + ": record before $ORIGIN");
        }
        DomainName owner = parse_owner(first, origin, line_no);
        std::uint32_t ttl = 0;
        std::string type_text;
        if (!(fields >> ttl >> type_text)) {
            throw ZoneError("line " + std::to_string(line_no) + ": expected `owner TTL TYPE rdata`");
        }
        auto type = record_type_from_string(type_text);
        if (!type) {
            throw ZoneError("line " + std::to_string(line_no) + ": unknown record type " + type_text);
        }
        std::string rdata;
        fields >> rdata;
        switch (*type) {
            case RecordType::A:
                if (rdata.empty()) throw ZoneError("line " + std::to_string(line_no) + ": A needs an address");
                zone->add(ResourceRecord::a(owner, ttl, rdata));
                break;
            case RecordType::AAAA:
                if (rdata.empty()) throw ZoneError("line " + std::to_string(line_no) + ": AAAA needs an address");
                zone->add(ResourceRecord::aaaa(owner, ttl, rdata));
                break;
            case RecordType::NS:
                if (rdata.empty()) throw ZoneError("line " + std::to_string(line_no) + ": NS needs a target");
                zone->add(ResourceRecord::ns(owner, ttl, DomainName::parse(rdata)));
                break;
            case RecordType::SOA:
                zone->add(ResourceRecord::soa(owner, ttl));
                break;
        }
    }
    if (!zone) {
        throw ZoneError("zone input holds no $ORIGIN");
    }
    return std::move(*zone);
}

Zone load_zone_file(const std::string& path, bool dnssec_like) {
    std::ifstream input(path);
    if (!input) {
        throw ZoneError("cannot open zone file " + path);
    }
    return load_zone(input, dnssec_like);
}

}  // namespace nxns
