#include "nxns/size_model.hpp"

#include <unordered_set>

namespace nxns {

namespace {

class NameCharger {
public:
    /// Full encoded length on first sight of a name, zero afterwards.
    std::size_t charge(const DomainName& name) {
        if (seen_.insert(name).second) {
            return name.encoded_length();
        }
        return 0;
    }

private:
    std::unordered_set<DomainName, DomainNameHash> seen_;
};

}  // namespace

std::size_t message_size(const DnsMessage& msg, const SizeModel& model) {
    NameCharger names;
    std::size_t total = model.header_bytes;
    if (msg.question) {
        total += names.charge(msg.question->name) + model.question_fixed_bytes;
    }
    auto record_cost = [&](const ResourceRecord& rec) {
        std::size_t cost = model.record_fixed_bytes + names.charge(rec.owner);
        switch (rec.rtype) {
            case RecordType::A: cost += model.a_rdata_bytes; break;
            case RecordType::AAAA: cost += model.aaaa_rdata_bytes; break;
            case RecordType::NS: cost += names.charge(rec.target()); break;
            case RecordType::SOA: cost += model.soa_rdata_bytes; break;
        }
        return cost;
    };
    for (const auto& rec : msg.answer) total += record_cost(rec);
    for (const auto& rec : msg.authority) total += record_cost(rec);
    for (const auto& rec : msg.additional) total += record_cost(rec);
    total += msg.extra_payload_bytes;
    return total;
}

}  // namespace nxns
