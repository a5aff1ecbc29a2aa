#include "nxns/cache.hpp"

namespace nxns {

namespace {
constexpr SimTime seconds(std::uint32_t s) {
    return static_cast<SimTime>(s) * 1000 * kMicrosPerMilli;
}
constexpr std::uint64_t kPerEntryOverheadBytes = 48;
constexpr std::uint64_t kPerRecordBytes = 24;
}  // namespace

Cache::LookupResult Cache::lookup(const DomainName& name, RecordType type, SimTime now) {
    Key key{name, type};
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        return {};
    }
    if (it->second.expiry <= now) {
        erase_entry(key);
        return {};
    }
    if (it->second.negative) {
        return {Outcome::NegativeHit, nullptr};
    }
    return {Outcome::Hit, &it->second.positive.records};
}

void Cache::put_positive(const DomainName& name, RecordType type,
                         std::vector<ResourceRecord> records, SimTime now,
                         std::uint32_t ttl_seconds) {
    Key key{name, type};
    erase_entry(key);
    Entry entry;
    entry.expiry = now + seconds(ttl_seconds);
    entry.positive = Positive{std::move(records), entry.expiry};
    approx_bytes_ += entry_bytes(key, entry);
    bump(type, false, +1);
    entries_.emplace(std::move(key), std::move(entry));
}

void Cache::put_negative(const DomainName& name, RecordType type, SimTime now,
                         std::uint32_t ttl_seconds) {
    Key key{name, type};
    erase_entry(key);
    Entry entry;
    entry.negative = true;
    entry.expiry = now + seconds(ttl_seconds);
    approx_bytes_ += entry_bytes(key, entry);
    bump(type, true, +1);
    entries_.emplace(std::move(key), std::move(entry));
}

void Cache::bump(RecordType type, bool negative, std::int64_t delta) {
    auto apply = [delta](std::uint64_t& counter) {
        counter = static_cast<std::uint64_t>(static_cast<std::int64_t>(counter) + delta);
    };
    if (negative) {
        apply(stats_.nx);
        return;
    }
    switch (type) {
        case RecordType::A: apply(stats_.a); break;
        case RecordType::AAAA: apply(stats_.aaaa); break;
        case RecordType::NS: apply(stats_.ns); break;
        case RecordType::SOA: break;
    }
}

std::uint64_t Cache::entry_bytes(const Key& key, const Entry& entry) const {
    std::uint64_t bytes = kPerEntryOverheadBytes + key.name.encoded_length();
    if (!entry.negative) {
        bytes += kPerRecordBytes * entry.positive.records.size();
    }
    return bytes;
}

void Cache::erase_entry(const Key& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        return;
    }
    approx_bytes_ -= entry_bytes(key, it->second);
    bump(key.type, it->second.negative, -1);
    entries_.erase(it);
}

CacheStats Cache::scan() const {
    CacheStats tally;
    for (const auto& [key, entry] : entries_) {
        if (entry.negative) {
            tally.nx += 1;
            continue;
        }
        switch (key.type) {
            case RecordType::A: tally.a += 1; break;
            case RecordType::AAAA: tally.aaaa += 1; break;
            case RecordType::NS: tally.ns += 1; break;
            case RecordType::SOA: break;
        }
    }
    return tally;
}

}  // namespace nxns
