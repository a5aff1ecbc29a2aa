#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "nxns/engine.hpp"
#include "nxns/message.hpp"

namespace nxns {

struct CacheStats {
    std::uint64_t a = 0;
    std::uint64_t aaaa = 0;
    std::uint64_t ns = 0;
    std::uint64_t nx = 0;
    bool operator==(const CacheStats&) const = default;
};

/// Resolver cache keyed by (name, type). Entries are positive RRsets or
/// negative markers; a lookup after expiry behaves as a miss and drops the
/// entry. Per-kind counters (A/AAAA/NS, plus NX for negatives of any type)
/// track inserts and removals so they always match a full scan.
class Cache {
public:
    struct Positive {
        std::vector<ResourceRecord> records;
        SimTime expiry;
    };
    struct Negative {
        SimTime expiry;
    };

    enum class Outcome { Miss, Hit, NegativeHit };

    struct LookupResult {
        Outcome outcome = Outcome::Miss;
        const std::vector<ResourceRecord>* records = nullptr;
    };

    LookupResult lookup(const DomainName& name, RecordType type, SimTime now);

    void put_positive(const DomainName& name, RecordType type, std::vector<ResourceRecord> records,
                      SimTime now, std::uint32_t ttl_seconds);
    void put_negative(const DomainName& name, RecordType type, SimTime now,
                      std::uint32_t ttl_seconds);

    const CacheStats& stats() const { return stats_; }
    std::size_t entry_count() const { return entries_.size(); }

    /// Rough memory footprint: encoded key length plus a per-record charge;
    /// reported against an optional byte budget, never used to evict.
    std::uint64_t approx_bytes() const { return approx_bytes_; }

    /// Full-scan tally; tests compare it against stats().
    CacheStats scan() const;

private:
    struct Key {
        DomainName name;
        RecordType type;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& key) const {
            return DomainNameHash{}(key.name) * 31 + static_cast<std::size_t>(key.type);
        }
    };
    struct Entry {
        bool negative = false;
        Positive positive;
        SimTime expiry = 0;
    };

    void bump(RecordType type, bool negative, std::int64_t delta);
    std::uint64_t entry_bytes(const Key& key, const Entry& entry) const;
    void erase_entry(const Key& key);

    std::unordered_map<Key, Entry, KeyHash> entries_;
    CacheStats stats_;
    std::uint64_t approx_bytes_ = 0;
};

}  // namespace nxns
