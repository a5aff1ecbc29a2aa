#pragma once

#include <cstddef>

#include "nxns/message.hpp"

namespace nxns {

/// Deterministic byte estimator for DnsMessage. Costs are linear in encoded
/// name lengths with the coefficients below; no wire emulation is attempted.
///
/// Each distinct name is charged its full encoded length once per message;
/// further occurrences of the same name (a referral's repeated NS owner, a
/// glue record naming an NS target) cost nothing beyond the per-record
/// overhead. That stands in for wire compression without modeling pointers,
/// and is what lets ~135 glueless delegation names of typical length fit the
/// default 4096-byte large-response budget while the same referral with full
/// glue does not.
struct SizeModel {
    std::size_t header_bytes = 12;
    std::size_t question_fixed_bytes = 4;   // type + class
    std::size_t record_fixed_bytes = 10;    // type + class + ttl + rdlength
    std::size_t a_rdata_bytes = 4;
    std::size_t aaaa_rdata_bytes = 16;
    std::size_t soa_rdata_bytes = 96;       // mname + rname + five counters, typical sizes
    std::size_t tcp_control_bytes = 60;     // per TCP handshake/teardown packet
    std::size_t udp_limit_bytes = 512;      // plain-UDP truncation threshold
    std::size_t large_response_bytes = 4096;  // EDNS0 budget for referral payloads
};

std::size_t message_size(const DnsMessage& msg, const SizeModel& model);

}  // namespace nxns
