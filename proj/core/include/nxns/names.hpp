#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nxns {

class NameError : public std::runtime_error {
public:
    explicit NameError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A domain name as an ordered label sequence, leftmost label first
/// ("ns5", "google", "com" for ns5.google.com). Labels are normalized to
/// lowercase at construction; the root name has zero labels.
class DomainName {
public:
    DomainName() = default;

    /// Parses presentation format. A trailing dot is optional; "." and ""
    /// both denote the root. Throws NameError on empty labels, labels
    /// longer than 63 octets, or a total encoded length above 255.
    static DomainName parse(std::string_view text);

    /// Builds <label>.<suffix>. The label is validated and lowercased.
    static DomainName prepend(std::string_view label, const DomainName& suffix);

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t label_count() const { return labels_.size(); }
    bool is_root() const { return labels_.empty(); }

    /// Exactly one label: a top-level domain in this model.
    bool is_tld() const { return labels_.size() == 1; }

    /// Name with the leftmost label removed; parent of the root is the root.
    DomainName parent() const;

    /// Wire-encoding length: one length octet per label plus the label
    /// octets, plus the terminating root octet.
    std::size_t encoded_length() const;

    /// Presentation format with a trailing dot; the root renders as ".".
    std::string to_string() const;

    bool operator==(const DomainName&) const = default;
    auto operator<=>(const DomainName&) const = default;

private:
    std::vector<std::string> labels_;
};

/// True iff parent's labels are a suffix of child's labels on whole-label
/// boundaries. Equality counts: every name is subordinate to itself, and
/// every name is subordinate to the root.
bool is_subordinate(const DomainName& child, const DomainName& parent);

struct DomainNameHash {
    std::size_t operator()(const DomainName& name) const;
};

}  // namespace nxns
