#include "nxns/names.hpp"

#include <algorithm>
#include <cctype>

namespace nxns {

namespace {

std::string normalize_label(std::string_view label) {
    if (label.empty()) {
        throw NameError("empty label");
    }
    if (label.size() > 63) {
        throw NameError("label longer than 63 octets: " + std::string(label));
    }
    std::string out(label);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

DomainName DomainName::parse(std::string_view text) {
    DomainName name;
    if (text.empty() || text == ".") {
        return name;
    }
    if (text.back() == '.') {
        text.remove_suffix(1);
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t dot = text.find('.', start);
        std::string_view label =
            dot == std::string_view::npos ? text.substr(start) : text.substr(start, dot - start);
        name.labels_.push_back(normalize_label(label));
        if (dot == std::string_view::npos) {
            break;
        }
        start = dot + 1;
    }
    if (name.encoded_length() > 255) {
        throw NameError("name exceeds 255 encoded octets: " + std::string(text));
    }
    return name;
}

DomainName DomainName::prepend(std::string_view label, const DomainName& suffix) {
    DomainName name;
    name.labels_.reserve(suffix.labels_.size() + 1);
    name.labels_.push_back(normalize_label(label));
    name.labels_.insert(name.labels_.end(), suffix.labels_.begin(), suffix.labels_.end());
    if (name.encoded_length() > 255) {
        throw NameError("name exceeds 255 encoded octets");
    }
    return name;
}

DomainName DomainName::parent() const {
    DomainName up;
    if (labels_.size() > 1) {
        up.labels_.assign(labels_.begin() + 1, labels_.end());
    }
    return up;
}

std::size_t DomainName::encoded_length() const {
    std::size_t total = 1;  // terminating root octet
    for (const auto& label : labels_) {
        total += 1 + label.size();
    }
    return total;
}

std::string DomainName::to_string() const {
    if (labels_.empty()) {
        return ".";
    }
    std::string out;
    for (const auto& label : labels_) {
        out += label;
        out += '.';
    }
    return out;
}

bool is_subordinate(const DomainName& child, const DomainName& parent) {
    const auto& c = child.labels();
    const auto& p = parent.labels();
    if (p.size() > c.size()) {
        return false;
    }
    return std::equal(p.rbegin(), p.rend(), c.rbegin());
}

std::size_t DomainNameHash::operator()(const DomainName& name) const {
    std::size_t h = 1469598103934665603ull;
    for (const auto& label : name.labels()) {
        for (char ch : label) {
            h ^= static_cast<unsigned char>(ch);
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace nxns
