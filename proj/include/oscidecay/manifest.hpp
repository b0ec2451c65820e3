// Run manifests: the subcommand, its resolved parameters, the master seed,
// the tool version and the input digest. Identical manifests reproduce
// identical outputs byte for byte; every output file embeds the manifest
// digest.

#ifndef OSCIDECAY_MANIFEST_HPP
#define OSCIDECAY_MANIFEST_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "oscidecay/version.hpp"

namespace oscidecay {

inline std::uint64_t fnv1a64(const std::string& data, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)v);
    return buf;
}

struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> parameters;  // resolved values, sorted by key
    std::uint64_t master_seed = 0;
    std::string tool_version = kVersion;
    std::string input_digest;  // hex of the problem file bytes, empty if none

    void set_input(const std::string& raw_bytes) { input_digest = hex64(fnv1a64(raw_bytes)); }

    std::string text() const {
        std::ostringstream out;
        out << "subcommand=" << subcommand << "\n";
        for (const auto& [k, v] : parameters) out << k << "=" << v << "\n";
        out << "seed=" << master_seed << "\n";
        out << "version=" << tool_version << "\n";
        out << "input_digest=" << (input_digest.empty() ? "-" : input_digest) << "\n";
        return out.str();
    }

    std::string digest() const { return hex64(fnv1a64(text())); }
};

}  // namespace oscidecay

#endif
