#pragma once

#include "btt/scalar.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace btt {

inline constexpr const char* kToolVersion = "0.1.0";

std::uint64_t fnv1a64(const std::string& s);
std::string digest_hex(const std::string& s);

std::string vec_str(const Vec& v);

// Deterministic line-oriented report:
//   btt-report: 1
//   tool: btt <version>
//   command: <command>
//   input-digest: <16 hex>
//   status: pass|fail|inconclusive
//   <key>: <value>      (in emission order)
class Report {
public:
    Report(std::string command, const std::string& input_text);

    void set_status(const std::string& s) { status_ = s; }
    const std::string& status() const { return status_; }
    void kv(const std::string& key, const std::string& value);

    std::string str() const;

private:
    std::string command_;
    std::string digest_;
    std::string status_ = "pass";
    std::vector<std::pair<std::string, std::string>> items_;
};

} // namespace btt
