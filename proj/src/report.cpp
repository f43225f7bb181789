#include "btt/report.hpp"

#include <sstream>

namespace btt {

std::uint64_t fnv1a64(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string digest_hex(const std::string& s)
{
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string vec_str(const Vec& v)
{
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i].str();
    os << "]";
    return os.str();
}

Report::Report(std::string command, const std::string& input_text)
    : command_(std::move(command)), digest_(digest_hex(input_text))
{
}

void Report::kv(const std::string& key, const std::string& value)
{
    items_.push_back({key, value});
}

std::string Report::str() const
{
    std::ostringstream os;
    os << "btt-report: 1\n";
    os << "tool: btt " << kToolVersion << "\n";
    os << "command: " << command_ << "\n";
    os << "input-digest: " << digest_ << "\n";
    os << "status: " << status_ << "\n";
    for (const auto& [k, v] : items_)
        os << k << ": " << v << "\n";
    return os.str();
}

} // namespace btt
