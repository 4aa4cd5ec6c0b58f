#include "qll/key.hpp"

#include "qll/errors.hpp"
#include "qll/rng.hpp"

namespace qll {

int Key::ones() const
{
    int n = 0;
    for (std::uint8_t b : bits) {
        n += b;
    }
    return n;
}

std::string Key::to_string() const
{
    std::string s;
    s.reserve(bits.size());
    for (std::uint8_t b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

Key Key::from_string(const std::string& text)
{
    Key key;
    key.bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw Error("key strings may only contain '0' and '1'");
        }
        key.bits.push_back(c == '1' ? 1 : 0);
    }
    if (key.bits.empty()) {
        throw ZeroLengthKeyError("keys must have at least one bit");
    }
    return key;
}

nlohmann::json Key::to_json() const
{
    return nlohmann::json{{"n", length()}, {"bits", to_string()}};
}

Key Key::from_json(const nlohmann::json& j)
{
    Key key = from_string(j.at("bits").get<std::string>());
    if (j.contains("n") && j.at("n").get<int>() != key.length()) {
        throw Error("key length field disagrees with the bit string");
    }
    return key;
}

Key gen_key(int n, std::uint64_t seed)
{
    if (n <= 0) {
        throw ZeroLengthKeyError("keys must have at least one bit");
    }
    RngStream rng = RngStream(seed).derive("key");
    Key key;
    key.bits.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        key.bits.push_back(rng.fair_bit() ? 1 : 0);
    }
    return key;
}

} // namespace qll
