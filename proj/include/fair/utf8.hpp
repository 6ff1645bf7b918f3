#ifndef FAIR_UTF8_HPP
#define FAIR_UTF8_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fair::utf8 {

inline constexpr std::string_view replacement_character = "\xEF\xBF\xBD";

namespace detail {

// Length of the well-formed sequence starting at `pos`, or 0 if it is ill-formed.
inline std::size_t sequence_length(std::string_view s, std::size_t pos)
{
    auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    const unsigned char lead = byte(pos);
    if (lead < 0x80)
        return 1;
    std::size_t len;
    unsigned char lo = 0x80, hi = 0xBF;
    if (lead >= 0xC2 && lead <= 0xDF) {
        len = 2;
    } else if (lead >= 0xE0 && lead <= 0xEF) {
        len = 3;
        if (lead == 0xE0) lo = 0xA0;
        if (lead == 0xED) hi = 0x9F;
    } else if (lead >= 0xF0 && lead <= 0xF4) {
        len = 4;
        if (lead == 0xF0) lo = 0x90;
        if (lead == 0xF4) hi = 0x8F;
    } else {
        return 0;
    }
    if (pos + len > s.size())
        return 0;
    if (byte(pos + 1) < lo || byte(pos + 1) > hi)
        return 0;
    for (std::size_t i = 2; i < len; ++i)
        if (byte(pos + i) < 0x80 || byte(pos + i) > 0xBF)
            return 0;
    return len;
}

} // namespace detail

inline bool is_valid(std::string_view s)
{
    for (std::size_t pos = 0; pos < s.size();) {
        const std::size_t len = detail::sequence_length(s, pos);
        if (len == 0)
            return false;
        pos += len;
    }
    return true;
}

/// Replaces every ill-formed byte with U+FFFD. Returns the number of replacements.
inline std::size_t sanitize(std::string& s)
{
    if (is_valid(s))
        return 0;
    std::string out;
    out.reserve(s.size() + 8);
    std::size_t replaced = 0;
    for (std::size_t pos = 0; pos < s.size();) {
        const std::size_t len = detail::sequence_length(s, pos);
        if (len == 0) {
            out += replacement_character;
            ++replaced;
            ++pos;
        } else {
            out.append(s, pos, len);
            pos += len;
        }
    }
    s = std::move(out);
    return replaced;
}

/// Decodes valid UTF-8 into code points; ill-formed bytes decode as U+FFFD.
inline std::vector<char32_t> decode(std::string_view s)
{
    std::vector<char32_t> out;
    out.reserve(s.size());
    for (std::size_t pos = 0; pos < s.size();) {
        const std::size_t len = detail::sequence_length(s, pos);
        if (len == 0) {
            out.push_back(U'�');
            ++pos;
            continue;
        }
        const auto lead = static_cast<unsigned char>(s[pos]);
        char32_t cp = len == 1 ? lead : len == 2 ? (lead & 0x1F) : len == 3 ? (lead & 0x0F) : (lead & 0x07);
        for (std::size_t i = 1; i < len; ++i)
            cp = (cp << 6) | (static_cast<unsigned char>(s[pos + i]) & 0x3F);
        out.push_back(cp);
        pos += len;
    }
    return out;
}

/// Display width in code points.
inline std::size_t length(std::string_view s)
{
    std::size_t n = 0;
    for (std::size_t pos = 0; pos < s.size();) {
        const std::size_t len = detail::sequence_length(s, pos);
        pos += len == 0 ? 1 : len;
        ++n;
    }
    return n;
}

} // namespace fair::utf8

#endif // FAIR_UTF8_HPP
