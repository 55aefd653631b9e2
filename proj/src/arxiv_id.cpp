#include "citecorr/arxiv_id.hpp"

#include "text_util.hpp"

namespace citecorr {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool digits(std::string_view s, std::size_t n)
{
    if (s.size() != n)
        return false;
    for (char c : s)
        if (!is_digit(c))
            return false;
    return true;
}

bool valid_month(std::string_view mm)
{
    int m = (mm[0] - '0') * 10 + (mm[1] - '0');
    return m >= 1 && m <= 12;
}

// Strips a trailing "vN" and returns the remainder, or nullopt when the
// suffix is present but malformed.
std::optional<std::string_view> strip_version(std::string_view s, std::size_t number_len)
{
    if (s.size() == number_len)
        return s;
    auto rest = s.substr(number_len);
    if (rest.size() < 2 || (rest[0] != 'v' && rest[0] != 'V'))
        return std::nullopt;
    for (char c : rest.substr(1))
        if (!is_digit(c))
            return std::nullopt;
    return s.substr(0, number_len);
}

// archive := [a-z]+ ( '-' [a-z]+ )*
bool valid_archive(std::string_view a)
{
    if (a.empty() || !is_alpha(a.front()) || !is_alpha(a.back()))
        return false;
    char prev = 'a';
    for (char c : a) {
        if (c == '-') {
            if (prev == '-')
                return false;
        } else if (!is_alpha(c)) {
            return false;
        }
        prev = c;
    }
    return true;
}

std::optional<std::string> normalize(std::string_view raw)
{
    std::string_view s = text::trim(raw);
    if (text::istarts_with(s, "oai:arxiv.org:"))
        s.remove_prefix(14);
    if (text::istarts_with(s, "arxiv:"))
        s.remove_prefix(6);

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view archive = s.substr(0, slash);
        std::string_view number = s.substr(slash + 1);
        if (auto dot = archive.find('.'); dot != std::string_view::npos) {
            std::string_view subject = archive.substr(dot + 1);
            if (subject.empty())
                return std::nullopt;
            for (char c : subject)
                if (!is_alpha(c) && c != '-')
                    return std::nullopt;
            archive = archive.substr(0, dot);
        }
        if (!valid_archive(archive) || number.size() < 7)
            return std::nullopt;
        auto core = strip_version(number, 7);
        if (!core || !digits(*core, 7) || !valid_month(core->substr(2, 2)))
            return std::nullopt;
        return text::to_lower(archive) + "/" + std::string(*core);
    }

    if (s.size() < 9 || s[4] != '.')
        return std::nullopt;
    std::size_t len = 9;
    if (s.size() >= 10 && is_digit(s[9]))
        len = 10;
    auto core = strip_version(s, len);
    if (!core || !digits(core->substr(0, 4), 4) || !digits(core->substr(5), len - 5)
        || !valid_month(core->substr(2, 2)))
        return std::nullopt;
    return std::string(*core);
}

} // namespace

std::string normalize_arxiv_id(std::string_view raw)
{
    if (auto id = normalize(raw))
        return *id;
    throw InvalidIdentifier(std::string(raw));
}

std::optional<std::string> try_normalize_arxiv_id(std::string_view raw)
{
    return normalize(raw);
}

bool is_old_style_id(std::string_view normalized)
{
    return normalized.find('/') != std::string_view::npos;
}

std::string archive_prefix(std::string_view normalized)
{
    auto slash = normalized.find('/');
    if (slash == std::string_view::npos)
        return {};
    return std::string(normalized.substr(0, slash));
}

} // namespace citecorr
