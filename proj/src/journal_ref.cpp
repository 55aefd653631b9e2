#include "citecorr/journal_ref.hpp"

#include "text_util.hpp"

#include <array>
#include <charconv>
#include <regex>

namespace citecorr {

namespace {

// Building blocks. The journal title may not cross a comma, which keeps a
// search from swallowing the author list in front of it.
#define CC_J R"(([A-Za-z][A-Za-z.&'\- ]*?[A-Za-z.]))"
#define CC_V R"((\d{1,4}))"
#define CC_Y R"(((?:18|19|20)\d\d))"
#define CC_P R"(([A-Za-z]?\d+)(?:\s*-\s*[A-Za-z]?\d+)?)"

enum class Order { jvyp, jvpy, yjvp };

struct Pattern {
    std::regex re;
    Order order;
};

const std::array<Pattern, 4>& patterns()
{
    static const std::array<Pattern, 4> table{{
        // Phys. Rev. D 62 (2000) 043007
        {std::regex(CC_J R"(\s*,?\s*)" CC_V R"(\s*,?\s*\(\s*)" CC_Y R"(\s*\)\s*,?\s*)" CC_P), Order::jvyp},
        // Nucl. Phys. B 574, 169 (2000) / Phys.Rev.D62:043007,2000
        {std::regex(CC_J R"(\s*,?\s*)" CC_V R"(\s*[,:]\s*)" CC_P R"(\s*,?\s*\(?\s*)" CC_Y R"(\s*\)?)"), Order::jvpy},
        // Phys. Lett. B 480 193 (2000)
        {std::regex(CC_J R"(\s*,?\s*)" CC_V R"(\s+)" CC_P R"(\s*\(\s*)" CC_Y R"(\s*\))"), Order::jvpy},
        // 2000 Phys. Rev. D 62 043007
        {std::regex(CC_Y R"(\s+)" CC_J R"(\s*,?\s*)" CC_V R"(\s*,?\s+)" CC_P), Order::yjvp},
    }};
    return table;
}

#undef CC_J
#undef CC_V
#undef CC_Y
#undef CC_P

JournalRef from_match(const std::smatch& m, Order order)
{
    std::string journal, volume, page, year;
    switch (order) {
    case Order::jvyp:
        journal = m[1]; volume = m[2]; year = m[3]; page = m[4];
        break;
    case Order::jvpy:
        journal = m[1]; volume = m[2]; page = m[3]; year = m[4];
        break;
    case Order::yjvp:
        year = m[1]; journal = m[2]; volume = m[3]; page = m[4];
        break;
    }
    int y = 0;
    std::from_chars(year.data(), year.data() + year.size(), y);
    return {text::collapse_whitespace(journal), volume, page, y};
}

} // namespace

std::optional<JournalRef> parse_journal_ref(std::string_view input)
{
    std::string s(text::trim(input));
    while (!s.empty() && (s.back() == '.' || s.back() == ';' || s.back() == ','))
        s.pop_back();
    if (s.empty())
        return std::nullopt;
    for (const auto& p : patterns()) {
        std::smatch m;
        if (std::regex_match(s, m, p.re))
            return from_match(m, p.order);
    }
    return std::nullopt;
}

std::optional<JournalRef> find_journal_ref(std::string_view input, std::size_t* start)
{
    std::string s(input);
    std::optional<JournalRef> best;
    std::size_t best_pos = std::string::npos;
    for (const auto& p : patterns()) {
        std::smatch m;
        if (!std::regex_search(s, m, p.re))
            continue;
        auto pos = static_cast<std::size_t>(m.position(0));
        if (best_pos == std::string::npos || pos < best_pos) {
            best = from_match(m, p.order);
            // The journal group is where the title begins, which for the
            // year-first form is after the year.
            best_pos = pos;
            if (start)
                *start = p.order == Order::yjvp ? pos : static_cast<std::size_t>(m.position(1));
        }
    }
    return best;
}

std::string fold_journal_title(std::string_view title)
{
    std::string out;
    for (char c : title) {
        char l = text::lower(c);
        if ((l >= 'a' && l <= 'z') || (l >= '0' && l <= '9'))
            out.push_back(l);
    }
    return out;
}

std::string normalize_volume(std::string_view volume)
{
    auto v = text::trim(volume);
    while (v.size() > 1 && v.front() == '0')
        v.remove_prefix(1);
    return std::string(v);
}

std::string normalize_page(std::string_view page)
{
    auto p = text::trim(page);
    if (!p.empty() && ((p.front() >= 'A' && p.front() <= 'Z') || (p.front() >= 'a' && p.front() <= 'z')))
        p.remove_prefix(1);
    while (p.size() > 1 && p.front() == '0')
        p.remove_prefix(1);
    return std::string(p);
}

std::string author_surname(std::string_view author)
{
    std::string_view s = text::trim(author);
    if (auto comma = s.find(','); comma != std::string_view::npos)
        s = s.substr(0, comma);
    std::string best;
    std::string current;
    auto flush = [&] {
        std::string lower = text::to_lower(current);
        if (current.size() > 1 && lower != "jr" && lower != "sr")
            best = current;
        current.clear();
    };
    for (char c : s) {
        bool letter = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '-' || c == '\''
                      || static_cast<unsigned char>(c) >= 0x80;
        if (letter) {
            current.push_back(c);
        } else {
            flush();
        }
    }
    flush();
    return best;
}

} // namespace citecorr
