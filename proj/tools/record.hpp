#pragma once

#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace symprol::cli {

enum class Format { records, text };

/// One output record: ordered key=value pairs, the first being the kind.
/// Values with spaces, quotes or '=' are double-quoted with backslash escapes.
class Record {
public:
    explicit Record(std::string kind) { add("record", std::move(kind)); }

    Record& add(std::string key, std::string value)
    {
        m_fields.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    Record& add(std::string key, bool value) { return add(std::move(key), std::string(value ? "true" : "false")); }
    Record& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
    template <class N>
    Record& add(std::string key, N value)
        requires std::is_integral_v<N>
    {
        return add(std::move(key), std::to_string(value));
    }

    void write(std::ostream& out, Format f) const
    {
        if (f == Format::records) {
            for (std::size_t i = 0; i < m_fields.size(); ++i)
                out << (i ? " " : "") << m_fields[i].first << '=' << quote(m_fields[i].second);
            out << '\n';
            return;
        }
        out << m_fields.front().second << '\n';
        for (std::size_t i = 1; i < m_fields.size(); ++i)
            out << "  " << m_fields[i].first << ": " << m_fields[i].second << '\n';
    }

    static std::string quote(const std::string& v)
    {
        const bool plain = !v.empty() && v.find_first_of(" \t\"=\\;") == std::string::npos;
        if (plain)
            return v;
        std::string out = "\"";
        for (char c : v) {
            if (c == '"' || c == '\\')
                out += '\\';
            out += c;
        }
        return out + '"';
    }

private:
    std::vector<std::pair<std::string, std::string>> m_fields;
};

} // namespace symprol::cli
