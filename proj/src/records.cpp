#include "cfcolor/records.hpp"

#include <chrono>
#include <ctime>
#include <ostream>

#include <unistd.h>

namespace cfcolor {

nlohmann::ordered_json to_json(const FieldValue& value)
{
    return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, value);
}

nlohmann::ordered_json to_json(const Row& row)
{
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [name, value] : row.fields())
        out[name] = to_json(value);
    return out;
}

nlohmann::ordered_json to_json(std::span<const Row> rows)
{
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& row : rows)
        out.push_back(to_json(row));
    return out;
}

std::string scalar_text(const FieldValue& value)
{
    if (const auto* s = std::get_if<std::string>(&value))
        return *s;
    return to_json(value).dump();
}

namespace {

std::string csv_escape(const std::string& text)
{
    if (text.find_first_of(",\"\n\r") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace

void write_csv(std::ostream& out, std::span<const Row> rows)
{
    if (rows.empty())
        return;
    bool first = true;
    for (const auto& [name, value] : rows.front().fields()) {
        out << (first ? "" : ",") << csv_escape(name);
        first = false;
    }
    out << '\n';
    for (const auto& row : rows) {
        first = true;
        for (const auto& [name, value] : row.fields()) {
            out << (first ? "" : ",") << csv_escape(scalar_text(value));
            first = false;
        }
        out << '\n';
    }
}

nlohmann::ordered_json envelope(const std::string& command, nlohmann::ordered_json records)
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
    char host[256] = {0};
    if (gethostname(host, sizeof host - 1) != 0)
        host[0] = '\0';

    nlohmann::ordered_json out;
    out["schema"] = kSchema;
    out["header"] = {{"generated_at", stamp}, {"host", host}};
    out["command"] = command;
    out["records"] = std::move(records);
    return out;
}

} // namespace cfcolor
