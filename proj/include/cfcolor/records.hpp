#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace cfcolor {

using FieldValue = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;

// A flat record. JSON and CSV emissions are generated from the same fields,
// in insertion order, with identical scalar text.
class Row {
public:
    Row& add(std::string name, FieldValue value)
    {
        fields_.emplace_back(std::move(name), std::move(value));
        return *this;
    }
    Row& add(std::string name, int value) { return add(std::move(name), FieldValue(std::int64_t{value})); }
    Row& add(std::string name, std::size_t value)
    {
        return add(std::move(name), FieldValue(static_cast<std::uint64_t>(value)));
    }
    Row& add(std::string name, const char* value) { return add(std::move(name), FieldValue(std::string(value))); }

    const std::vector<std::pair<std::string, FieldValue>>& fields() const noexcept { return fields_; }

private:
    std::vector<std::pair<std::string, FieldValue>> fields_;
};

nlohmann::ordered_json to_json(const FieldValue& value);
nlohmann::ordered_json to_json(const Row& row);
nlohmann::ordered_json to_json(std::span<const Row> rows);

// The text a scalar has in JSON output; strings are bare.
std::string scalar_text(const FieldValue& value);

// Header from the first row's field names; one line per row. Cells holding
// a comma, quote or newline are quoted RFC 4180 style.
void write_csv(std::ostream& out, std::span<const Row> rows);

inline constexpr const char* kSchema = "cfcolor/1";

// {"schema": ..., "header": {generated_at, host}, "command": ..., "records": [...]}
// Everything outside "header" is a pure function of the inputs.
nlohmann::ordered_json envelope(const std::string& command, nlohmann::ordered_json records);

} // namespace cfcolor
