#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cfcolor {

enum class ErrorKind {
    invalid_input,
    parse,
    out_of_range,
    precondition,
    infeasible,
    internal,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; `kind()` is what the CLI reports.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace cfcolor
