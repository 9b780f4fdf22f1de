#include "cfcolor/error.hpp"

namespace cfcolor {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::parse: return "parse";
    case ErrorKind::out_of_range: return "out_of_range";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind)
{
}

} // namespace cfcolor
