#pragma once

#include <stdexcept>
#include <string>

namespace hsteklov {

enum class ErrorKind {
    InvalidArgument,
    Geometry,
    Tiling,
    Subgraph,
    Numerical,
    Construction,
    Config,
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Geometry: return "geometry";
    case ErrorKind::Tiling: return "tiling";
    case ErrorKind::Subgraph: return "subgraph";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Construction: return "construction";
    case ErrorKind::Config: return "config";
    }
    return "unknown";
}

/// Single exception type for the library; `kind()` lets callers map failures
/// to exit codes or structured reports without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace hsteklov
