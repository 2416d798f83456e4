#pragma once

#include <stdexcept>
#include <string>

namespace hyb {

// Exit-code taxonomy used by the CLI: DomainError/UnsupportedError exit 2 (bad
// input), I/O problems exit 3, NumericError exits 4.
struct DomainError : std::runtime_error {
    std::string code;
    DomainError(std::string c, const std::string& what)
        : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

struct NumericError : std::runtime_error {
    std::string code;
    NumericError(std::string c, const std::string& what)
        : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

struct UnsupportedError : std::runtime_error {
    std::string code;
    UnsupportedError(std::string c, const std::string& what)
        : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

}  // namespace hyb
