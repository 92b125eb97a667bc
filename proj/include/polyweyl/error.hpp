#pragma once

#include <stdexcept>
#include <string>

namespace polyweyl {

// Library errors carry a stable machine-readable code next to the human message.
// Codes are part of the interface; tests and the CLI match on them.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace polyweyl
