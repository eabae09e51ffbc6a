#pragma once

#include <stdexcept>
#include <string>

namespace graphmean {

// Library error with a stable machine-readable code (NotGraphical,
// DimensionMismatch, UnsupportedCase, ...). The CLI maps these to
// {code, message} lines and exit status 1.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

} // namespace graphmean
