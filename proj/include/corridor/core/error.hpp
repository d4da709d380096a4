#pragma once

#include <stdexcept>
#include <string>

namespace corridor {

/// Error taxonomy surfaced by the CLI as "<category>: <message>".
enum class ErrorCategory {
    config,    // bad or inconsistent configuration / parameters
    io,        // file read/write failures
    contract,  // precondition violated by the caller
    numeric,   // singular system, non-finite intermediate, ...
    window,    // window projection does not fit the image
    pipeline   // per-frame failure with frame context attached
};

const char* category_name(ErrorCategory cat);

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, const std::string& msg)
        : std::runtime_error(msg), category_(cat) {}

    ErrorCategory category() const { return category_; }

private:
    ErrorCategory category_;
};

[[noreturn]] inline void raise(ErrorCategory cat, const std::string& msg) {
    throw Error(cat, msg);
}

}  // namespace corridor
