#pragma once

#include <stdexcept>
#include <string>

namespace harleak {

// Categories map one-to-one onto CLI exit codes.
enum class ErrorKind {
    Config,     // bad or inconsistent configuration (exit 2)
    Io,         // unreadable input (exit 3)
    Format,     // malformed data (exit 3)
    Invariant,  // internal contract breach (exit 4)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_config(const std::string& msg) { throw Error(ErrorKind::Config, msg); }
[[noreturn]] inline void throw_io(const std::string& msg) { throw Error(ErrorKind::Io, msg); }
[[noreturn]] inline void throw_format(const std::string& msg) { throw Error(ErrorKind::Format, msg); }
[[noreturn]] inline void throw_invariant(const std::string& msg) { throw Error(ErrorKind::Invariant, msg); }

int exit_code_for(ErrorKind kind) noexcept;
const char* to_string(ErrorKind kind) noexcept;

}  // namespace harleak
