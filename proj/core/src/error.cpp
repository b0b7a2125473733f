#include "harleak/error.hpp"

namespace harleak {

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Config:
            return 2;
        case ErrorKind::Io:
        case ErrorKind::Format:
            return 3;
        case ErrorKind::Invariant:
            return 4;
    }
    return 4;
}

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Config:
            return "configuration error";
        case ErrorKind::Io:
            return "I/O error";
        case ErrorKind::Format:
            return "format error";
        case ErrorKind::Invariant:
            return "invariant violation";
    }
    return "error";
}

}  // namespace harleak
