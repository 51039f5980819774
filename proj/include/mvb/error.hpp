#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvb {

enum class Errc {
    MissingSlot,
    DuplicateAtom,
    EmptyFace,
    WrongArity,
    TooLargeToRender,
    BadAxis,
    ArityMismatch,
    ClosureCapExceeded,
    EnumerationCapExceeded,
    CertificateInvalid,
    IncompatibleFibers,
    NotAPairing,
    SpecParseError,
    BadWord,
};

std::string_view errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// MVB_LOG=error|warn|info|debug, default warn
enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };
void log(LogLevel level, std::string_view msg);

}  // namespace mvb
