#include "mvb/error.hpp"

#include <cstdlib>
#include <iostream>

namespace mvb {

std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::MissingSlot: return "MissingSlot";
        case Errc::DuplicateAtom: return "DuplicateAtom";
        case Errc::EmptyFace: return "EmptyFace";
        case Errc::WrongArity: return "WrongArity";
        case Errc::TooLargeToRender: return "TooLargeToRender";
        case Errc::BadAxis: return "BadAxis";
        case Errc::ArityMismatch: return "ArityMismatch";
        case Errc::ClosureCapExceeded: return "ClosureCapExceeded";
        case Errc::EnumerationCapExceeded: return "EnumerationCapExceeded";
        case Errc::CertificateInvalid: return "CertificateInvalid";
        case Errc::IncompatibleFibers: return "IncompatibleFibers";
        case Errc::NotAPairing: return "NotAPairing";
        case Errc::SpecParseError: return "SpecParseError";
        case Errc::BadWord: return "BadWord";
    }
    return "Unknown";
}

static LogLevel threshold() {
    static const LogLevel level = [] {
        const char* env = std::getenv("MVB_LOG");
        if (!env) return LogLevel::Warn;
        std::string_view s(env);
        if (s == "error") return LogLevel::Error;
        if (s == "info") return LogLevel::Info;
        if (s == "debug") return LogLevel::Debug;
        return LogLevel::Warn;
    }();
    return level;
}

void log(LogLevel level, std::string_view msg) {
    if (static_cast<int>(level) > static_cast<int>(threshold())) return;
    static constexpr const char* tags[] = {"error", "warn", "info", "debug"};
    std::cerr << "[mvb " << tags[static_cast<int>(level)] << "] " << msg << '\n';
}

}  // namespace mvb
