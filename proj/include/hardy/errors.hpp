#ifndef HARDY_ERRORS_HPP
#define HARDY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hardy {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
    std::size_t offset;
    SyntaxError(const std::string& msg, std::size_t off)
        : Error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

struct DomainError : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct AnchorOffGrid : Error { using Error::Error; };
struct AllZero : Error { using Error::Error; };
struct ResourceLimit : Error { using Error::Error; };
struct ZeroImage : Error { using Error::Error; };
struct NotConverged : Error { using Error::Error; };
struct NodalCountMissed : Error {
    int achieved;
    NodalCountMissed(const std::string& msg, int got)
        : Error(msg), achieved(got) {}
};
struct EmptySpectrum : Error { using Error::Error; };
struct DegenerateBlock : Error { using Error::Error; };
struct BracketFailed : Error { using Error::Error; };
struct NotApplicable : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };

} // namespace hardy

#endif
