#pragma once

#include <stdexcept>
#include <string>

namespace tmis {

/// Base class for every error the library raises. `kind()` is the stable
/// machine-readable name used in reports and scenario assertions.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define TMIS_ERROR_KIND(NAME)                            \
    class NAME : public Error {                          \
    public:                                              \
        explicit NAME(const std::string& what)           \
            : Error(#NAME, what) {}                      \
    };

TMIS_ERROR_KIND(ParamsMismatch)
TMIS_ERROR_KIND(MapFailure)
TMIS_ERROR_KIND(DecodeError)
TMIS_ERROR_KIND(DecryptFailure)
TMIS_ERROR_KIND(StaleTimestamp)
TMIS_ERROR_KIND(TimestampMismatch)
TMIS_ERROR_KIND(PointCheckFailed)
TMIS_ERROR_KIND(AuthMismatch)
TMIS_ERROR_KIND(CardRejected)
TMIS_ERROR_KIND(EmptyIdentity)
TMIS_ERROR_KIND(ConfigError)
TMIS_ERROR_KIND(IoError)
TMIS_ERROR_KIND(SchemaVersionMismatch)
TMIS_ERROR_KIND(OffCurvePoint)

#undef TMIS_ERROR_KIND

}  // namespace tmis
