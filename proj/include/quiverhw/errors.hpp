#pragma once

#include <stdexcept>
#include <string>

namespace quiverhw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAdmissible : Error {
    enum class Cause { short_relation, degree_cap };
    NotAdmissible(Cause c, const std::string& what)
        : Error(what), cause(c) {}
    Cause cause;
};

struct NotMonomial : Error {
    using Error::Error;
};

struct NotApplicable : Error {
    using Error::Error;
};

/// A resolution, ordering search or oracle enumeration ran past its cap.
struct CapExceeded : Error {
    using Error::Error;
};

struct ResolutionCapExceeded : CapExceeded {
    using CapExceeded::CapExceeded;
};

struct TooManyOrderings : CapExceeded {
    using CapExceeded::CapExceeded;
};

struct DimensionCapExceeded : CapExceeded {
    using CapExceeded::CapExceeded;
};

struct PreconditionFailed : Error {
    using Error::Error;
};

struct CertificateInvalid : Error {
    using Error::Error;
};

} // namespace quiverhw
