#pragma once

#include <stdexcept>
#include <string>

namespace pg3 {

/// Base class for all pg3 errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// field construction / arithmetic
class NotOddPrime : public Error { public: using Error::Error; };
class ExponentZero : public Error { public: using Error::Error; };
class FieldTooLarge : public Error { public: using Error::Error; };
class DivisionByZero : public Error { public: using Error::Error; };
class FieldMismatch : public Error { public: using Error::Error; };

// geometry
class EvenCharacteristic : public Error { public: using Error::Error; };
class IdenticalPoints : public Error { public: using Error::Error; };
class PointNotOnPlane : public Error { public: using Error::Error; };
class InternalInvariantBroken : public Error { public: using Error::Error; };

// quadrics
class DegenerateForm : public Error { public: using Error::Error; };
class NotHyperbolic : public Error { public: using Error::Error; };

// text file parsing (family files, geometry caches)
class FormatError : public Error { public: using Error::Error; };

// audit
class GeometryMissing : public Error { public: using Error::Error; };
class NotAFailure : public Error { public: using Error::Error; };

} // namespace pg3
