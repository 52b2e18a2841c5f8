#pragma once

#include <stdexcept>
#include <string>

namespace floatconv {

// Base of every error the library raises. kind() is the stable identifier
// used in CLI diagnostics (ERR:<kind>:...).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define FLOATCONV_DEFINE_ERROR(Name)                                           \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}         \
    };

// Argument outside the closed domain of a characteristic or profile.
FLOATCONV_DEFINE_ERROR(DomainError)
// Malformed or physically inconsistent input.
FLOATCONV_DEFINE_ERROR(ValidationError)
// Zero or negative cable tension where a finite radius is required.
FLOATCONV_DEFINE_ERROR(SingularityError)
FLOATCONV_DEFINE_ERROR(NumericalError)
FLOATCONV_DEFINE_ERROR(NoRootError)
FLOATCONV_DEFINE_ERROR(UnreachableForce)
FLOATCONV_DEFINE_ERROR(UnreachableObject)
// Grip reaction drove a back-drivable stage backwards.
FLOATCONV_DEFINE_ERROR(BackdriveFault)
FLOATCONV_DEFINE_ERROR(ConfigError)

#undef FLOATCONV_DEFINE_ERROR

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("ParseError", "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// The actuator cannot supply the operating force required at a phase-2 tick.
class ActuatorStall : public Error {
public:
    ActuatorStall(std::size_t grip_tick, double required, double cap)
        : Error("ActuatorStall",
                "required " + std::to_string(required) + " N exceeds cap " + std::to_string(cap) +
                    " N at gripping tick " + std::to_string(grip_tick)),
          grip_tick_(grip_tick), required_(required) {}

    std::size_t grip_tick() const noexcept { return grip_tick_; }
    double required() const noexcept { return required_; }

private:
    std::size_t grip_tick_;
    double required_;
};

}  // namespace floatconv
