#pragma once

#include <stdexcept>
#include <string>

namespace eqh {

enum class Errc {
    IllegalExponent,
    ConfigMismatch,
    NotHomogeneous,
    ZeroElement,
    NotDivisible,
    BasisMismatch,
    NotInvertible,
    NotGenerated,
    NonIntegralWeight,
    DegreeViolation,
    Stuck,
    Inconsistent,
    RouteMismatch,
    VerificationFailed,
    UnknownSpace,
    BadParam,
    SyntaxError,
    SemanticError,
    TruncationTooSmall,
    UnexpectedFactor,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::IllegalExponent: return "IllegalExponent";
        case Errc::ConfigMismatch: return "ConfigMismatch";
        case Errc::NotHomogeneous: return "NotHomogeneous";
        case Errc::ZeroElement: return "ZeroElement";
        case Errc::NotDivisible: return "NotDivisible";
        case Errc::BasisMismatch: return "BasisMismatch";
        case Errc::NotInvertible: return "NotInvertible";
        case Errc::NotGenerated: return "NotGenerated";
        case Errc::NonIntegralWeight: return "NonIntegralWeight";
        case Errc::DegreeViolation: return "DegreeViolation";
        case Errc::Stuck: return "Stuck";
        case Errc::Inconsistent: return "Inconsistent";
        case Errc::RouteMismatch: return "RouteMismatch";
        case Errc::VerificationFailed: return "VerificationFailed";
        case Errc::UnknownSpace: return "UnknownSpace";
        case Errc::BadParam: return "BadParam";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::SemanticError: return "SemanticError";
        case Errc::TruncationTooSmall: return "TruncationTooSmall";
        case Errc::UnexpectedFactor: return "UnexpectedFactor";
    }
    return "Error";
}

} // namespace eqh
