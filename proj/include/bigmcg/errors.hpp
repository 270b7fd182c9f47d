#pragma once

#include <stdexcept>
#include <string>

namespace bigmcg {

/// Base of every error raised by the engine. `kind()` is a stable tag used
/// in reports and by the CLI to pick an exit code.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define BIGMCG_ERROR(Name)                                                   \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}       \
    }

BIGMCG_ERROR(ConfigError);
BIGMCG_ERROR(MalformedAtlas);
BIGMCG_ERROR(InvariantViolation);
BIGMCG_ERROR(IndexOutOfWindow);
BIGMCG_ERROR(UnknownCurve);
BIGMCG_ERROR(UnknownName);
BIGMCG_ERROR(ZeroClass);
BIGMCG_ERROR(OutOfWindow);
BIGMCG_ERROR(DomainMismatch);
BIGMCG_ERROR(ArithmeticOverflow);
BIGMCG_ERROR(TooLarge);
BIGMCG_ERROR(ScriptNotApplicable);
BIGMCG_ERROR(MalformedScript);

#undef BIGMCG_ERROR

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : Error("SyntaxError", what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace bigmcg
