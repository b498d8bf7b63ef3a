#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cssr {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownSymbol : public Error {
public:
    UnknownSymbol(std::size_t position, std::string token)
        : Error("unknown symbol '" + token + "' at position " + std::to_string(position)),
          position_(position), token_(std::move(token)) {}

    std::size_t position() const { return position_; }
    const std::string& token() const { return token_; }

private:
    std::size_t position_;
    std::string token_;
};

#define CSSR_DEFINE_ERROR(Name)          \
    class Name : public Error {          \
    public:                              \
        using Error::Error;              \
    }

CSSR_DEFINE_ERROR(EmptyInput);
CSSR_DEFINE_ERROR(IoError);
CSSR_DEFINE_ERROR(BadParameter);
CSSR_DEFINE_ERROR(LmaxTooLargeForData);
CSSR_DEFINE_ERROR(WordTooLong);
CSSR_DEFINE_ERROR(UndefinedMorph);
CSSR_DEFINE_ERROR(LmaxMismatch);
CSSR_DEFINE_ERROR(NoRecurrentStates);
CSSR_DEFINE_ERROR(NondeterministicInput);
CSSR_DEFINE_ERROR(MismatchedSupport);
CSSR_DEFINE_ERROR(DepthTooLargeForData);
CSSR_DEFINE_ERROR(LmaxBelowSynchronization);
CSSR_DEFINE_ERROR(InvalidMachine);

#undef CSSR_DEFINE_ERROR

}  // namespace cssr
