#pragma once

#include <stdexcept>
#include <string>

namespace salt {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (dimension mismatch, bad range, ...).
struct ContractError : Error {
    using Error::Error;
};

// Malformed input data or configuration; maps to CLI exit code 2.
struct ValidationError : Error {
    using Error::Error;
};

// Text that carries no usable signal (empty or all stopwords after tokenization).
struct ZeroInformationError : Error {
    using Error::Error;
};

// Generation backend failure; maps to CLI exit code 3 when terminal.
struct BackendError : Error {
    BackendError(const std::string& what, int attempts_made, bool is_terminal)
        : Error(what), attempts(attempts_made), terminal(is_terminal) {}
    int attempts = 0;
    bool terminal = false;
};

}  // namespace salt
