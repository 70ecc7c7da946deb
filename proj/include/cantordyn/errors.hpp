#pragma once

#include <stdexcept>
#include <string>

namespace cantordyn {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File or syntax level problems while reading an artifact.
class ParseError : public Error {
public:
    using Error::Error;
};

// A parsed artifact violates its structural invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

class UnknownStateError : public Error {
public:
    using Error::Error;
};

class MalformedTapeError : public Error {
public:
    using Error::Error;
};

class WindowTooSmallError : public Error {
public:
    using Error::Error;
};

class NotReversibleError : public Error {
public:
    using Error::Error;
};

class InitialReachableError : public Error {
public:
    using Error::Error;
};

class LoopingMachineError : public Error {
public:
    using Error::Error;
};

class AlphabetMismatchError : public Error {
public:
    using Error::Error;
};

class NonBinaryAlphabetError : public Error {
public:
    using Error::Error;
};

class NoBlockMatchError : public Error {
public:
    using Error::Error;
};

class TypeMismatchError : public Error {
public:
    using Error::Error;
};

class DecodeError : public Error {
public:
    using Error::Error;
};

}  // namespace cantordyn
