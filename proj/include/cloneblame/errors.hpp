#pragma once

#include <stdexcept>
#include <string>

namespace cloneblame {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Environment problem that makes analysis impossible (git missing, not a repo).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Two data sources disagree about the same file (e.g. blame vs. token lines).
class IntegrityError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Malformed input text (porcelain output, history scripts, report JSON).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace cloneblame
