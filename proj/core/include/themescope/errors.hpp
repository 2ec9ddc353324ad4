#pragma once

#include <stdexcept>
#include <string>

namespace themescope {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Errors caused by user-supplied inputs (files, labels, flag values).
/// The CLI maps these to exit code 3; everything else is an internal error.
class InputError : public Error {
public:
    using Error::Error;
};

// embedding table ------------------------------------------------------------

class MalformedHeader : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class DuplicateWord : public InputError {
public:
    using InputError::InputError;
};

class ZeroVector : public InputError {
public:
    using InputError::InputError;
};

class WordNotFound : public Error {
public:
    explicit WordNotFound(const std::string& word)
        : Error("word not found in embedding table: \"" + word + "\""), word_(word) {}
    const std::string& word() const { return word_; }

private:
    std::string word_;
};

class ZeroNorm : public Error {
public:
    using Error::Error;
};

// collocation ----------------------------------------------------------------

class ZeroCount : public Error {
public:
    using Error::Error;
};

class SeedNotInCorpus : public InputError {
public:
    using InputError::InputError;
};

class EmptySelection : public InputError {
public:
    using InputError::InputError;
};

// fingerprinting -------------------------------------------------------------

class EmptyCorpus : public InputError {
public:
    using InputError::InputError;
};

// theme scoring --------------------------------------------------------------

class NoResolvablePairs : public InputError {
public:
    using InputError::InputError;
};

// learning -------------------------------------------------------------------

class TooFewSamples : public InputError {
public:
    using InputError::InputError;
};

class FeatureCountMismatch : public InputError {
public:
    using InputError::InputError;
};

class LengthMismatch : public InputError {
public:
    using InputError::InputError;
};

class SingleClass : public InputError {
public:
    using InputError::InputError;
};

// statistics -----------------------------------------------------------------

class InsufficientSample : public Error {
public:
    using Error::Error;
};

class ZeroVariance : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

} // namespace themescope
