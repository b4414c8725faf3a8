#pragma once

#include <stdexcept>
#include <string>

namespace disi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the formula it feeds.
class DomainError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// v_g requested at g <= 0, where cot/csc are undefined.
class SingularTime : public Error {
public:
    using Error::Error;
};

/// Hybrid step started from g1 = 0 (k = sin g2 / sin g1 undefined).
class SingularStart : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class EmptyDataset : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

/// Raised by the training loop when the loss becomes NaN or infinite.
class NonFiniteLoss : public Error {
public:
    NonFiniteLoss(long step, double r, double g, double loss);

    long step;
    double r;
    double g;
    double loss;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace disi
