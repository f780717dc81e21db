#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace multiplet {

/// Position of a failing evaluation inside a network or multiplet.
struct Coordinates {
    std::optional<std::size_t> layer;
    std::optional<std::size_t> multiplet;
    std::optional<std::size_t> neuron;
};

/// Base for every error raised by the library.  Location information can be
/// attached while the exception unwinds; `what()` always reflects it.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message);

    const char* what() const noexcept override { return full_.c_str(); }
    const std::string& message() const noexcept { return message_; }
    const Coordinates& where() const noexcept { return where_; }

    void set_layer(std::size_t l);
    void set_multiplet(std::size_t m);
    void set_neuron(std::size_t n);

private:
    void refresh();
    std::string message_;
    std::string full_;
    Coordinates where_;
};

class LengthMismatch : public Error {
public:
    LengthMismatch(std::size_t expected, std::size_t got);
};

/// Denominator modulus fell below the zero tolerance.
class DegenerateDenominator : public Error {
public:
    explicit DegenerateDenominator(double modulus, const std::string& detail = {});
    double modulus() const noexcept { return modulus_; }

private:
    double modulus_;
};

class NonFiniteValue : public Error {
public:
    using Error::Error;
};

class RootDomain : public Error {
public:
    using Error::Error;
};

class AlreadyComplex : public Error {
public:
    explicit AlreadyComplex(std::size_t index);
};

class NonPositiveElement : public Error {
public:
    explicit NonPositiveElement(std::size_t index);
};

class IndexOutOfRange : public Error {
public:
    IndexOutOfRange(std::size_t index, std::size_t size);
};

class DenominatorSignChange : public Error {
public:
    explicit DenominatorSignChange(double at);
    double at() const noexcept { return at_; }

private:
    double at_;
};

class UnknownName : public Error {
public:
    explicit UnknownName(const std::string& name);
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace multiplet
