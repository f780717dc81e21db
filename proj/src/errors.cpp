#include "multiplet/errors.hpp"

namespace multiplet {

Error::Error(const std::string& message) : std::runtime_error(message), message_(message) {
    refresh();
}

void Error::set_layer(std::size_t l) {
    where_.layer = l;
    refresh();
}

void Error::set_multiplet(std::size_t m) {
    where_.multiplet = m;
    refresh();
}

void Error::set_neuron(std::size_t n) {
    where_.neuron = n;
    refresh();
}

void Error::refresh() {
    full_ = message_;
    std::string loc;
    auto add = [&](const char* name, const std::optional<std::size_t>& v) {
        if (!v) return;
        if (!loc.empty()) loc += ", ";
        loc += name;
        loc += '=';
        loc += std::to_string(*v);
    };
    add("layer", where_.layer);
    add("multiplet", where_.multiplet);
    add("neuron", where_.neuron);
    if (!loc.empty()) full_ += " [" + loc + "]";
}

LengthMismatch::LengthMismatch(std::size_t expected, std::size_t got)
    : Error("length mismatch: expected " + std::to_string(expected) + ", got " +
            std::to_string(got)) {}

DegenerateDenominator::DegenerateDenominator(double modulus, const std::string& detail)
    : Error("degenerate denominator (modulus " + std::to_string(modulus) + ")" +
            (detail.empty() ? std::string{} : ": " + detail)),
      modulus_(modulus) {}

AlreadyComplex::AlreadyComplex(std::size_t index)
    : Error("element " + std::to_string(index) + " already has an imaginary part") {}

NonPositiveElement::NonPositiveElement(std::size_t index)
    : Error("element " + std::to_string(index) + " is not a positive real") {}

IndexOutOfRange::IndexOutOfRange(std::size_t index, std::size_t size)
    : Error("index " + std::to_string(index) + " out of range for size " +
            std::to_string(size)) {}

DenominatorSignChange::DenominatorSignChange(double at)
    : Error("denominator changes sign or vanishes near x=" + std::to_string(at)), at_(at) {}

UnknownName::UnknownName(const std::string& name) : Error("unknown name: " + name) {}

}  // namespace multiplet
