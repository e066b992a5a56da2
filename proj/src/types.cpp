#include "ghznl/types.hpp"

#include <cmath>
#include <stdexcept>

namespace ghznl {

int local_dim(Encoding enc) {
    switch (enc) {
        case Encoding::CvFock: return 2;
        case Encoding::DualRail: return 3;
        case Encoding::IdealQubit: return 2;
    }
    throw std::logic_error("local_dim: unknown encoding");
}

std::string to_string(Encoding enc) {
    switch (enc) {
        case Encoding::CvFock: return "cv-fock";
        case Encoding::DualRail: return "dual-rail";
        case Encoding::IdealQubit: return "ideal-qubit";
    }
    throw std::logic_error("to_string: unknown encoding");
}

Encoding parse_encoding(const std::string& name) {
    if (name == "cv-fock") return Encoding::CvFock;
    if (name == "dual-rail") return Encoding::DualRail;
    if (name == "ideal-qubit") return Encoding::IdealQubit;
    throw std::invalid_argument("unknown encoding '" + name +
                                "' (expected cv-fock, dual-rail or ideal-qubit)");
}

double apply_selector(Selector sel, Complex z) {
    switch (sel) {
        case Selector::Re: return z.real();
        case Selector::Im: return z.imag();
        case Selector::RePlusIm: return z.real() + z.imag();
        case Selector::Modulus: return std::abs(z);
    }
    throw std::logic_error("apply_selector: unknown selector");
}

std::string to_string(Selector sel) {
    switch (sel) {
        case Selector::Re: return "re";
        case Selector::Im: return "im";
        case Selector::RePlusIm: return "re+im";
        case Selector::Modulus: return "modulus";
    }
    throw std::logic_error("to_string: unknown selector");
}

Selector parse_selector(const std::string& name) {
    if (name == "re") return Selector::Re;
    if (name == "im") return Selector::Im;
    if (name == "re+im") return Selector::RePlusIm;
    if (name == "modulus") return Selector::Modulus;
    throw std::invalid_argument("unknown selector '" + name +
                                "' (expected re, im, re+im or modulus)");
}

}  // namespace ghznl
