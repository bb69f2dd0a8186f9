#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tracecone {

enum class Errc {
    malformed_element,
    not_hermitian,
    not_positive,
    ill_conditioned,
    not_invertible,
    invalid_algebra,
    invalid_argument,
    budget_exceeded,
    empty_set,
    order_exceeded,
    non_convergence,
    parse_error,
};

constexpr std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::malformed_element: return "MalformedElement";
        case Errc::not_hermitian: return "NotHermitian";
        case Errc::not_positive: return "NotPositive";
        case Errc::ill_conditioned: return "IllConditioned";
        case Errc::not_invertible: return "NotInvertible";
        case Errc::invalid_algebra: return "InvalidAlgebra";
        case Errc::invalid_argument: return "InvalidArgument";
        case Errc::budget_exceeded: return "BudgetExceeded";
        case Errc::empty_set: return "EmptySet";
        case Errc::order_exceeded: return "OrderExceeded";
        case Errc::non_convergence: return "NonConvergence";
        case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace tracecone
