#pragma once

#include "superprolong/driver.hpp"

#include <string>

namespace superprolong::testing {

inline AlgebraSpec inline_spec(const std::string& body) {
    return parse_spec("{\"schema\": 1, " + body + "}", "<inline>");
}

// Cartan prolong of a matrix algebra acting on its defining superspace.
template <class S>
GradedSubspace<S> matrix_prolong(const std::string& g0, int N, const std::string& realization = "row") {
    auto sp = inline_spec("\"kind\": \"prolong\", \"g0\": \"" + g0 + "\", \"realization\": \"" + realization + "\"");
    return Driver<S>(sp).graded(N);
}

template <class S>
GradedSubspace<S> series_components(const std::string& series, int n, int m, int hi, const std::string& grading = "standard") {
    auto sp = inline_spec("\"kind\": \"series\", \"series\": \"" + series + "\", \"n\": " + std::to_string(n) +
                          ", \"m\": " + std::to_string(m) + ", \"grading\": \"" + grading + "\"");
    return Driver<S>(sp).graded(hi);
}

}  // namespace superprolong::testing
