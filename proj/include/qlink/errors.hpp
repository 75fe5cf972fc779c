#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qlink {

/// Base class for all qlink errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Arithmetic or conversion attempted across incompatible dimensions.
struct dimension_error : error {
    using error::error;
};

/// Malformed textual input (quantity strings, CSV rows, scenario files).
/// `offset` is a byte offset for single-line inputs, `line` a 1-based line
/// number for multi-line inputs; unused fields are 0.
struct parse_error : error {
    std::size_t offset = 0;
    std::size_t line = 0;

    parse_error(const std::string& what, std::size_t byte_offset, std::size_t line_no = 0)
        : error(what), offset(byte_offset), line(line_no) {}
};

/// Input outside a formula's validity domain (e.g. photon-photon scattering
/// above the electron mass, radius inside a horizon).
struct domain_error : error {
    using error::error;
};

/// A name was not found in the environment catalog.
struct not_found_error : error {
    using error::error;
};

/// Adaptive quadrature exhausted its evaluation budget before reaching the
/// requested tolerance. Carries the best error estimate achieved.
struct convergence_error : error {
    double achieved_relative_error = 0.0;
    long evaluations = 0;

    convergence_error(const std::string& what, double achieved, long evals)
        : error(what), achieved_relative_error(achieved), evaluations(evals) {}
};

}  // namespace qlink
