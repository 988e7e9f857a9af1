#ifndef SHASIM_ERRORS_HPP_
#define SHASIM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace shasim {

// Continuous semantics errors.
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};
struct JumpDisabled : std::runtime_error {
    explicit JumpDisabled(const std::string& what) : std::runtime_error(what) {}
};

// Scheduling errors.
struct KernelError : std::runtime_error {
    explicit KernelError(const std::string& what) : std::runtime_error(what) {}
};
struct TimelockError : std::runtime_error {
    explicit TimelockError(const std::string& what) : std::runtime_error(what) {}
};
struct RaceViolation : std::runtime_error {
    explicit RaceViolation(const std::string& what) : std::runtime_error(what) {}
};
struct LabelRangeError : std::runtime_error {
    explicit LabelRangeError(const std::string& what) : std::runtime_error(what) {}
};

// Distribution / numerics errors.
struct InvalidParameter : std::runtime_error {
    explicit InvalidParameter(const std::string& what) : std::runtime_error(what) {}
};
struct ExhaustedSupport : std::runtime_error {
    explicit ExhaustedSupport(const std::string& what) : std::runtime_error(what) {}
};
struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};
struct DepthLimit : std::runtime_error {
    explicit DepthLimit(const std::string& what) : std::runtime_error(what) {}
};

// Model-level errors.
struct UnsupportedModel : std::runtime_error {
    explicit UnsupportedModel(const std::string& what) : std::runtime_error(what) {}
};
struct UnsupportedSize : std::runtime_error {
    explicit UnsupportedSize(const std::string& what) : std::runtime_error(what) {}
};
struct MappingError : std::runtime_error {
    explicit MappingError(const std::string& what) : std::runtime_error(what) {}
};

// DSL errors carry a source position (1-based line/column; 0 = unknown).
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line, int col)
        : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(col) +
                             ": " + what),
          line(line), col(col) {}
    int line;
    int col;
};
struct ResolutionError : std::runtime_error {
    ResolutionError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

}  // namespace shasim

#endif  // SHASIM_ERRORS_HPP_
