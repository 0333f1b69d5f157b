#pragma once

#include <stdexcept>
#include <string>

namespace lyutab {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input could not be parsed (CLI maps this to exit code 2).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

// A cohomological operation was asked of a non-square-free ideal.
struct NotSquareFreeError : Error {
    explicit NotSquareFreeError(const std::string& what) : Error("not square-free: " + what) {}
};

// d_out * d_in != 0 over the requested coefficient ring.
struct ComplexNotComposableError : Error {
    explicit ComplexNotComposableError(const std::string& what)
        : Error("complex not composable: " + what) {}
};

// A map handed to induced_map_on_cohomology does not commute with the
// differentials (equivalently: does not preserve kernels/images).
struct NotAChainMapError : Error {
    explicit NotAChainMapError(const std::string& what) : Error("not a chain map: " + what) {}
};

struct FaceNotInComplexError : Error {
    explicit FaceNotInComplexError(const std::string& what)
        : Error("face not in complex: " + what) {}
};

// Tower/colimit data was requested from an object that was built without it.
struct MissingStructureMapsError : Error {
    explicit MissingStructureMapsError(const std::string& what)
        : Error("missing structure maps: " + what) {}
};

// A mixed-characteristic tower was requested for an ideal without p.
struct PNotInIdealError : Error {
    explicit PNotInIdealError(const std::string& what) : Error("p not in ideal: " + what) {}
};

// A configured resource cap was exceeded (CLI maps this to exit code 4).
struct ResourceLimitError : Error {
    explicit ResourceLimitError(const std::string& what) : Error("resource limit: " + what) {}
};

// Anything else that indicates a bug in the pipeline rather than bad input
// (CLI maps this to exit code 3).
struct PipelineError : Error {
    explicit PipelineError(const std::string& what) : Error("pipeline error: " + what) {}
};

// Internal: the int64 elimination path overflowed; callers retry with bignums.
struct OverflowEscape : Error {
    OverflowEscape() : Error("int64 overflow") {}
};

} // namespace lyutab
