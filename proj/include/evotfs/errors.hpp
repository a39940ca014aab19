#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace evotfs {

// All module errors carry a stable name so callers (and the CLI) can report
// "<Name>: <context>" without string-matching what() text.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define EVOTFS_DEFINE_ERROR(NAME)                                        \
    class NAME : public Error {                                          \
    public:                                                              \
        explicit NAME(const std::string& what) : Error(#NAME, what) {}   \
    };

// data
EVOTFS_DEFINE_ERROR(FormatError)
EVOTFS_DEFINE_ERROR(ParseError)
EVOTFS_DEFINE_ERROR(EmptyDataset)
EVOTFS_DEFINE_ERROR(DegenerateScale)
EVOTFS_DEFINE_ERROR(NotImbalanceable)
EVOTFS_DEFINE_ERROR(UnknownClass)
// terminals
EVOTFS_DEFINE_ERROR(WindowTooLong)
EVOTFS_DEFINE_ERROR(InvalidWindow)
EVOTFS_DEFINE_ERROR(SeriesTooShort)
// gp
EVOTFS_DEFINE_ERROR(EmptyPopulation)
EVOTFS_DEFINE_ERROR(InvalidTree)
// fitness
EVOTFS_DEFINE_ERROR(EmptySeries)
EVOTFS_DEFINE_ERROR(LengthMismatch)
EVOTFS_DEFINE_ERROR(InvalidSigma)
// scheduler
EVOTFS_DEFINE_ERROR(EmptyPlan)
// eval
EVOTFS_DEFINE_ERROR(KTooLarge)
// cli
EVOTFS_DEFINE_ERROR(ConfigError)

#undef EVOTFS_DEFINE_ERROR

}  // namespace evotfs
