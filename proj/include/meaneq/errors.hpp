#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace meaneq {

// Base class for all library errors. Carries an error kind string that the
// CLI maps into machine-readable JSON error objects.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// A precondition stated by an operation contract was violated.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error("PreconditionError", msg) {}
};

struct DegenerateParams : Error {
    explicit DegenerateParams(const std::string& msg) : Error("DegenerateParams", msg) {}
};

// f vanishes inside the requested domain; `witness` is a root location.
struct ZeroInDomain : Error {
    ZeroInDomain(const std::string& msg, double witness)
        : Error("ZeroInDomain", msg), witness(witness) {}
    double witness;
};

struct SupportNotContained : Error {
    explicit SupportNotContained(const std::string& msg) : Error("SupportNotContained", msg) {}
};

struct DiscontinuousPhi : Error {
    DiscontinuousPhi(const std::string& msg, double witness)
        : Error("DiscontinuousPhi", msg), witness(witness) {}
    double witness;
};

// One of the per-case domain conditions of the triple family failed.
// `condition` names the failed restriction, `witness` a point violating it.
struct DomainViolation : Error {
    DomainViolation(const std::string& msg, std::string condition, double witness)
        : Error("DomainViolation", msg), condition(std::move(condition)), witness(witness) {}
    std::string condition;
    double witness;
};

struct OutOfDomain : Error {
    OutOfDomain(const std::string& msg, double where)
        : Error("OutOfDomain", msg), where(where) {}
    double where;
};

// Evaluation requested within 1e-12 of a pole of tan/ln|.|.
struct NearSingularPoint : Error {
    NearSingularPoint(const std::string& msg, double where)
        : Error("NearSingularPoint", msg), where(where) {}
    double where;
};

struct TooFewPoints : Error {
    explicit TooFewPoints(const std::string& msg) : Error("TooFewPoints", msg) {}
};

struct FNearZero : Error {
    FNearZero(const std::string& msg, double witness)
        : Error("FNearZero", msg), witness(witness) {}
    double witness;
};

struct DegenerateData : Error {
    explicit DegenerateData(const std::string& msg) : Error("DegenerateData", msg) {}
};

struct IllConditioned : Error {
    explicit IllConditioned(const std::string& msg) : Error("IllConditioned", msg) {}
};

struct NotMonotone : Error {
    NotMonotone(const std::string& msg, long index)
        : Error("NotMonotone", msg), index(index) {}
    long index;
};

struct NonMonotoneEll : Error {
    NonMonotoneEll(const std::string& msg, long index)
        : Error("NonMonotoneEll", msg), index(index) {}
    long index;
};

// Data fits neither solution alternative; carries the best misfit seen.
struct Unclassifiable : Error {
    Unclassifiable(const std::string& msg, double best_misfit)
        : Error("Unclassifiable", msg), best_misfit(best_misfit) {}
    double best_misfit;
};

struct EmptyJ : Error {
    explicit EmptyJ(const std::string& msg) : Error("EmptyJ", msg) {}
};

struct DomainMismatch : Error {
    explicit DomainMismatch(const std::string& msg) : Error("DomainMismatch", msg) {}
};

struct IOError : Error {
    explicit IOError(const std::string& msg) : Error("IOError", msg) {}
};

}  // namespace meaneq
