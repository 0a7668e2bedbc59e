#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mge {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A violated precondition: bad part sizes, even n where odd is required,
// negative factorial argument, disconnected graph, and so on.
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// Text-format parse failure; carries the 1-based line of the offending input.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// An enumeration or materialization was refused because it would exceed the
// configured budget. The message names the exact required count.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what_for, const std::string& required,
                   const std::string& budget)
        : Error("refusing " + what_for + ": requires " + required +
                ", budget is " + budget),
          required_(required),
          budget_(budget) {}

    const std::string& required() const { return required_; }
    const std::string& budget() const { return budget_; }

private:
    std::string required_;
    std::string budget_;
};

// A corner position that does not exist in the current rotation, or an
// insertion description inconsistent with the embedding it is applied to.
class InsertionError : public Error {
public:
    explicit InsertionError(const std::string& msg) : Error(msg) {}
};

// A construction stage produced fewer one-face completions than its floor.
// Carries the stage label, the floor, the observed count and the serialized
// input embedding so the failure is reproducible.
class ClaimViolation : public Error {
public:
    ClaimViolation(const std::string& stage, std::uint64_t floor,
                   std::uint64_t observed, const std::string& provenance)
        : Error("stage " + stage + ": observed " + std::to_string(observed) +
                " one-face completions, expected at least " +
                std::to_string(floor) + "\ninput embedding:\n" + provenance),
          stage_(stage),
          floor_(floor),
          observed_(observed),
          provenance_(provenance) {}

    const std::string& stage() const { return stage_; }
    std::uint64_t floor() const { return floor_; }
    std::uint64_t observed() const { return observed_; }
    const std::string& provenance() const { return provenance_; }

private:
    std::string stage_;
    std::uint64_t floor_ = 0;
    std::uint64_t observed_ = 0;
    std::string provenance_;
};

}  // namespace mge
