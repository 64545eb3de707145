#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wks {

/// Base of every error raised by the library. The CLI maps these to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DuplicateGene : public Error {
public:
    explicit DuplicateGene(const std::string& gene)
        : Error("duplicate gene id: " + gene), gene_(gene) {}
    const std::string& gene() const { return gene_; }

private:
    std::string gene_;
};

class MalformedLine : public Error {
public:
    MalformedLine(std::size_t line, const std::string& reason, const std::string& file = {})
        : Error((file.empty() ? "line " : file + ":") + std::to_string(line) + ": " + reason),
          line_(line), reason_(reason) {}
    std::size_t line() const { return line_; }
    const std::string& reason() const { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

class EmptyVector : public Error {
public:
    EmptyVector() : Error("weight vector is empty") {}
};

class NonPositiveWeight : public Error {
public:
    explicit NonPositiveWeight(const std::string& gene)
        : Error("non-positive weight for gene " + gene +
                " (use rank transform for signed data)"),
          gene_(gene) {}
    const std::string& gene() const { return gene_; }

private:
    std::string gene_;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class EmptyIntersection : public Error {
public:
    explicit EmptyIntersection(const std::string& set_name)
        : Error("gene set " + set_name + " shares no gene with the profile") {}
};

class InvalidSetSize : public Error {
public:
    InvalidSetSize(std::size_t n, std::size_t genes)
        : Error("gene set size " + std::to_string(n) +
                " is invalid for a profile of " + std::to_string(genes) +
                " genes") {}
};

class CdfProfileMismatch : public Error {
public:
    CdfProfileMismatch()
        : Error("null CDF was estimated from a different weight profile") {}
};

class InvalidPValue : public Error {
public:
    explicit InvalidPValue(double p)
        : Error("p-value outside [0,1]: " + std::to_string(p)) {}
};

class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace wks
