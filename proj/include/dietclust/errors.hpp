#pragma once

#include <stdexcept>
#include <string>

namespace dietclust {

/// Base class for everything thrown by this library. The three direct
/// subclasses partition failures into the classes the CLI maps to exit codes:
/// ConfigError (2), DataError (3), NumericError (4).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

// --- numerics ---

class EmptyInput : public DataError {
public:
    explicit EmptyInput(const std::string& what) : DataError("empty input: " + what) {}
};

class ConstantColumn : public DataError {
public:
    explicit ConstantColumn(long col)
        : DataError("column " + std::to_string(col) + " is constant (zero standard deviation)"),
          column(col) {}
    long column;
};

class NotSymmetric : public NumericError {
public:
    explicit NotSymmetric(const std::string& what) : NumericError("matrix is not symmetric: " + what) {}
};

class NoConvergence : public NumericError {
public:
    NoConvergence(int sweeps, double off_norm)
        : NumericError("eigensolver did not converge within " + std::to_string(sweeps)
                       + " sweeps (off-diagonal norm " + std::to_string(off_norm) + ")"),
          max_sweeps(sweeps) {}
    int max_sweeps;
};

class DimensionMismatch : public NumericError {
public:
    explicit DimensionMismatch(const std::string& what) : NumericError("dimension mismatch: " + what) {}
};

// --- pca / kmeans / validity ---

class InvalidTarget : public ConfigError {
public:
    explicit InvalidTarget(double target)
        : ConfigError("variance target must lie in (0, 1], got " + std::to_string(target)) {}
};

class InvalidConfig : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class TooFewPoints : public ConfigError {
public:
    TooFewPoints(long rows, int k)
        : ConfigError("need at least k=" + std::to_string(k) + " points, got " + std::to_string(rows)) {}
};

class TooFewClusters : public ConfigError {
public:
    explicit TooFewClusters(const std::string& what) : ConfigError("too few clusters: " + what) {}
};

class InvalidKRange : public ConfigError {
public:
    InvalidKRange(int k_min, int k_max, long rows)
        : ConfigError("invalid k range [" + std::to_string(k_min) + ", " + std::to_string(k_max)
                      + "] for " + std::to_string(rows) + " points") {}
};

class CoincidentBarycenters : public NumericError {
public:
    CoincidentBarycenters(int a, int b)
        : NumericError("clusters " + std::to_string(a) + " and " + std::to_string(b)
                       + " have coincident barycenters; index is undefined") {}
};

// --- pipeline ---

class ParseError : public DataError {
public:
    ParseError(const std::string& file, long line, const std::string& what)
        : DataError(file + ":" + std::to_string(line) + ": " + what), line(line) {}
    long line;
};

class SchemaError : public DataError {
public:
    using DataError::DataError;
    SchemaError(const std::string& file, const std::string& what) : DataError(file + ": " + what) {}
};

class JoinError : public DataError {
public:
    using DataError::DataError;
};

class AllRowsDropped : public DataError {
public:
    explicit AllRowsDropped(const std::string& what) : DataError("all rows dropped: " + what) {}
};

class MissingOutcome : public DataError {
public:
    explicit MissingOutcome(const std::string& country)
        : DataError("country '" + country + "' has no usable outcome value") {}
};

class EmptyGroup : public DataError {
public:
    explicit EmptyGroup(const std::string& which) : DataError("empty group: " + which) {}
};

} // namespace dietclust
