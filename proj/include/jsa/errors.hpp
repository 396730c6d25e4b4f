#pragma once

#include <stdexcept>
#include <string>

namespace jsa {

/// Caller violated a precondition (bad argument, inverted range, too few
/// observations). The CLI maps this to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The data cannot support the requested computation. The CLI maps this to
/// exit code 1.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Header or mapping problem that makes a whole input unusable.
class SchemaError : public DataError {
public:
    using DataError::DataError;
};

class NoArticlesInWindow : public DataError {
public:
    using DataError::DataError;
};

class UndefinedCorrelation : public DataError {
public:
    using DataError::DataError;
};

class NotPositiveDefinite : public DataError {
public:
    using DataError::DataError;
};

class RankDeficient : public DataError {
public:
    RankDeficient(std::string column, const std::string& what)
        : DataError(what), column_(std::move(column)) {}

    /// Name of a design column that is (numerically) a combination of others.
    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

}  // namespace jsa
