#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hetgraph {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments or configuration supplied by the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Relation endpoint type does not match the node or metapath it is used with.
class TypeMismatch : public UsageError {
 public:
  using UsageError::UsageError;
};

/// A node type, relation, or metapath name that the schema does not define.
class UnknownName : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Ingest failure pinned to a file and (1-based) line; line 0 means the whole file.
class IngestError : public DataError {
 public:
  IngestError(std::string file, std::uint64_t line, const std::string& message)
      : DataError(format(file, line, message)), file_(std::move(file)), line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::uint64_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& file, std::uint64_t line, const std::string& message) {
    if (line == 0) return file + ": " + message;
    return file + ":" + std::to_string(line) + ": " + message;
  }

  std::string file_;
  std::uint64_t line_;
};

enum class CacheErrorKind { Io, BadMagic, UnsupportedVersion, Truncated, ChecksumMismatch, Corrupt };

class CacheError : public DataError {
 public:
  CacheError(CacheErrorKind kind, const std::string& message) : DataError(message), kind_(kind) {}
  CacheErrorKind kind() const noexcept { return kind_; }

 private:
  CacheErrorKind kind_;
};

/// Labeled target-type nodes without a timestamp while a temporal split was requested.
class MissingTimestamps : public DataError {
 public:
  MissingTimestamps(std::uint64_t count, const std::string& message) : DataError(message), count_(count) {}
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t count_;
};

/// A metric is undefined on the given input.
class ComputationError : public Error {
 public:
  using Error::Error;
};

class EmptyInducedGraph : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Every edge endpoint falls in one class, so 1 - sum_k D_k^2 / (2|E|)^2 is zero.
class DegenerateClassDistribution : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class AllMetapathsEmpty : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace hetgraph
