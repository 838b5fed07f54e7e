#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dnaadv {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class EmptySequence : public Error {
 public:
  EmptySequence() : Error("empty sequence") {}
};

class InvalidSymbol : public Error {
 public:
  InvalidSymbol(std::size_t position, char symbol)
      : Error("invalid symbol '" + std::string(1, symbol) + "' at position " +
              std::to_string(position)),
        position_(position),
        symbol_(symbol) {}

  std::size_t position() const noexcept { return position_; }
  char symbol() const noexcept { return symbol_; }

 private:
  std::size_t position_;
  char symbol_;
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t lhs, std::size_t rhs)
      : Error("length mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

/// Raised with the 1-based line number of the offending input line.
class LineError : public Error {
 public:
  LineError(const std::string& what, std::size_t line)
      : Error(what + " at line " + std::to_string(line)), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MalformedFasta : public LineError {
 public:
  explicit MalformedFasta(std::size_t line) : LineError("malformed FASTA", line) {}
};

class MalformedRow : public LineError {
 public:
  explicit MalformedRow(std::size_t line) : LineError("malformed label row", line) {}
};

class DuplicateId : public Error {
 public:
  explicit DuplicateId(std::string id) : Error("duplicate id '" + id + "'"), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class MissingLabel : public Error {
 public:
  explicit MissingLabel(const std::string& id) : Error("no label for id '" + id + "'") {}
};

class TooFewSamples : public Error {
 public:
  explicit TooFewSamples(std::string class_name)
      : Error("too few samples in class '" + class_name + "' to fill every split"),
        class_name_(std::move(class_name)) {}
  const std::string& class_name() const noexcept { return class_name_; }

 private:
  std::string class_name_;
};

class MotifTooLong : public Error {
 public:
  using Error::Error;
};

class SequenceTooShort : public Error {
 public:
  SequenceTooShort(std::size_t length, std::size_t required)
      : Error("sequence of length " + std::to_string(length) + " is shorter than " +
              std::to_string(required)) {}
};

class SequenceTooLong : public Error {
 public:
  SequenceTooLong(std::size_t length, std::size_t limit)
      : Error("sequence of length " + std::to_string(length) + " exceeds limit " +
              std::to_string(limit)) {}
};

class DegenerateDataset : public Error {
 public:
  using Error::Error;
};

class NoCodons : public Error {
 public:
  NoCodons() : Error("sequence holds no complete codon in the requested frame") {}
};

class OracleFailure : public Error {
 public:
  explicit OracleFailure(const std::string& detail) : Error("oracle failure: " + detail) {}
};

class SpawnFailure : public Error {
 public:
  explicit SpawnFailure(const std::string& detail) : Error("cannot spawn oracle: " + detail) {}
};

class HandshakeMismatch : public Error {
 public:
  using Error::Error;
};

class SerializationError : public Error {
 public:
  using Error::Error;
};

class VersionMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyResult : public Error {
 public:
  EmptyResult() : Error("corruption deleted every base") {}
};

class TooFewPoints : public Error {
 public:
  TooFewPoints() : Error("pearson correlation needs at least two points") {}
};

class NoCorrectBaseline : public Error {
 public:
  NoCorrectBaseline() : Error("no initially-correct sample; success rate undefined") {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dnaadv
