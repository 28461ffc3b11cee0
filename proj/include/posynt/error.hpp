#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posynt {

/// Malformed formula text. `offset` is the byte position where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Formula mentions an atom that no block of the partition declares.
class UndeclaredAtomError : public std::runtime_error {
 public:
  explicit UndeclaredAtomError(const std::string& atom)
      : std::runtime_error("undeclared atom '" + atom + "'"), atom_(atom) {}

  const std::string& atom() const noexcept { return atom_; }

 private:
  std::string atom_;
};

/// Inconsistent variable partition (overlap, duplicate, unknown name).
class PartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// State budget, node budget or deadline exhausted.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Oracle enumeration exceeded its budget; never a wrong answer.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition of an operation (ordering, position, usage).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace posynt
