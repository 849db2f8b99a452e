#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace superdiff {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
	using std::runtime_error::runtime_error;
};

/// Operands live in algebras of different (m|n) or external rank.
class DimensionError : public Error {
  public:
	using Error::Error;
};

/// A parity constraint was violated (odd image for an even generator, mixed
/// parity where a homogeneous element is required, ...).
class ParityError : public Error {
  public:
	using Error::Error;
};

/// An operation needed a certified inverse of the underlying morphism.
class InvertibilityError : public Error {
  public:
	using Error::Error;
};

/// Input outside the domain of a partial operation (exp on a non-nilpotent
/// field, log of a non-unipotent map, empty partition set, ...).
class DomainError : public Error {
  public:
	using Error::Error;
};

/// Generator images that do not define a consistent factored morphism.
class MalformedMorphismError : public Error {
  public:
	using Error::Error;
};

struct ParseDiagnostic
{
	std::size_t offset = 0;
	std::vector<std::string> expected;
	std::string message;

	std::string to_string() const;
};

class ParseError : public Error {
  public:
	explicit ParseError(ParseDiagnostic diag)
	    : Error(diag.to_string()), diag_(std::move(diag))
	{}

	ParseDiagnostic const &diagnostic() const { return diag_; }

  private:
	ParseDiagnostic diag_;
};

} // namespace superdiff
