#pragma once

#include <stdexcept>
#include <string>

namespace wallsun {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's domain (m = 1, p = 5 for
// the Legendre symbol, a malformed range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ConfigInvalid : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class RangeInvalid : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

// g^E != 1 for the exponent bound handed to multiplicative_order.
class OrderNotDividing : public Error {
 public:
  using Error::Error;
};

// Work limits: exact Fibonacci cap, factorization budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

class FactorizationBudgetExceeded : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

class IncompleteFactorization : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

// An arithmetic identity that must always hold did not. This is a bug
// signal (or a mathematical discovery) and is never swallowed.
class SanityViolation : public Error {
 public:
  using Error::Error;
};

class CheckpointCorrupt : public Error {
 public:
  using Error::Error;
};

}  // namespace wallsun
