#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace survkit {

/// Base class for all survkit errors. Catching this catches everything the
/// library throws deliberately.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ---- data ------------------------------------------------------------

class MissingColumnError : public Error {
public:
  explicit MissingColumnError(const std::string& col)
      : Error("missing or misplaced column: " + col), column(col) {}
  std::string column;
};

class BadValueError : public Error {
public:
  BadValueError(std::size_t row, const std::string& col, const std::string& what)
      : Error("bad value at row " + std::to_string(row) + ", column '" + col +
              "': " + what),
        row(row), column(col) {}
  std::size_t row; // 1-based data row (header not counted)
  std::string column;
};

class EmptyDatasetError : public Error {
public:
  EmptyDatasetError() : Error("dataset contains no records") {}
};

class ZeroVarianceError : public Error {
public:
  explicit ZeroVarianceError(const std::string& col)
      : Error("training column has zero variance: " + col), column(col) {}
  std::string column;
};

class InvalidConfigError : public Error {
public:
  using Error::Error;
};

class DegenerateSplitError : public Error {
public:
  using Error::Error;
};

// ---- metrics ---------------------------------------------------------

class OneClassOnlyError : public Error {
public:
  OneClassOnlyError() : Error("labels contain a single class") {}
};

class NoPositivesError : public Error {
public:
  NoPositivesError() : Error("no positive labels") {}
};

class NoComparablePairsError : public Error {
public:
  NoComparablePairsError() : Error("no comparable pairs for concordance") {}
};

class ConstantInputError : public Error {
public:
  ConstantInputError() : Error("input vector is constant") {}
};

// ---- survival_np / model fitting --------------------------------------

class EmptyInputError : public Error {
public:
  EmptyInputError() : Error("empty input") {}
};

class SingularError : public Error {
public:
  using Error::Error;
};

class NoEventsError : public Error {
public:
  NoEventsError() : Error("no events in data") {}
};

class DivergedError : public Error {
public:
  using Error::Error;
};

// ---- mtlr --------------------------------------------------------------

class TooFewEventsError : public Error {
public:
  using Error::Error;
};

class ShapeMismatchError : public Error {
public:
  using Error::Error;
};

class NonFiniteLossError : public Error {
public:
  using Error::Error;
};

// ---- classic models ----------------------------------------------------

class BadKError : public Error {
public:
  using Error::Error;
};

class DegenerateGroupError : public Error {
public:
  using Error::Error;
};

// ---- ensemble / prediction files ----------------------------------------

class IdMismatchError : public Error {
public:
  using Error::Error;
};

class EmptyListError : public Error {
public:
  EmptyListError() : Error("empty prediction list") {}
};

/// File parse / format violations (datasets, predictions, model files).
class FormatError : public Error {
public:
  using Error::Error;
};

} // namespace survkit
