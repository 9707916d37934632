#pragma once

#include <stdexcept>
#include <string>

namespace msfuzzy {

// Base class for all library errors. Exit-code mapping in the CLI keys off
// the two branches below: DataError -> 2, NumericalError -> 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DataError : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

// -- chain / simulation --------------------------------------------------

class NonErgodicChain : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class AbsorbingState : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class UnsupportedOrder : public Error {
public:
  using Error::Error;
};

// -- filtering / estimation -----------------------------------------------

class DegenerateLikelihood : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DivisionByZeroProbability : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class InsufficientData : public DataError {
public:
  using DataError::DataError;
};

class SingularHessian : public NumericalError {
public:
  using NumericalError::NumericalError;
};

// -- clustering / indices ---------------------------------------------------

class UndefinedForSingleCluster : public Error {
public:
  using Error::Error;
};

class SingleClusterPartition : public Error {
public:
  using Error::Error;
};

class AllWeightsZero : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class CoincidentCentroids : public NumericalError {
public:
  using NumericalError::NumericalError;
};

// -- partitions -----------------------------------------------------------

class LengthMismatch : public DataError {
public:
  using DataError::DataError;
};

class WindowTooLarge : public DataError {
public:
  using DataError::DataError;
};

// -- ingestion / catalog ----------------------------------------------------

class ParseError : public DataError {
public:
  using DataError::DataError;
};

class EmptySeries : public DataError {
public:
  using DataError::DataError;
};

class UnknownLabel : public DataError {
public:
  using DataError::DataError;
};

} // namespace msfuzzy
