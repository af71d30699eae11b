#pragma once

#include <stdexcept>
#include <string>

namespace cdpsim {

// Base class for all simulator errors.
class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

class PastTimeError : public SimError {
 public:
  explicit PastTimeError(const std::string& what) : SimError(what) {}
};

class NotNeighborsError : public SimError {
 public:
  explicit NotNeighborsError(const std::string& what) : SimError(what) {}
};

class InsufficientSamplesError : public SimError {
 public:
  explicit InsufficientSamplesError(const std::string& what) : SimError(what) {}
};

class BadSampleOrderError : public SimError {
 public:
  explicit BadSampleOrderError(const std::string& what) : SimError(what) {}
};

class EmptyVectorError : public SimError {
 public:
  explicit EmptyVectorError(const std::string& what) : SimError(what) {}
};

class BadUtilizationError : public SimError {
 public:
  explicit BadUtilizationError(const std::string& what) : SimError(what) {}
};

class BadConfigError : public SimError {
 public:
  explicit BadConfigError(const std::string& what) : SimError(what) {}
};

class NoResolvedQueriesError : public SimError {
 public:
  explicit NoResolvedQueriesError(const std::string& what) : SimError(what) {}
};

}  // namespace cdpsim
