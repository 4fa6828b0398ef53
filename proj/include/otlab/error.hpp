#pragma once

#include <stdexcept>
#include <string>

namespace otlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Three points of the input are collinear (or coincide).
class NonGeneric : public Error {
 public:
  NonGeneric(int a, int b, int c);
  explicit NonGeneric(const std::string& what) : Error(what) {}

  int a = -1, b = -1, c = -1;
};

class OriginOnLine : public Error {
 public:
  OriginOnLine() : Error("ray origin lies on the line") {}
};

class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted() : Error("all coordinate bits already revealed") {}
};

class MalformedSignature : public Error {
 public:
  using Error::Error;
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

/// The census map grew past its configured number of types.
class MemoryBudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace otlab
